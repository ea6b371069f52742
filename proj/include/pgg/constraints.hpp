#ifndef PGG_CONSTRAINTS_HPP
#define PGG_CONSTRAINTS_HPP

// Arithmetic pruning tests applied to candidate quotients Q of G_S, each Q
// given with a surjection onto a fixed base quotient P.

#include "pgg/pcover.hpp"
#include "pgg/pcgroup.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace pgg {

// The inertia element at an odd prime q satisfies x ~ x^q; complex
// conjugation (the infinite place) has order exactly 2. Both are confined to
// the listed classes of P.
struct PlaceConstraint {
  std::optional<unsigned> prime;  // empty for the infinite place
  std::vector<PcElement> allowed;

  bool infinite() const { return !prime; }
  std::string name() const { return prime ? std::to_string(*prime) : "infinity"; }
};

// Abelianizations of the low-index subgroups of G_S.
struct TargetData {
  AbelianType index1;
  // Keyed by normalized character on P/Phi(P) (first nonzero entry 1).
  std::map<FpVector, AbelianType> index_p;
  // Used instead of index_p when the labels are not known.
  std::vector<AbelianType> index_p_unlabeled;
  std::vector<AbelianType> index_p2;
  // Largest compared index: 1, p or p^2.
  unsigned long long comparison_depth = 1;
  std::optional<unsigned> strict_from_class;

  bool labeled() const { return index_p_unlabeled.empty(); }
};

struct PlaceWitnesses {
  std::string place;
  std::vector<PcElement> classes;
};
using WitnessSet = std::vector<PlaceWitnesses>;

struct ConstraintOptions {
  bool infinite_place = true;      // false drops the infinite-place constraint
  bool require_generation = false;  // one witness per place must generate Q
  bool lift_witnesses = true;       // search only above the parent's witnesses
};

struct TestIResult {
  bool pass = true;
  std::string failed_place;
  WitnessSet witnesses;
};

// pi maps Q onto P. With parent witnesses (Q an immediate descendant of the
// parent), only classes above them are searched.
TestIResult test_i(std::shared_ptr<const PcPresentation> q, const Homomorphism& pi,
                   std::shared_ptr<const PcPresentation> base,
                   const std::vector<PlaceConstraint>& places,
                   const WitnessSet* parent_witnesses = nullptr,
                   const ConstraintOptions& options = {});

// A is a quotient of B.
bool dominated(const AbelianType& a, const AbelianType& b);

// Whether every left item can be matched to a distinct right item with
// related(left, right); with perfect, the sides must also have equal size.
bool has_matching(const std::vector<AbelianType>& left, const std::vector<AbelianType>& right,
                  bool perfect, bool equality);

struct SubgroupComparison {
  unsigned long long index = 1;
  std::string label;  // character for labeled index-p subgroups
  AbelianType actual;
  std::optional<AbelianType> target;
  bool dominated = false;
  bool equal = false;
};

struct TestIIResult {
  bool pass = true;
  bool exact = true;  // every compared abelianization equals its target
  std::string reason;
  std::vector<SubgroupComparison> detail;
};

// Compares low-index abelianizations with the targets; with strict set
// (or current_class at least strict_from_class) dominance becomes equality.
TestIIResult test_ii(std::shared_ptr<const PcPresentation> q, const Homomorphism& pi,
                     const TargetData& targets, unsigned current_class, bool strict = false);

// Normalized character of P/Phi(P) matching the given character of Q/Phi(Q).
FpVector transport_character(const Homomorphism& pi, const FpVector& q_character);

bool test_iii(const PCoverData& cover, std::size_t bound);
bool test_iii(std::shared_ptr<const PcPresentation> q, std::size_t bound);

bool is_candidate(const PCoverData& cover, const Homomorphism& pi, const TargetData& targets,
                  std::size_t d);
bool is_candidate(std::shared_ptr<const PcPresentation> q, const Homomorphism& pi,
                  const TargetData& targets, std::size_t d);

struct TestReport {
  TestIResult i;
  TestIIResult ii;
  bool iii = true;
  bool candidate = false;
  bool pass() const { return i.pass && ii.pass && iii; }
  std::string reason() const;
};

struct TestParameters {
  const std::vector<PlaceConstraint>* places = nullptr;
  const TargetData* targets = nullptr;
  std::size_t rank_gap_bound = 0;
  std::size_t d = 0;
  ConstraintOptions options;
};

// Runs tests i, ii, iii in order, stopping at the first failure, then the
// candidate test.
TestReport evaluate(std::shared_ptr<const PcPresentation> q, const PCoverData& cover,
                    const Homomorphism& pi, std::shared_ptr<const PcPresentation> base,
                    const TestParameters& params, const WitnessSet* parent_witnesses);

}  // namespace pgg

#endif  // PGG_CONSTRAINTS_HPP
