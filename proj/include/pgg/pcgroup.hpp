#ifndef PGG_PCGROUP_HPP
#define PGG_PCGROUP_HPP

// Finite p-groups given by power-commutator presentations.
//
// Generators g_0 .. g_{n-1} each have relative order p. A presentation fixes
// g_i^p and, for j > i, the conjugate g_j^{g_i}; conjugation is x^y = y^-1 x y
// and commutators are [x, y] = x^-1 y^-1 x y. Elements are exponent vectors of
// the normal form g_0^e_0 ... g_{n-1}^e_{n-1}. Words are collected from the left.
//
// A presentation is weighted when every generator carries a weight (the term of
// the lower exponent-p central series it first appears in) and every generator
// of weight >= 2 is defined by exactly one power or conjugate relation. All
// presentations built by this library are weighted; the layered algorithms
// (centralizers, conjugacy, class lists, covers) require it.

#include "pgg/linalg.hpp"

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pgg {

class PcElement {
 public:
  PcElement() = default;
  explicit PcElement(std::size_t n) : e_(n, 0) {}
  explicit PcElement(FpVector e) : e_(std::move(e)) {}

  std::size_t size() const { return e_.size(); }
  std::uint8_t operator[](std::size_t i) const { return e_[i]; }
  std::uint8_t& operator[](std::size_t i) { return e_[i]; }
  const FpVector& exponents() const { return e_; }
  FpVector& exponents() { return e_; }

  bool is_identity() const;
  // Index of the first nonzero exponent, or size() for the identity.
  std::size_t depth() const;
  // Copy restricted to the first k coordinates (image in a quotient by a tail).
  PcElement truncated(std::size_t k) const;
  PcElement padded(std::size_t n) const;

  bool operator==(const PcElement& o) const = default;
  bool operator<(const PcElement& o) const { return e_ < o.e_; }

 private:
  FpVector e_;
};

struct Letter {
  std::size_t gen;
  long long power;
};
using Word = std::vector<Letter>;

struct Definition {
  enum class Kind : std::uint8_t { none, power, conjugate };
  Kind kind = Kind::none;
  std::size_t a = 0;  // power: g_a^p;  conjugate: g_a^{g_b}
  std::size_t b = 0;
  bool operator==(const Definition& o) const = default;
};

class PcPresentation {
 public:
  PcPresentation() = default;
  PcPresentation(unsigned p, std::size_t n);

  unsigned prime() const { return p_; }
  std::size_t size() const { return n_; }
  unsigned order_exponent() const { return static_cast<unsigned>(n_); }

  // Right-hand sides as normal forms; trivial entries are the identity for
  // powers and g_j itself for conjugates.
  PcElement power(std::size_t i) const;
  PcElement conjugate_relation(std::size_t j, std::size_t i) const;
  void set_power(std::size_t i, const PcElement& rhs);
  void set_conjugate(std::size_t j, std::size_t i, const PcElement& rhs);
  bool power_trivial(std::size_t i) const { return power_[i].empty(); }
  bool conjugate_trivial(std::size_t j, std::size_t i) const { return conj_[index(j, i)].empty(); }

  bool has_weights() const { return !weight_.empty(); }
  unsigned weight(std::size_t i) const { return weight_.at(i); }
  const Definition& definition(std::size_t i) const { return def_.at(i); }
  void set_weight(std::size_t i, unsigned w);
  void set_definition(std::size_t i, Definition d);
  void clear_weights();

  // Generators of weight 1 (the Frattini rank); requires weights.
  std::size_t rank() const;
  // Largest weight; requires weights.
  unsigned p_class() const;

  PcElement identity() const { return PcElement(n_); }
  PcElement generator(std::size_t i) const;

  PcElement multiply(const PcElement& x, const PcElement& y) const;
  void multiply_in_place(PcElement& x, const PcElement& y) const;
  // x := x * g_i
  void multiply_generator(PcElement& x, std::size_t i) const;
  PcElement inverse(const PcElement& x) const;
  PcElement pow(const PcElement& x, long long m) const;
  PcElement conjugate(const PcElement& x, const PcElement& y) const;  // y^-1 x y
  PcElement commutator(const PcElement& x, const PcElement& y) const;  // x^-1 y^-1 x y
  PcElement evaluate(const Word& w) const;
  // Order exponent: x has order p^k.
  unsigned order_exponent_of(const PcElement& x) const;
  unsigned long long order_of(const PcElement& x) const;

  // Abstract word for the normal form of x.
  Word word_of(const PcElement& x) const;

 private:
  struct Term {
    std::uint32_t gen;
    std::uint8_t exp;
  };
  using Sparse = std::vector<Term>;

  static std::size_t index(std::size_t j, std::size_t i) { return j * (j - 1) / 2 + i; }
  static Sparse sparse_of(const PcElement& x);
  void check_rhs(const PcElement& rhs, std::size_t min_gen) const;
  void refresh_central_from();
  void collect_generator(std::uint8_t* e, std::size_t i) const;
  void collect_sparse(std::uint8_t* e, const Sparse& w, std::size_t repeat) const;

  unsigned p_ = 2;
  std::size_t n_ = 0;
  std::vector<Sparse> power_;
  std::vector<Sparse> conj_;  // tail-of-commutator encoding: trivial = empty
  std::vector<std::vector<std::uint32_t>> noncommuting_;  // j > i with nontrivial g_j^{g_i}
  std::vector<unsigned> weight_;
  std::vector<Definition> def_;
  std::vector<int> nontrivial_;    // nontrivial relations each generator takes part in
  std::size_t central_from_ = 0;  // generators >= this are central of order p
};

// --- validation -------------------------------------------------------------

struct ConsistencyReport {
  bool consistent = true;
  std::string failing_test;  // human-readable test word, empty when consistent
};

ConsistencyReport check_consistency(const PcPresentation& g);

// Visits every consistency test word with its two collected forms. The filter,
// when set, receives generator indices (k, j, i) of the test (i = SIZE_MAX for
// the g_i^p g_i test; repeated indices mark power tests) and may skip it. Only
// the first `limit` generators take part.
void for_each_consistency_test(
    const PcPresentation& g,
    const std::function<void(const std::string&, const PcElement&, const PcElement&)>& visit,
    const std::function<bool(std::size_t, std::size_t, std::size_t)>& wanted,
    std::size_t limit = static_cast<std::size_t>(-1));
bool is_consistent(const PcPresentation& g);

// Checks the weighted-presentation invariants: weights nondecreasing, weight-1
// generators first and undefined, every other generator defined by a relation
// of matching weight, and relation right-hand sides respecting weights.
// Returns an empty string when valid, otherwise the first violation.
std::string weighted_violation(const PcPresentation& g);

// --- text format ------------------------------------------------------------

// Bit-exact text form:
//   group p=2 n=4
//   g1 ; w=1
//   g3 ; w=2 def=pow(g2)
//   g2^2 = g3
//   g2^g1 = g2*g3
// Generators are numbered from 1. Omitted relations have trivial right-hand side.
std::string format_presentation(const PcPresentation& g);
PcPresentation parse_presentation(const std::string& text);

// Word in g1..gn, such as "g2*g3^-1" or "1".
Word parse_pc_word(const std::string& text, std::size_t n);
std::string format_element(const PcPresentation& g, const PcElement& x);

// --- abelian groups ---------------------------------------------------------

// Abelian p-group written by exponents e_1 >= e_2 >= ... >= 1 of p.
class AbelianType {
 public:
  AbelianType() = default;
  explicit AbelianType(std::vector<unsigned> exponents);

  // Parses "[2, 2, 16]" (cyclic orders, each a power of p; 1 entries dropped).
  static AbelianType parse(const std::string& text, unsigned p);

  const std::vector<unsigned>& exponents() const { return e_; }
  unsigned total_exponent() const;
  std::size_t rank() const { return e_.size(); }
  // Cyclic orders in ascending order, "[2, 2, 16]"; "[]" for the trivial group.
  std::string render(unsigned p) const;

  bool operator==(const AbelianType& o) const = default;
  bool operator<(const AbelianType& o) const { return e_ < o.e_; }

 private:
  std::vector<unsigned> e_;
};

// --- subgroups --------------------------------------------------------------

// Subgroup held by a canonical induced generating sequence: one element per
// occupied depth, leading exponent 1, and zero exponent at every other
// occupied depth. Equal subgroups have identical sequences.
class Subgroup {
 public:
  Subgroup() = default;
  // Subgroup generated by gens (closed under powers and commutators).
  Subgroup(std::shared_ptr<const PcPresentation> g, const std::vector<PcElement>& gens);

  static Subgroup whole(std::shared_ptr<const PcPresentation> g);
  static Subgroup trivial(std::shared_ptr<const PcPresentation> g);
  // Normal closure of gens in the whole group.
  static Subgroup normal_closure(std::shared_ptr<const PcPresentation> g,
                                 const std::vector<PcElement>& gens);
  // From a sequence already known to be an induced sequence for the subgroup
  // it generates (distinct depths); only normalizes it.
  static Subgroup from_induced(std::shared_ptr<const PcPresentation> g,
                               std::vector<PcElement> seq);

  const PcPresentation& group() const { return *g_; }
  const std::shared_ptr<const PcPresentation>& group_ptr() const { return g_; }
  const std::vector<PcElement>& sequence() const { return seq_; }
  std::size_t order_exponent() const { return seq_.size(); }
  std::size_t index_exponent() const { return g_->size() - seq_.size(); }
  // Depths occupied by the sequence.
  std::vector<std::size_t> depths() const;

  bool contains(const PcElement& x) const;
  // Coefficients c with x = s_0^c_0 s_1^c_1 ... when x is inside.
  std::optional<std::vector<unsigned>> coordinates(const PcElement& x) const;

  std::string key() const;
  bool operator==(const Subgroup& o) const { return seq_ == o.seq_; }

 private:
  void canonicalize();
  std::shared_ptr<const PcPresentation> g_;
  std::vector<PcElement> seq_;
};

// Terms P_1 = G > P_2 > ... > P_{c+1} = 1 of the lower exponent-p central
// series, computed by closure (does not rely on weights).
std::vector<Subgroup> exponent_p_central_series(std::shared_ptr<const PcPresentation> g);
unsigned p_class(std::shared_ptr<const PcPresentation> g);
Subgroup frattini_subgroup(std::shared_ptr<const PcPresentation> g);
Subgroup derived_subgroup(std::shared_ptr<const PcPresentation> g);
// [H, H] for a subgroup.
Subgroup derived_subgroup(const Subgroup& h);

// Maximal subgroups of h: kernels of the nonzero characters of h/Phi(h), one
// per kernel, in order of normalized character.
std::vector<Subgroup> maximal_subgroups(const Subgroup& h);

struct LabeledSubgroup {
  FpVector label;  // character on the weight-1 generators, first nonzero entry 1
  Subgroup subgroup;
};
// Index-p subgroups of a weighted group labeled by their character.
std::vector<LabeledSubgroup> index_p_subgroups(std::shared_ptr<const PcPresentation> g);

// All subgroups of index dividing max_index (1, p or p^2): index 1 first, then
// index p in label order, then index p^2 in key order.
std::vector<Subgroup> low_index_subgroups(std::shared_ptr<const PcPresentation> g,
                                          unsigned long long max_index);
// Only the index-p^2 subgroups.
std::vector<Subgroup> index_p2_subgroups(std::shared_ptr<const PcPresentation> g);

// Presentation on the canonical sequence of h (not weighted).
PcPresentation induced_presentation(const Subgroup& h);

AbelianType abelian_invariants(const PcPresentation& g);
AbelianType abelian_invariants(const Subgroup& h);

// --- homomorphisms ----------------------------------------------------------

class Homomorphism {
 public:
  Homomorphism() = default;
  // Images of every source generator; all source relations are verified.
  Homomorphism(std::shared_ptr<const PcPresentation> source,
               std::shared_ptr<const PcPresentation> target, std::vector<PcElement> images);
  // Images of the weight-1 generators of a weighted source; extended along
  // the definitions and verified.
  static Homomorphism from_generator_images(std::shared_ptr<const PcPresentation> source,
                                            std::shared_ptr<const PcPresentation> target,
                                            const std::vector<PcElement>& rank_images);
  // Projection Q -> Q/<g_k, ..., g_{n-1}> where the target is the same
  // presentation truncated to its first k generators.
  static Homomorphism truncation(std::shared_ptr<const PcPresentation> source,
                                 std::shared_ptr<const PcPresentation> target);

  const PcPresentation& source() const { return *src_; }
  const PcPresentation& target() const { return *dst_; }
  const std::shared_ptr<const PcPresentation>& target_ptr() const { return dst_; }
  const std::vector<PcElement>& images() const { return img_; }
  PcElement apply(const PcElement& x) const;
  bool is_truncation() const { return truncation_; }

 private:
  std::shared_ptr<const PcPresentation> src_, dst_;
  std::vector<PcElement> img_;
  bool truncation_ = false;
};

// Images of all generators of a weighted group determined by images of its
// weight-1 generators, computed in `target` along the definitions.
std::vector<PcElement> extend_along_definitions(const PcPresentation& source,
                                                const PcPresentation& target,
                                                const std::vector<PcElement>& rank_images);

// Relation-by-relation check that the given generator images satisfy every
// relation of `source` inside `target`.
bool respects_relations(const PcPresentation& source, const PcPresentation& target,
                        const std::vector<PcElement>& images);

// --- conjugacy --------------------------------------------------------------

// {g : [x, g] in P_{level+1}} for a weighted group (level = p-class gives the
// centralizer).
Subgroup centralizer_to_level(std::shared_ptr<const PcPresentation> g, const PcElement& x,
                              unsigned level);
Subgroup centralizer(std::shared_ptr<const PcPresentation> g, const PcElement& x);

// A conjugator c with x^c = y, if any.
std::optional<PcElement> conjugator(std::shared_ptr<const PcPresentation> g, const PcElement& x,
                                    const PcElement& y);
bool are_conjugate(std::shared_ptr<const PcPresentation> g, const PcElement& x,
                   const PcElement& y);

struct ConjugacyClass {
  PcElement rep;
  unsigned size_exponent = 0;  // class has p^size_exponent elements
};

// Representatives of all classes, by layered lifting from G/Phi(G).
std::vector<ConjugacyClass> class_representatives(std::shared_ptr<const PcPresentation> g);

// Classes of the weighted group q lying above the listed class representatives
// of q/P_c(q), where the representatives are elements of that quotient written
// on the first generators of q (their padded forms are lifts).
std::vector<ConjugacyClass> classes_above(std::shared_ptr<const PcPresentation> q,
                                          const std::vector<PcElement>& parent_reps);

}  // namespace pgg

#endif  // PGG_PCGROUP_HPP
