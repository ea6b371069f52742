#ifndef PGG_PCOVER_HPP
#define PGG_PCOVER_HPP

// p-covering groups, immediate descendants and the p-quotient algorithm.

#include "pgg/automorphism.hpp"
#include "pgg/pcgroup.hpp"

#include <optional>
#include <string>
#include <vector>

namespace pgg {

// G* for a weighted group G of p-class c. The cover has the generators of G
// followed by one generator per multiplicator coordinate; the last
// nuclear_rank coordinates span the nucleus P_{c+1}(G*).
struct PCoverData {
  std::shared_ptr<const PcPresentation> base;
  std::shared_ptr<const PcPresentation> cover;
  std::size_t mult_rank = 0;
  std::size_t nuclear_rank = 0;
  // Relation of G defining each multiplicator coordinate.
  std::vector<Definition> tail_definitions;
  Homomorphism projection;  // G* -> G

  Subspace multiplicator() const;
  Subspace nucleus() const;
  // Multiplicator coordinates of a central element of the cover.
  FpVector tail_part(const PcElement& x) const;
};

PCoverData p_cover(std::shared_ptr<const PcPresentation> g);

// Induced matrix of an automorphism of G on the multiplicator, acting on row
// vectors (v -> v * A).
FpMatrix multiplicator_action(const PCoverData& cover, const Automorphism& a);
std::vector<FpMatrix> aut_action_on_multiplicator(const PCoverData& cover,
                                                  const std::vector<Automorphism>& auts);

// G*/U for a subspace U of the multiplicator with U + N = M; the coordinates
// outside U become generators of weight c + 1.
PcPresentation cover_quotient(const PCoverData& cover, const Subspace& u);
// Image in G*/U of an element of G*.
PcElement reduce_to_quotient(const PCoverData& cover, const Subspace& u,
                             const PcPresentation& quotient, const PcElement& x);

struct DescendantRecord {
  Subspace allowable;
  std::shared_ptr<const PcPresentation> quotient;
  std::size_t step = 0;
  std::size_t orbit_size = 0;
  // Generators of the stabilizer of U in Aut(G), as automorphisms of G.
  std::vector<Automorphism> stabilizer;
  BigInt stabilizer_order = 1;
  Homomorphism projection;  // quotient -> G
};

struct DescendantOptions {
  unsigned long long orbit_cap = 1ull << 22;
  std::string node_id = "root";
  // Descendants of larger step are not computed.
  std::size_t max_step = static_cast<std::size_t>(-1);
};

// One descendant per Aut(G)-orbit of allowable subspaces, steps ascending and
// representatives lexicographically least in their orbit.
std::vector<DescendantRecord> immediate_descendants(const PCoverData& cover,
                                                    const AutomorphismGroup& auts,
                                                    const DescendantOptions& options = {});
std::vector<DescendantRecord> immediate_descendants(std::shared_ptr<const PcPresentation> g,
                                                    const AutomorphismGroup& auts,
                                                    const DescendantOptions& options = {});

// Aut(Q) for a descendant Q: the stabilizer induced on Q together with the
// central automorphisms g_i -> g_i z, z in the last layer of Q.
AutomorphismGroup propagate_automorphisms(const DescendantRecord& d);

// Quotient G/P_{c+1}(G) of a weighted group: the generators of weight <= c.
PcPresentation class_quotient(const PcPresentation& g, unsigned c);

// Generators and order of Aut(G) for a weighted group, built up the lower
// exponent-p central series from GL(d, p).
AutomorphismGroup automorphism_group(std::shared_ptr<const PcPresentation> g);

// Canonical presentation of the isomorphism type of a weighted group: each
// class quotient is the cover quotient by the least subspace in its orbit.
PcPresentation standard_presentation(std::shared_ptr<const PcPresentation> g);
bool isomorphic(std::shared_ptr<const PcPresentation> g, std::shared_ptr<const PcPresentation> h);

// Stabilizer of one allowable subspace under Aut(G).
AutomorphismGroup subspace_stabilizer(const PCoverData& cover, const AutomorphismGroup& auts,
                                      const Subspace& u);

// Finitely presented group on named generators.
struct FpPresentation {
  std::vector<std::string> generators;
  std::vector<Word> relators;
};

// "<a, b | a^2, b^-1*a*b*a*b^3*a>"; juxtaposition also multiplies, and
// relations "u = v" are accepted.
FpPresentation parse_fp_presentation(const std::string& text);
std::string format_fp_presentation(const FpPresentation& f);
// A word in the named generators; "u = v" gives u v^-1.
Word parse_fp_word(const std::string& text, const std::vector<std::string>& generators);

struct PQuotientResult {
  std::shared_ptr<const PcPresentation> group;
  bool maximal = false;  // the class stabilized before max_class
  // Image in the quotient of each abstract generator.
  std::vector<PcElement> images;
};

PQuotientResult p_quotient(const FpPresentation& f, unsigned p, unsigned max_class);

}  // namespace pgg

#endif  // PGG_PCOVER_HPP
