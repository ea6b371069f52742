#ifndef PGG_AUTOMORPHISM_HPP
#define PGG_AUTOMORPHISM_HPP

// Automorphisms of weighted pc groups, given by the images of the weight-1
// generators, and an exact order-tracking generating-set reducer.

#include "pgg/pcgroup.hpp"

#include <optional>
#include <string>
#include <unordered_map>
#include <memory>
#include <vector>

namespace pgg {

class Automorphism {
 public:
  Automorphism() = default;

  // rank_images: images of g_1..g_d. With verify, checks that the images
  // respect every relation and induce an invertible map on G/Phi(G).
  static Automorphism from_images(std::shared_ptr<const PcPresentation> g,
                                  const std::vector<PcElement>& rank_images, bool verify = true);
  static Automorphism identity(std::shared_ptr<const PcPresentation> g);
  // Action of an invertible d x d matrix on an elementary abelian group (rows
  // are images).
  static Automorphism from_matrix(std::shared_ptr<const PcPresentation> g, const FpMatrix& m);

  const PcPresentation& group() const { return *g_; }
  const std::shared_ptr<const PcPresentation>& group_ptr() const { return g_; }
  // Images of all generators.
  const std::vector<PcElement>& images() const { return img_; }
  std::vector<PcElement> rank_images() const;

  PcElement apply(const PcElement& x) const;
  // x -> b(this(x))
  Automorphism then(const Automorphism& b) const;
  Automorphism power(unsigned long long e) const;
  Automorphism inverse() const;
  // Unique x with this(x) = y.
  PcElement preimage(const PcElement& y) const;

  // Action on G/Phi(G): row i holds the weight-1 coordinates of the image of g_i.
  FpMatrix top_matrix() const;
  bool is_identity() const;
  bool operator==(const Automorphism& o) const { return img_ == o.img_; }

 private:
  std::shared_ptr<const PcPresentation> g_;
  std::vector<PcElement> img_;
};

// A generating set together with the exact order of the group it generates.
struct AutomorphismGroup {
  std::vector<Automorphism> generators;
  BigInt order = 1;
};

std::vector<FpMatrix> gl_generators(std::size_t d, unsigned p);
BigInt gl_order(std::size_t d, unsigned p);
// GL(d, p) acting on the elementary abelian group of rank d.
AutomorphismGroup elementary_abelian_automorphisms(std::shared_ptr<const PcPresentation> g);

// Stores a subgroup of Aut(G) as its image H in GL(d, p), held by a
// stabilizer chain on the basis vectors of G/Phi(G), over a layered kernel:
// level l records the signatures g_j^-1 a(g_j) in the l-th layer of the lower
// exponent-p central series. Elements are sifted, so few generators are kept.
class AutomorphismChain {
 public:
  explicit AutomorphismChain(std::shared_ptr<const PcPresentation> g);

  // Sifts a; true when the represented set grew.
  bool add(const Automorphism& a);
  // Adds powers, commutators and top conjugates of stored kernel elements
  // until the stored data describes a group.
  void close();
  // Size of the represented set (a lower bound for the generated group's
  // order, exact after close()).
  BigInt order() const;
  std::vector<Automorphism> generators() const;

 private:
  struct TopLevel {
    FpVector base;
    std::vector<Automorphism> gens;  // strong generators fixing the earlier base points
    std::vector<FpMatrix> mats;
    std::vector<FpVector> orbit;
    std::unordered_map<std::string, std::size_t> index;
    std::vector<Automorphism> trans;
    std::vector<std::optional<Automorphism>> trans_inv;  // filled on demand
    std::vector<std::size_t> grown;    // generators used to extend the orbit from each point
    std::vector<std::size_t> applied;  // Schreier generators already formed at each point
  };
  struct Level {
    std::size_t begin = 0, end = 0;  // generator range of the layer
    std::vector<FpVector> rows;
    std::vector<std::size_t> pivots;
    std::vector<Automorphism> elements;
  };
  bool sift_top(Automorphism a, std::size_t from);
  bool sift_kernel(Automorphism k);
  FpVector signature(const Automorphism& a, const Level& level) const;
  void extend_orbit(std::size_t level);
  void complete_top();
  const Automorphism& transversal_inverse(std::size_t level, std::size_t point);

  std::shared_ptr<const PcPresentation> g_;
  std::size_t d_ = 0;
  std::vector<TopLevel> top_;
  std::vector<Level> levels_;
};

}  // namespace pgg

#endif  // PGG_AUTOMORPHISM_HPP
