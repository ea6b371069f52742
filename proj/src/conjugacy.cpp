#include "pgg/error.hpp"
#include "pgg/pcgroup.hpp"

#include <algorithm>
#include <functional>

namespace pgg {

namespace {

struct Layer {
  std::size_t begin, end;
};

std::vector<Layer> layers_of(const PcPresentation& g) {
  if (!g.has_weights()) throw StructuralError("layered algorithms need a weighted presentation");
  std::vector<Layer> out;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const unsigned w = g.weight(k);
    while (out.size() < w) out.push_back({k, k});
    out[w - 1].end = k + 1;
  }
  return out;
}

FpVector layer_vector(const PcElement& x, const Layer& l) {
  return FpVector(x.exponents().begin() + static_cast<std::ptrdiff_t>(l.begin),
                  x.exponents().begin() + static_cast<std::ptrdiff_t>(l.end));
}

// Semi-echelon image of a homomorphism into a layer, each row paired with an
// element mapping to it.
struct TrackedImage {
  std::vector<FpVector> rows;
  std::vector<std::size_t> pivots;
  std::vector<PcElement> elements;
};

struct LayerStep {
  std::vector<PcElement> kernel;  // induced sequence, increasing depth
  TrackedImage image;
};

LayerStep layer_step(const PcPresentation& g, const std::vector<PcElement>& seq,
                     const std::function<FpVector(const PcElement&)>& phi) {
  const unsigned p = g.prime();
  LayerStep out;
  auto& im = out.image;
  for (std::size_t j = seq.size(); j-- > 0;) {
    FpVector v = phi(seq[j]);
    PcElement elem = seq[j];
    for (std::size_t r = 0; r < im.rows.size(); ++r) {
      const unsigned c = v[im.pivots[r]];
      if (!c) continue;
      for (std::size_t t = 0; t < v.size(); ++t)
        v[t] = static_cast<std::uint8_t>((v[t] + (p - c) * im.rows[r][t]) % p);
      g.multiply_in_place(elem, g.pow(im.elements[r], p - c));
    }
    std::size_t lead = 0;
    while (lead < v.size() && v[lead] == 0) ++lead;
    if (lead == v.size()) {
      out.kernel.push_back(std::move(elem));
      continue;
    }
    const unsigned inv = fp_inverse(v[lead], p);
    for (auto& x : v) x = static_cast<std::uint8_t>((x * inv) % p);
    im.rows.push_back(std::move(v));
    im.pivots.push_back(lead);
    im.elements.push_back(g.pow(elem, inv));
  }
  std::reverse(out.kernel.begin(), out.kernel.end());
  return out;
}

// Element with phi(element) = t, if t lies in the image.
std::optional<PcElement> solve(const PcPresentation& g, const TrackedImage& im, FpVector t) {
  const unsigned p = g.prime();
  PcElement sol = g.identity();
  for (std::size_t r = 0; r < im.rows.size(); ++r) {
    const unsigned c = t[im.pivots[r]];
    if (!c) continue;
    for (std::size_t k = 0; k < t.size(); ++k)
      t[k] = static_cast<std::uint8_t>((t[k] + (p - c) * im.rows[r][k]) % p);
    g.multiply_in_place(sol, g.pow(im.elements[r], c));
  }
  for (auto x : t)
    if (x) return std::nullopt;
  return sol;
}

std::vector<PcElement> generators_of(const PcPresentation& g) {
  std::vector<PcElement> v;
  for (std::size_t k = 0; k < g.size(); ++k) v.push_back(g.generator(k));
  return v;
}

std::vector<PcElement> centralizer_sequence(const PcPresentation& g,
                                            const std::vector<Layer>& layers, const PcElement& x,
                                            unsigned level) {
  std::vector<PcElement> seq = generators_of(g);
  for (unsigned l = 2; l <= level && l <= layers.size(); ++l) {
    const Layer& layer = layers[l - 1];
    seq = layer_step(g, seq, [&](const PcElement& c) {
            return layer_vector(g.commutator(x, c), layer);
          }).kernel;
  }
  return seq;
}

// Representatives x*l of the classes above x in one layer, where l ranges
// over vectors supported on the non-pivot coordinates of the image.
void lift_through_layer(const PcPresentation& g, const Layer& layer, const PcElement& x,
                        const std::vector<PcElement>& cent, std::vector<PcElement>& reps,
                        std::vector<std::vector<PcElement>>& cents) {
  const unsigned p = g.prime();
  LayerStep step = layer_step(g, cent, [&](const PcElement& c) {
    return layer_vector(g.commutator(x, c), layer);
  });
  const std::size_t m = layer.end - layer.begin;
  std::vector<bool> is_pivot(m, false);
  for (std::size_t piv : step.image.pivots) is_pivot[piv] = true;
  std::vector<std::size_t> free;
  for (std::size_t t = 0; t < m; ++t)
    if (!is_pivot[t]) free.push_back(t);
  unsigned long long total = 1;
  for (std::size_t t = 0; t < free.size(); ++t) total *= p;
  for (unsigned long long code = 0; code < total; ++code) {
    PcElement l = g.identity();
    unsigned long long c = code;
    for (std::size_t t = free.size(); t-- > 0;) {
      l[layer.begin + free[t]] = static_cast<std::uint8_t>(c % p);
      c /= p;
    }
    reps.push_back(g.multiply(x, l));
    cents.push_back(step.kernel);
  }
}

}  // namespace

Subgroup centralizer_to_level(std::shared_ptr<const PcPresentation> g, const PcElement& x,
                              unsigned level) {
  const auto layers = layers_of(*g);
  auto seq = centralizer_sequence(*g, layers, x, level);
  return Subgroup::from_induced(std::move(g), std::move(seq));
}

Subgroup centralizer(std::shared_ptr<const PcPresentation> g, const PcElement& x) {
  const unsigned c = static_cast<unsigned>(layers_of(*g).size());
  return centralizer_to_level(std::move(g), x, c);
}

std::optional<PcElement> conjugator(std::shared_ptr<const PcPresentation> gp, const PcElement& x,
                                    const PcElement& y) {
  const PcPresentation& g = *gp;
  const auto layers = layers_of(g);
  if (layers.empty()) return g.identity();
  if (layer_vector(x, layers[0]) != layer_vector(y, layers[0])) return std::nullopt;
  PcElement conj = g.identity();
  PcElement xc = x;
  std::vector<PcElement> seq = generators_of(g);
  for (std::size_t l = 2; l <= layers.size(); ++l) {
    const Layer& layer = layers[l - 1];
    LayerStep step = layer_step(g, seq, [&](const PcElement& c) {
      return layer_vector(g.commutator(xc, c), layer);
    });
    const FpVector target = layer_vector(g.multiply(g.inverse(xc), y), layer);
    auto sol = solve(g, step.image, target);
    if (!sol) return std::nullopt;
    g.multiply_in_place(conj, *sol);
    xc = g.conjugate(xc, *sol);
    seq = std::move(step.kernel);
  }
  if (xc != y) throw StructuralError("conjugacy lifting failed to reach the target");
  return conj;
}

bool are_conjugate(std::shared_ptr<const PcPresentation> g, const PcElement& x,
                   const PcElement& y) {
  return conjugator(std::move(g), x, y).has_value();
}

std::vector<ConjugacyClass> class_representatives(std::shared_ptr<const PcPresentation> gp) {
  const PcPresentation& g = *gp;
  const auto layers = layers_of(g);
  std::vector<PcElement> reps{g.identity()};
  std::vector<std::vector<PcElement>> cents{generators_of(g)};
  for (const Layer& layer : layers) {
    std::vector<PcElement> next_reps;
    std::vector<std::vector<PcElement>> next_cents;
    for (std::size_t r = 0; r < reps.size(); ++r)
      lift_through_layer(g, layer, reps[r], cents[r], next_reps, next_cents);
    reps = std::move(next_reps);
    cents = std::move(next_cents);
  }
  std::vector<ConjugacyClass> out;
  for (std::size_t r = 0; r < reps.size(); ++r)
    out.push_back({reps[r], static_cast<unsigned>(g.size() - cents[r].size())});
  return out;
}

std::vector<ConjugacyClass> classes_above(std::shared_ptr<const PcPresentation> qp,
                                          const std::vector<PcElement>& parent_reps) {
  const PcPresentation& q = *qp;
  const auto layers = layers_of(q);
  if (layers.empty()) return {{q.identity(), 0}};
  const unsigned c = static_cast<unsigned>(layers.size()) - 1;
  std::vector<ConjugacyClass> out;
  for (const PcElement& rep : parent_reps) {
    const PcElement x = rep.padded(q.size());
    const auto cent = centralizer_sequence(q, layers, x, c);
    std::vector<PcElement> reps;
    std::vector<std::vector<PcElement>> cents;
    lift_through_layer(q, layers.back(), x, cent, reps, cents);
    for (std::size_t r = 0; r < reps.size(); ++r)
      out.push_back({reps[r], static_cast<unsigned>(q.size() - cents[r].size())});
  }
  return out;
}

}  // namespace pgg
