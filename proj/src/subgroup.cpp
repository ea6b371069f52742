#include "pgg/error.hpp"
#include "pgg/pcgroup.hpp"

#include <algorithm>
#include <map>

namespace pgg {

namespace {

// Incremental induced-sequence builder. Conjugators turn it into a normal
// closure under the listed elements.
class Closure {
 public:
  Closure(const PcPresentation& g, std::vector<PcElement> conjugators = {})
      : g_(g), slot_(g.size()), conjugators_(std::move(conjugators)) {}

  PcElement sift(PcElement x) const {
    while (!x.is_identity()) {
      const std::size_t d = x.depth();
      if (!slot_[d]) return x;
      g_.multiply_in_place(x, g_.pow(*slot_[d], g_.prime() - x[d]));
    }
    return x;
  }

  void add(std::vector<PcElement> queue) {
    const unsigned p = g_.prime();
    while (!queue.empty()) {
      PcElement r = sift(std::move(queue.back()));
      queue.pop_back();
      if (r.is_identity()) continue;
      const std::size_t d = r.depth();
      if (r[d] != 1) r = g_.pow(r, fp_inverse(r[d], p));
      queue.push_back(g_.pow(r, p));
      for (const auto& s : slot_)
        if (s) queue.push_back(g_.commutator(r, *s));
      for (const PcElement& c : conjugators_) queue.push_back(g_.commutator(r, c));
      slot_[d] = std::move(r);
    }
  }

  std::vector<PcElement> sequence() const {
    std::vector<PcElement> out;
    for (const auto& s : slot_)
      if (s) out.push_back(*s);
    return out;
  }

 private:
  const PcPresentation& g_;
  std::vector<std::optional<PcElement>> slot_;
  std::vector<PcElement> conjugators_;
};

std::vector<PcElement> all_generators(const PcPresentation& g) {
  std::vector<PcElement> gens;
  for (std::size_t k = 0; k < g.size(); ++k) gens.push_back(g.generator(k));
  return gens;
}

// Coordinates with respect to an arbitrary depth-increasing induced sequence
// with leading exponents 1.
std::optional<std::vector<unsigned>> sequence_coordinates(const PcPresentation& g,
                                                          const std::vector<PcElement>& seq,
                                                          PcElement x) {
  std::vector<unsigned> c(seq.size(), 0);
  for (std::size_t j = 0; j < seq.size() && !x.is_identity(); ++j) {
    const std::size_t d = seq[j].depth();
    const std::size_t dx = x.depth();
    if (dx < d) return std::nullopt;
    if (dx > d) continue;
    c[j] = x[d];
    x = g.multiply(g.inverse(g.pow(seq[j], x[d])), x);
  }
  if (!x.is_identity()) return std::nullopt;
  return c;
}

// Nonzero vectors of F_p^k with first nonzero entry 1, in lexicographic order.
std::vector<FpVector> normalized_vectors(unsigned p, std::size_t k) {
  std::vector<FpVector> out;
  for (std::size_t lead = 0; lead < k; ++lead) {
    const std::size_t free = k - lead - 1;
    unsigned long long total = 1;
    for (std::size_t t = 0; t < free; ++t) total *= p;
    for (unsigned long long code = 0; code < total; ++code) {
      FpVector v(k, 0);
      v[lead] = 1;
      unsigned long long c = code;
      for (std::size_t t = k; t-- > lead + 1;) {
        v[t] = static_cast<std::uint8_t>(c % p);
        c /= p;
      }
      out.push_back(std::move(v));
    }
  }
  return out;
}

}  // namespace

Subgroup::Subgroup(std::shared_ptr<const PcPresentation> g, const std::vector<PcElement>& gens)
    : g_(std::move(g)) {
  Closure c(*g_);
  c.add(gens);
  seq_ = c.sequence();
  canonicalize();
}

Subgroup Subgroup::whole(std::shared_ptr<const PcPresentation> g) {
  Subgroup h;
  h.seq_ = all_generators(*g);
  h.g_ = std::move(g);
  return h;
}

Subgroup Subgroup::trivial(std::shared_ptr<const PcPresentation> g) {
  Subgroup h;
  h.g_ = std::move(g);
  return h;
}

Subgroup Subgroup::normal_closure(std::shared_ptr<const PcPresentation> g,
                                  const std::vector<PcElement>& gens) {
  Subgroup h;
  Closure c(*g, all_generators(*g));
  c.add(gens);
  h.seq_ = c.sequence();
  h.g_ = std::move(g);
  h.canonicalize();
  return h;
}

Subgroup Subgroup::from_induced(std::shared_ptr<const PcPresentation> g,
                                std::vector<PcElement> seq) {
  Subgroup h;
  h.g_ = std::move(g);
  const unsigned p = h.g_->prime();
  for (PcElement& x : seq) {
    if (x.is_identity()) throw StructuralError("induced sequence contains the identity");
    const std::size_t d = x.depth();
    if (x[d] != 1) x = h.g_->pow(x, fp_inverse(x[d], p));
  }
  std::sort(seq.begin(), seq.end(),
            [](const PcElement& a, const PcElement& b) { return a.depth() < b.depth(); });
  for (std::size_t j = 1; j < seq.size(); ++j)
    if (seq[j].depth() == seq[j - 1].depth())
      throw StructuralError("induced sequence has repeated depth");
  h.seq_ = std::move(seq);
  h.canonicalize();
  return h;
}

void Subgroup::canonicalize() {
  const unsigned p = g_->prime();
  for (std::size_t j = 0; j < seq_.size(); ++j)
    for (std::size_t k = j + 1; k < seq_.size(); ++k) {
      const std::uint8_t e = seq_[j][seq_[k].depth()];
      if (e) g_->multiply_in_place(seq_[j], g_->pow(seq_[k], p - e));
    }
}

std::vector<std::size_t> Subgroup::depths() const {
  std::vector<std::size_t> d;
  for (const PcElement& s : seq_) d.push_back(s.depth());
  return d;
}

bool Subgroup::contains(const PcElement& x) const {
  return sequence_coordinates(*g_, seq_, x).has_value();
}

std::optional<std::vector<unsigned>> Subgroup::coordinates(const PcElement& x) const {
  return sequence_coordinates(*g_, seq_, x);
}

std::string Subgroup::key() const {
  std::string k;
  for (const PcElement& s : seq_) {
    k.append(s.exponents().begin(), s.exponents().end());
    k.push_back(static_cast<char>(0xff));
  }
  return k;
}

// --- series -----------------------------------------------------------------

std::vector<Subgroup> exponent_p_central_series(std::shared_ptr<const PcPresentation> g) {
  std::vector<Subgroup> series{Subgroup::whole(g)};
  const auto gens = all_generators(*g);
  while (series.back().order_exponent() > 0) {
    std::vector<PcElement> next;
    for (const PcElement& s : series.back().sequence()) {
      next.push_back(g->pow(s, g->prime()));
      for (const PcElement& x : gens) next.push_back(g->commutator(s, x));
    }
    Subgroup n = Subgroup::normal_closure(g, next);
    if (n.order_exponent() >= series.back().order_exponent())
      throw StructuralError("exponent-p central series does not terminate");
    series.push_back(std::move(n));
  }
  return series;
}

unsigned p_class(std::shared_ptr<const PcPresentation> g) {
  return static_cast<unsigned>(exponent_p_central_series(std::move(g)).size() - 1);
}

Subgroup frattini_subgroup(std::shared_ptr<const PcPresentation> g) {
  auto series = exponent_p_central_series(g);
  return series.size() > 1 ? series[1] : series[0];
}

Subgroup derived_subgroup(std::shared_ptr<const PcPresentation> g) {
  std::vector<PcElement> comms;
  for (std::size_t j = 0; j < g->size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      comms.push_back(g->commutator(g->generator(j), g->generator(i)));
  return Subgroup::normal_closure(g, comms);
}

Subgroup derived_subgroup(const Subgroup& h) {
  const auto& seq = h.sequence();
  std::vector<PcElement> comms;
  for (std::size_t j = 0; j < seq.size(); ++j)
    for (std::size_t i = 0; i < j; ++i) comms.push_back(h.group().commutator(seq[j], seq[i]));
  Closure c(h.group(), seq);
  c.add(comms);
  return Subgroup::from_induced(h.group_ptr(), c.sequence());
}

namespace {

Subgroup frattini_of(const Subgroup& h) {
  const PcPresentation& g = h.group();
  const auto& seq = h.sequence();
  std::vector<PcElement> gens;
  for (std::size_t j = 0; j < seq.size(); ++j) {
    gens.push_back(g.pow(seq[j], g.prime()));
    for (std::size_t i = 0; i < j; ++i) gens.push_back(g.commutator(seq[j], seq[i]));
  }
  Closure c(g, seq);
  c.add(gens);
  return Subgroup::from_induced(h.group_ptr(), c.sequence());
}

}  // namespace

std::vector<Subgroup> maximal_subgroups(const Subgroup& h) {
  const PcPresentation& g = h.group();
  const unsigned p = g.prime();
  const Subgroup phi = frattini_of(h);
  const auto phi_depths = phi.depths();
  std::vector<PcElement> top;
  for (const PcElement& s : h.sequence())
    if (!std::binary_search(phi_depths.begin(), phi_depths.end(), s.depth())) top.push_back(s);
  std::vector<Subgroup> out;
  for (const FpVector& chi : normalized_vectors(p, top.size())) {
    std::size_t last = chi.size();
    while (chi[last - 1] == 0) --last;
    --last;
    const unsigned inv = fp_inverse(chi[last], p);
    std::vector<PcElement> gens = phi.sequence();
    for (std::size_t t = 0; t < top.size(); ++t) {
      if (t == last) continue;
      const unsigned m = (p - (chi[t] * inv) % p) % p;
      gens.push_back(g.multiply(top[t], g.pow(top[last], m)));
    }
    out.emplace_back(h.group_ptr(), gens);
    if (out.back().order_exponent() + 1 != h.order_exponent())
      throw StructuralError("maximal subgroup has wrong order");
  }
  return out;
}

std::vector<LabeledSubgroup> index_p_subgroups(std::shared_ptr<const PcPresentation> g) {
  const std::size_t d = g->rank();
  const unsigned p = g->prime();
  std::vector<LabeledSubgroup> out;
  for (const FpVector& chi : normalized_vectors(p, d)) {
    std::size_t last = d;
    while (chi[last - 1] == 0) --last;
    --last;
    const unsigned inv = fp_inverse(chi[last], p);
    std::vector<PcElement> seq;
    for (std::size_t t = 0; t < g->size(); ++t) {
      if (t == last) continue;
      PcElement x = g->generator(t);
      if (t < d) x[last] = static_cast<std::uint8_t>((p - (chi[t] * inv) % p) % p);
      seq.push_back(std::move(x));
    }
    out.push_back({chi, Subgroup::from_induced(g, std::move(seq))});
  }
  return out;
}

std::vector<Subgroup> index_p2_subgroups(std::shared_ptr<const PcPresentation> g) {
  std::map<std::string, Subgroup> found;
  for (const LabeledSubgroup& m : index_p_subgroups(g))
    for (Subgroup& k : maximal_subgroups(m.subgroup)) found.emplace(k.key(), std::move(k));
  std::vector<Subgroup> out;
  for (auto& [key, s] : found) out.push_back(std::move(s));
  return out;
}

std::vector<Subgroup> low_index_subgroups(std::shared_ptr<const PcPresentation> g,
                                          unsigned long long max_index) {
  const unsigned long long p = g->prime();
  if (max_index > p * p) throw StructuralError("subgroup index above p^2 is not supported");
  std::vector<Subgroup> out{Subgroup::whole(g)};
  if (max_index >= p)
    for (LabeledSubgroup& m : index_p_subgroups(g)) out.push_back(std::move(m.subgroup));
  if (max_index >= p * p)
    for (Subgroup& s : index_p2_subgroups(g)) out.push_back(std::move(s));
  return out;
}

PcPresentation induced_presentation(const Subgroup& h) {
  const PcPresentation& g = h.group();
  const auto& seq = h.sequence();
  const std::size_t r = seq.size();
  PcPresentation out(g.prime(), r);
  auto as_element = [&](const PcElement& x) {
    auto c = h.coordinates(x);
    if (!c) throw StructuralError("subgroup is not closed");
    PcElement y(r);
    for (std::size_t t = 0; t < r; ++t) y[t] = static_cast<std::uint8_t>((*c)[t]);
    return y;
  };
  for (std::size_t j = 0; j < r; ++j) {
    out.set_power(j, as_element(g.pow(seq[j], g.prime())));
    for (std::size_t k = j + 1; k < r; ++k)
      out.set_conjugate(k, j, as_element(g.conjugate(seq[k], seq[j])));
  }
  return out;
}

AbelianType abelian_invariants(const PcPresentation& g) {
  const std::size_t n = g.size();
  const unsigned p = g.prime();
  IntMatrix m(0, n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<BigInt> row(n);
    const PcElement w = g.power(i);
    for (std::size_t t = 0; t < n; ++t) row[t] = -static_cast<int>(w[t]);
    row[i] += p;
    m.append_row(row);
  }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      if (g.conjugate_trivial(j, i)) continue;
      std::vector<BigInt> row(n);
      const PcElement w = g.conjugate_relation(j, i);
      for (std::size_t t = 0; t < n; ++t) row[t] = static_cast<int>(w[t]);
      row[j] -= 1;
      m.append_row(row);
    }
  std::vector<unsigned> exps;
  for (BigInt d : cokernel_invariants(m)) {
    if (d == 0) throw StructuralError("abelian invariants of a finite p-group are finite");
    unsigned k = 0;
    while (d > 1) {
      if (d % p != 0) throw StructuralError("abelian invariant is not a power of p");
      d /= p;
      ++k;
    }
    exps.push_back(k);
  }
  return AbelianType(std::move(exps));
}

AbelianType abelian_invariants(const Subgroup& h) {
  return abelian_invariants(induced_presentation(h));
}

// --- homomorphisms ----------------------------------------------------------

namespace {

PcElement image_of(const PcPresentation& target, const std::vector<PcElement>& images,
                   const PcElement& x) {
  PcElement y = target.identity();
  for (std::size_t k = 0; k < x.size(); ++k)
    for (std::uint8_t r = 0; r < x[k]; ++r) target.multiply_in_place(y, images[k]);
  return y;
}

}  // namespace

bool respects_relations(const PcPresentation& source, const PcPresentation& target,
                        const std::vector<PcElement>& images) {
  const std::size_t n = source.size();
  if (images.size() != n) return false;
  for (const PcElement& x : images)
    if (x.size() != target.size()) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (target.pow(images[i], source.prime()) != image_of(target, images, source.power(i)))
      return false;
    for (std::size_t j = i + 1; j < n; ++j)
      if (target.conjugate(images[j], images[i]) !=
          image_of(target, images, source.conjugate_relation(j, i)))
        return false;
  }
  return true;
}

std::vector<PcElement> extend_along_definitions(const PcPresentation& source,
                                                const PcPresentation& target,
                                                const std::vector<PcElement>& rank_images) {
  const std::size_t n = source.size();
  const std::size_t d = source.rank();
  if (rank_images.size() != d) throw StructuralError("need one image per weight-1 generator");
  std::vector<PcElement> img(rank_images);
  img.reserve(n);
  for (std::size_t k = d; k < n; ++k) {
    const Definition& def = source.definition(k);
    PcElement lhs, rhs;
    if (def.kind == Definition::Kind::power) {
      lhs = target.pow(img[def.a], source.prime());
      rhs = source.power(def.a);
    } else if (def.kind == Definition::Kind::conjugate) {
      lhs = target.conjugate(img[def.a], img[def.b]);
      rhs = source.conjugate_relation(def.a, def.b);
    } else {
      throw StructuralError("generator g" + std::to_string(k + 1) + " has no definition");
    }
    rhs[k] = 0;
    img.push_back(target.multiply(target.inverse(image_of(target, img, rhs)), lhs));
  }
  return img;
}

Homomorphism::Homomorphism(std::shared_ptr<const PcPresentation> source,
                           std::shared_ptr<const PcPresentation> target,
                           std::vector<PcElement> images)
    : src_(std::move(source)), dst_(std::move(target)), img_(std::move(images)) {
  if (!respects_relations(*src_, *dst_, img_))
    throw StructuralError("generator images do not define a homomorphism");
}

Homomorphism Homomorphism::from_generator_images(std::shared_ptr<const PcPresentation> source,
                                                 std::shared_ptr<const PcPresentation> target,
                                                 const std::vector<PcElement>& rank_images) {
  auto img = extend_along_definitions(*source, *target, rank_images);
  return Homomorphism(std::move(source), std::move(target), std::move(img));
}

Homomorphism Homomorphism::truncation(std::shared_ptr<const PcPresentation> source,
                                      std::shared_ptr<const PcPresentation> target) {
  if (target->size() > source->size() || target->prime() != source->prime())
    throw StructuralError("truncation target is larger than the source");
  Homomorphism h;
  for (std::size_t k = 0; k < source->size(); ++k)
    h.img_.push_back(source->generator(k).truncated(target->size()));
  h.src_ = std::move(source);
  h.dst_ = std::move(target);
  h.truncation_ = true;
  return h;
}

PcElement Homomorphism::apply(const PcElement& x) const {
  if (truncation_) return x.truncated(dst_->size());
  return image_of(*dst_, img_, x);
}

}  // namespace pgg
