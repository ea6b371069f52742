#include "pgg/automorphism.hpp"

#include "pgg/error.hpp"

namespace pgg {

namespace {

struct Layer {
  std::size_t begin, end;
};

std::vector<Layer> layers_of(const PcPresentation& g) {
  if (!g.has_weights()) throw StructuralError("automorphisms need a weighted presentation");
  std::vector<Layer> out;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const unsigned w = g.weight(k);
    while (out.size() < w) out.push_back({k, k});
    out[w - 1].end = k + 1;
  }
  return out;
}

FpVector slice(const PcElement& x, std::size_t begin, std::size_t end) {
  return FpVector(x.exponents().begin() + static_cast<std::ptrdiff_t>(begin),
                  x.exponents().begin() + static_cast<std::ptrdiff_t>(end));
}

// Inverses of the induced action on each layer.
std::vector<FpMatrix> layer_inverses(const PcPresentation& g, const std::vector<PcElement>& img,
                                     const std::vector<Layer>& layers) {
  std::vector<FpMatrix> out;
  for (const Layer& l : layers) {
    const std::size_t s = l.end - l.begin;
    FpMatrix m(g.prime(), s, s);
    for (std::size_t r = 0; r < s; ++r)
      for (std::size_t c = 0; c < s; ++c) m.set(r, c, img[l.begin + r][l.begin + c]);
    out.push_back(matrix_inverse(m));
  }
  return out;
}

PcElement layered_preimage(const PcPresentation& g, const std::vector<PcElement>& img,
                           const std::vector<Layer>& layers, const std::vector<FpMatrix>& inv,
                           const PcElement& y) {
  PcElement x = g.identity(), ax = g.identity();
  for (std::size_t li = 0; li < layers.size(); ++li) {
    const Layer& l = layers[li];
    const PcElement rest = g.multiply(g.inverse(ax), y);
    const FpVector z = inv[li].apply_row(slice(rest, l.begin, l.end));
    for (std::size_t k = 0; k < z.size(); ++k) {
      if (z[k] == 0) continue;
      PcElement gk = g.generator(l.begin + k);
      gk[l.begin + k] = z[k];
      g.multiply_in_place(x, gk);
      for (unsigned r = 0; r < z[k]; ++r) g.multiply_in_place(ax, img[l.begin + k]);
    }
  }
  if (ax != y) throw StructuralError("preimage does not reproduce the target");
  return x;
}

}  // namespace

Automorphism Automorphism::from_images(std::shared_ptr<const PcPresentation> g,
                                       const std::vector<PcElement>& rank_images, bool verify) {
  Automorphism a;
  a.img_ = extend_along_definitions(*g, *g, rank_images);
  a.g_ = std::move(g);
  if (verify) {
    if (!respects_relations(*a.g_, *a.g_, a.img_))
      throw StructuralError("images do not define an endomorphism");
    if (rank(a.top_matrix()) != a.g_->rank()) throw StructuralError("images are not invertible");
  }
  return a;
}

Automorphism Automorphism::identity(std::shared_ptr<const PcPresentation> g) {
  Automorphism a;
  for (std::size_t k = 0; k < g->size(); ++k) a.img_.push_back(g->generator(k));
  a.g_ = std::move(g);
  return a;
}

Automorphism Automorphism::from_matrix(std::shared_ptr<const PcPresentation> g,
                                       const FpMatrix& m) {
  const std::size_t d = g->rank();
  if (m.rows() != d || m.cols() != d) throw StructuralError("matrix size differs from the rank");
  std::vector<PcElement> imgs;
  for (std::size_t i = 0; i < d; ++i) {
    PcElement x = g->identity();
    for (std::size_t k = 0; k < d; ++k)
      for (unsigned r = 0; r < m.at(i, k); ++r) g->multiply_generator(x, k);
    imgs.push_back(x);
  }
  return from_images(std::move(g), imgs, true);
}

std::vector<PcElement> Automorphism::rank_images() const {
  return std::vector<PcElement>(img_.begin(), img_.begin() + static_cast<std::ptrdiff_t>(g_->rank()));
}

PcElement Automorphism::apply(const PcElement& x) const {
  PcElement y = g_->identity();
  for (std::size_t k = 0; k < x.size(); ++k)
    for (unsigned r = 0; r < x[k]; ++r) g_->multiply_in_place(y, img_[k]);
  return y;
}

Automorphism Automorphism::then(const Automorphism& b) const {
  std::vector<PcElement> r;
  const std::size_t d = g_->rank();
  r.reserve(d);
  for (std::size_t i = 0; i < d; ++i) r.push_back(b.apply(img_[i]));
  return from_images(g_, r, false);
}

Automorphism Automorphism::power(unsigned long long e) const {
  Automorphism result = identity(g_), base = *this;
  while (e > 0) {
    if (e & 1) result = result.then(base);
    e >>= 1;
    if (e > 0) base = base.then(base);
  }
  return result;
}

Automorphism Automorphism::inverse() const {
  const auto layers = layers_of(*g_);
  const auto inv = layer_inverses(*g_, img_, layers);
  std::vector<PcElement> r;
  for (std::size_t i = 0; i < g_->rank(); ++i)
    r.push_back(layered_preimage(*g_, img_, layers, inv, g_->generator(i)));
  return from_images(g_, r, false);
}

PcElement Automorphism::preimage(const PcElement& y) const {
  const auto layers = layers_of(*g_);
  return layered_preimage(*g_, img_, layers, layer_inverses(*g_, img_, layers), y);
}

FpMatrix Automorphism::top_matrix() const {
  const std::size_t d = g_->rank();
  FpMatrix m(g_->prime(), d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t k = 0; k < d; ++k) m.set(i, k, img_[i][k]);
  return m;
}

bool Automorphism::is_identity() const {
  for (std::size_t i = 0; i < g_->rank(); ++i)
    if (img_[i] != g_->generator(i)) return false;
  return true;
}

// --- GL(d, p) ---------------------------------------------------------------

namespace {

unsigned primitive_root(unsigned p) {
  for (unsigned w = 2; w < p; ++w) {
    unsigned x = w, k = 1;
    while (x != 1) {
      x = x * w % p;
      ++k;
    }
    if (k == p - 1) return w;
  }
  return 1;
}

}  // namespace

std::vector<FpMatrix> gl_generators(std::size_t d, unsigned p) {
  std::vector<FpMatrix> out;
  if (d == 0) return out;
  if (p > 2) {
    FpMatrix m = FpMatrix::identity(p, d);
    m.set(0, 0, primitive_root(p));
    out.push_back(m);
  }
  if (d == 1) return out;
  FpMatrix swap(p, d, d);
  swap.set(0, 1, 1);
  swap.set(1, 0, 1);
  for (std::size_t i = 2; i < d; ++i) swap.set(i, i, 1);
  out.push_back(swap);
  if (d > 2) {
    FpMatrix cyc(p, d, d);
    for (std::size_t i = 0; i < d; ++i) cyc.set(i, (i + 1) % d, 1);
    out.push_back(cyc);
  }
  FpMatrix tv = FpMatrix::identity(p, d);
  tv.set(0, 1, 1);
  out.push_back(tv);
  return out;
}

BigInt gl_order(std::size_t d, unsigned p) {
  BigInt order = 1, pd = 1, pi = 1;
  for (std::size_t i = 0; i < d; ++i) pd *= p;
  for (std::size_t i = 0; i < d; ++i) {
    order *= pd - pi;
    pi *= p;
  }
  return order;
}

AutomorphismGroup elementary_abelian_automorphisms(std::shared_ptr<const PcPresentation> g) {
  if (g->size() != g->rank()) throw StructuralError("group is not elementary abelian");
  AutomorphismGroup out;
  for (const FpMatrix& m : gl_generators(g->rank(), g->prime()))
    out.generators.push_back(Automorphism::from_matrix(g, m));
  out.order = gl_order(g->rank(), g->prime());
  return out;
}

// --- chain ------------------------------------------------------------------

namespace {

std::string vector_key(const FpVector& v) { return std::string(v.begin(), v.end()); }

}  // namespace

AutomorphismChain::AutomorphismChain(std::shared_ptr<const PcPresentation> g)
    : g_(std::move(g)), d_(g_->rank()) {
  const auto layers = layers_of(*g_);
  for (std::size_t l = 1; l < layers.size(); ++l) {
    Level lv;
    lv.begin = layers[l].begin;
    lv.end = layers[l].end;
    levels_.push_back(lv);
  }
  for (std::size_t l = 0; l < d_; ++l) {
    TopLevel t;
    t.base.assign(d_, 0);
    t.base[l] = 1;
    t.orbit.push_back(t.base);
    t.index[vector_key(t.base)] = 0;
    t.trans.push_back(Automorphism::identity(g_));
    t.trans_inv.emplace_back(Automorphism::identity(g_));
    t.grown.push_back(0);
    t.applied.push_back(0);
    top_.push_back(std::move(t));
  }
}

FpVector AutomorphismChain::signature(const Automorphism& a, const Level& level) const {
  FpVector sig;
  sig.reserve(d_ * (level.end - level.begin));
  for (std::size_t j = 0; j < d_; ++j) {
    const PcElement delta = g_->multiply(g_->inverse(g_->generator(j)), a.images()[j]);
    for (std::size_t k = level.begin; k < level.end; ++k) sig.push_back(delta[k]);
  }
  return sig;
}

bool AutomorphismChain::sift_kernel(Automorphism k) {
  const unsigned p = g_->prime();
  for (Level& lv : levels_) {
    FpVector sig = signature(k, lv);
    for (std::size_t r = 0; r < lv.rows.size(); ++r) {
      const unsigned c = sig[lv.pivots[r]];
      if (c == 0) continue;
      for (std::size_t t = 0; t < sig.size(); ++t)
        sig[t] = static_cast<std::uint8_t>((sig[t] + (p - c) * lv.rows[r][t]) % p);
      k = k.then(lv.elements[r].power(p - c));
    }
    std::size_t lead = 0;
    while (lead < sig.size() && sig[lead] == 0) ++lead;
    if (lead == sig.size()) continue;
    const unsigned inv = fp_inverse(sig[lead], p);
    for (auto& v : sig) v = static_cast<std::uint8_t>(v * inv % p);
    lv.rows.push_back(sig);
    lv.pivots.push_back(lead);
    lv.elements.push_back(k.power(inv));
    return true;
  }
  if (!k.is_identity()) throw StructuralError("automorphism chain lost an element");
  return false;
}

const Automorphism& AutomorphismChain::transversal_inverse(std::size_t level, std::size_t point) {
  TopLevel& t = top_[level];
  if (!t.trans_inv[point]) t.trans_inv[point] = t.trans[point].inverse();
  return *t.trans_inv[point];
}

bool AutomorphismChain::sift_top(Automorphism a, std::size_t from) {
  for (std::size_t l = from; l < d_; ++l) {
    const FpVector pt = a.top_matrix().apply_row(top_[l].base);
    const auto it = top_[l].index.find(vector_key(pt));
    if (it == top_[l].index.end()) {
      const FpMatrix m = a.top_matrix();
      for (std::size_t j = 0; j <= l; ++j) {
        top_[j].gens.push_back(a);
        top_[j].mats.push_back(m);
        extend_orbit(j);
      }
      return true;
    }
    a = a.then(transversal_inverse(l, it->second));
  }
  return sift_kernel(std::move(a));
}

void AutomorphismChain::extend_orbit(std::size_t level) {
  TopLevel& t = top_[level];
  for (std::size_t k = 0; k < t.orbit.size(); ++k)
    while (t.grown[k] < t.gens.size()) {
      const std::size_t gi = t.grown[k]++;
      const FpVector pt = t.mats[gi].apply_row(t.orbit[k]);
      const std::string key = vector_key(pt);
      if (t.index.count(key)) continue;
      t.index[key] = t.orbit.size();
      t.orbit.push_back(pt);
      t.trans.push_back(t.trans[k].then(t.gens[gi]));
      t.trans_inv.emplace_back();
      t.grown.push_back(0);
      t.applied.push_back(0);
    }
}

// Schreier-Sims: every orbit point meets every strong generator once.
void AutomorphismChain::complete_top() {
  bool pending = true;
  while (pending) {
    pending = false;
    for (std::size_t l = 0; l < d_; ++l)
      for (std::size_t k = 0; k < top_[l].orbit.size(); ++k)
        while (top_[l].applied[k] < top_[l].gens.size()) {
          pending = true;
          const std::size_t gi = top_[l].applied[k]++;
          const FpVector pt = top_[l].mats[gi].apply_row(top_[l].orbit[k]);
          const std::size_t target = top_[l].index.at(vector_key(pt));
          Automorphism s = top_[l].trans[k].then(top_[l].gens[gi]);
          sift_top(s.then(transversal_inverse(l, target)), l + 1);
        }
  }
}

bool AutomorphismChain::add(const Automorphism& a) {
  const BigInt before = order();
  sift_top(a, 0);
  complete_top();
  return order() != before;
}

void AutomorphismChain::close() {
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Automorphism> kernel;
    for (const Level& lv : levels_)
      kernel.insert(kernel.end(), lv.elements.begin(), lv.elements.end());
    for (const Automorphism& b : kernel) {
      grew |= sift_kernel(b.power(g_->prime()));
      const Automorphism binv = b.inverse();
      for (const Automorphism& c : kernel)
        grew |= sift_kernel(binv.then(c.inverse()).then(b).then(c));
      if (d_ > 0)
        for (const Automorphism& s : top_[0].gens) grew |= sift_kernel(s.inverse().then(b).then(s));
    }
  }
}

BigInt AutomorphismChain::order() const {
  BigInt o = 1;
  for (const TopLevel& t : top_) o *= t.orbit.size();
  for (const Level& lv : levels_)
    for (std::size_t r = 0; r < lv.rows.size(); ++r) o *= g_->prime();
  return o;
}

std::vector<Automorphism> AutomorphismChain::generators() const {
  std::vector<Automorphism> out;
  if (d_ > 0) out = top_[0].gens;
  for (const Level& lv : levels_) out.insert(out.end(), lv.elements.begin(), lv.elements.end());
  return out;
}

}  // namespace pgg
