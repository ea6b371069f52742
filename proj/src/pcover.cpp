#include "pgg/pcover.hpp"

#include "pgg/error.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <unordered_map>

namespace pgg {

namespace {

// A relation of a pc presentation: g_a^p (b unused) or g_a^{g_b}.
struct Relation {
  Definition::Kind kind;
  std::size_t a, b;
  unsigned weight;
};

std::vector<Relation> relations_of(const PcPresentation& g) {
  std::vector<Relation> out;
  for (std::size_t i = 0; i < g.size(); ++i)
    out.push_back({Definition::Kind::power, i, 0, g.weight(i) + 1});
  for (std::size_t j = 0; j < g.size(); ++j)
    for (std::size_t i = 0; i < j; ++i)
      out.push_back({Definition::Kind::conjugate, j, i, g.weight(j) + g.weight(i)});
  return out;
}

bool defines(const PcPresentation& g, const Relation& r) {
  for (std::size_t k = g.rank(); k < g.size(); ++k) {
    const Definition& d = g.definition(k);
    if (d.kind != r.kind) continue;
    if (d.kind == Definition::Kind::power && d.a == r.a) return true;
    if (d.kind == Definition::Kind::conjugate && d.a == r.a && d.b == r.b) return true;
  }
  return false;
}

PcElement relation_rhs(const PcPresentation& g, const Relation& r) {
  return r.kind == Definition::Kind::power ? g.power(r.a) : g.conjugate_relation(r.a, r.b);
}

void set_relation(PcPresentation& g, const Relation& r, const PcElement& rhs) {
  if (r.kind == Definition::Kind::power)
    g.set_power(r.a, rhs);
  else
    g.set_conjugate(r.a, r.b, rhs);
}

Definition definition_of(const Relation& r) {
  Definition d;
  d.kind = r.kind;
  d.a = r.a;
  d.b = r.kind == Definition::Kind::conjugate ? r.b : 0;
  return d;
}

FpVector slice(const PcElement& x, std::size_t begin, std::size_t end) {
  return FpVector(x.exponents().begin() + static_cast<std::ptrdiff_t>(begin),
                  x.exponents().begin() + static_cast<std::ptrdiff_t>(end));
}

PcElement join(const PcElement& head, const FpVector& tail) {
  PcElement x = head.padded(head.size() + tail.size());
  for (std::size_t k = 0; k < tail.size(); ++k) x[head.size() + k] = tail[k];
  return x;
}

std::vector<std::size_t> free_columns(const Subspace& u) {
  std::vector<bool> piv(u.ambient_dim(), false);
  for (std::size_t c : u.pivots()) piv[c] = true;
  std::vector<std::size_t> out;
  for (std::size_t c = 0; c < u.ambient_dim(); ++c)
    if (!piv[c]) out.push_back(c);
  return out;
}

// Coordinates of v on the free columns of u after reduction.
FpVector reduce_onto_free(const Subspace& u, const std::vector<std::size_t>& free,
                          const FpVector& v) {
  const FpVector r = u.reduce(v);
  FpVector out;
  out.reserve(free.size());
  for (std::size_t c : free) out.push_back(r[c]);
  return out;
}

// Left kernel {v : v * m = 0}.
Subspace left_kernel(const FpMatrix& m) {
  const unsigned p = m.prime();
  const std::size_t r = m.rows(), c = m.cols();
  FpMatrix aug(p, r, c + r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) aug.set(i, j, m.at(i, j));
    aug.set(i, c + i, 1);
  }
  const Echelon e = rref(aug);
  FpMatrix basis(p, 0, r);
  for (std::size_t i = 0; i < e.pivots.size(); ++i) {
    if (e.pivots[i] < c) continue;
    FpVector v(r);
    for (std::size_t j = 0; j < r; ++j) v[j] = static_cast<std::uint8_t>(e.matrix.at(i, c + j));
    basis.append_row(v);
  }
  return Subspace::spanned_by(basis);
}

}  // namespace

Subspace PCoverData::multiplicator() const { return Subspace::whole(base->prime(), mult_rank); }

Subspace PCoverData::nucleus() const {
  return Subspace::coordinate(base->prime(), mult_rank, mult_rank - nuclear_rank, nuclear_rank);
}

FpVector PCoverData::tail_part(const PcElement& x) const {
  const std::size_t n = base->size();
  for (std::size_t k = 0; k < n; ++k)
    if (x[k]) throw StructuralError("element does not lie in the multiplicator");
  return slice(x, n, n + mult_rank);
}

// --- p-cover ----------------------------------------------------------------

PCoverData p_cover(std::shared_ptr<const PcPresentation> gp) {
  const PcPresentation& g = *gp;
  const std::string bad = weighted_violation(g);
  if (!bad.empty()) throw StructuralError("p-cover needs a weighted presentation: " + bad);
  const std::size_t n = g.size();
  const unsigned p = g.prime(), c = n == 0 ? 0 : g.p_class();

  // Tailed relations ordered in blocks: ordinary, forced trivial, nucleus.
  std::vector<Relation> block[3];
  for (const Relation& r : relations_of(g)) {
    if (defines(g, r)) continue;
    int b = 0;
    if (r.kind == Definition::Kind::conjugate && r.weight > c + 1)
      b = 1;
    else if (r.weight == c + 1)
      b = 2;
    block[b].push_back(r);
  }
  std::vector<Relation> tailed;
  for (auto& bl : block) tailed.insert(tailed.end(), bl.begin(), bl.end());
  const std::size_t t = tailed.size();
  const std::size_t forced_begin = block[0].size(), forced_end = forced_begin + block[1].size();
  const std::size_t nucleus_begin = forced_end;

  PcPresentation ext(p, n + t);
  for (const Relation& r : relations_of(g)) set_relation(ext, r, relation_rhs(g, r).padded(n + t));
  for (std::size_t k = 0; k < t; ++k) {
    PcElement rhs = relation_rhs(g, tailed[k]).padded(n + t);
    rhs[n + k] = 1;
    set_relation(ext, tailed[k], rhs);
  }

  FpMatrix rel(p, 0, t);
  for_each_consistency_test(
      ext,
      [&](const std::string& test, const PcElement& u, const PcElement& v) {
        for (std::size_t k = 0; k < n; ++k)
          if (u[k] != v[k]) throw StructuralError("group is inconsistent at " + test);
        FpVector row(t);
        for (std::size_t k = 0; k < t; ++k) row[k] = static_cast<std::uint8_t>((u[n + k] + p - v[n + k]) % p);
        if (std::any_of(row.begin(), row.end(), [](std::uint8_t x) { return x != 0; }))
          rel.append_row(row);
      },
      nullptr, n);
  const Subspace rows = Subspace::spanned_by(rel);
  const std::vector<std::size_t> free = free_columns(rows);
  for (std::size_t col : free)
    if (col >= forced_begin && col < forced_end)
      throw StructuralError("tail of a relation beyond class c + 1 survived");

  const std::size_t m = free.size();
  std::vector<std::size_t> coord(t, m);
  for (std::size_t x = 0; x < m; ++x) coord[free[x]] = x;

  PCoverData out;
  out.base = gp;
  out.mult_rank = m;
  out.nuclear_rank = static_cast<std::size_t>(
      std::count_if(free.begin(), free.end(), [&](std::size_t col) { return col >= nucleus_begin; }));

  // Tail of each relation in multiplicator coordinates.
  std::vector<FpVector> tail(t, FpVector(m, 0));
  for (std::size_t k = 0; k < t; ++k) {
    if (coord[k] < m) {
      tail[k][coord[k]] = 1;
      continue;
    }
    const std::size_t r = static_cast<std::size_t>(
        std::find(rows.pivots().begin(), rows.pivots().end(), k) - rows.pivots().begin());
    for (std::size_t x = 0; x < m; ++x)
      tail[k][x] = static_cast<std::uint8_t>((p - rows.basis().at(r, free[x])) % p);
  }

  auto cover = std::make_shared<PcPresentation>(p, n + m);
  for (std::size_t k = 0; k < n; ++k) {
    cover->set_weight(k, g.weight(k));
    cover->set_definition(k, g.definition(k));
  }
  for (std::size_t x = 0; x < m; ++x) {
    cover->set_weight(n + x, c + 1);
    cover->set_definition(n + x, definition_of(tailed[free[x]]));
    out.tail_definitions.push_back(definition_of(tailed[free[x]]));
  }
  for (const Relation& r : relations_of(g)) set_relation(*cover, r, relation_rhs(g, r).padded(n + m));
  for (std::size_t k = 0; k < t; ++k)
    set_relation(*cover, tailed[k], join(relation_rhs(g, tailed[k]), tail[k]));
  out.cover = cover;
  out.projection = Homomorphism::truncation(cover, gp);
  return out;
}

FpMatrix multiplicator_action(const PCoverData& cover, const Automorphism& a) {
  const PcPresentation& g = *cover.base;
  const PcPresentation& cv = *cover.cover;
  const std::size_t n = g.size(), m = cover.mult_rank;
  std::vector<PcElement> lift;
  for (const PcElement& x : a.rank_images()) lift.push_back(x.padded(n + m));
  const auto img = extend_along_definitions(cv, cv, lift);
  FpMatrix out(g.prime(), m, m);
  for (std::size_t x = 0; x < m; ++x) {
    const FpVector v = cover.tail_part(img[n + x]);
    for (std::size_t y = 0; y < m; ++y) out.set(x, y, v[y]);
  }
  return out;
}

std::vector<FpMatrix> aut_action_on_multiplicator(const PCoverData& cover,
                                                  const std::vector<Automorphism>& auts) {
  std::vector<FpMatrix> out;
  out.reserve(auts.size());
  for (const Automorphism& a : auts) out.push_back(multiplicator_action(cover, a));
  return out;
}

// --- quotients --------------------------------------------------------------

PcPresentation cover_quotient(const PCoverData& cover, const Subspace& u) {
  const PcPresentation& g = *cover.base;
  const PcPresentation& cv = *cover.cover;
  const std::size_t n = g.size(), m = cover.mult_rank;
  if (u.ambient_dim() != m) throw StructuralError("subspace is not in the multiplicator");
  const std::size_t outside = m - cover.nuclear_rank;
  for (std::size_t k = 0; k < outside; ++k)
    if (std::find(u.pivots().begin(), u.pivots().end(), k) == u.pivots().end())
      throw StructuralError("subspace is not allowable: U + N is not the multiplicator");
  const std::vector<std::size_t> free = free_columns(u);
  const std::size_t s = free.size();
  const unsigned c = n == 0 ? 0 : g.p_class();

  PcPresentation q(g.prime(), n + s);
  for (std::size_t k = 0; k < n; ++k) {
    q.set_weight(k, g.weight(k));
    q.set_definition(k, g.definition(k));
  }
  for (std::size_t x = 0; x < s; ++x) {
    q.set_weight(n + x, c + 1);
    q.set_definition(n + x, cover.tail_definitions[free[x]]);
  }
  for (const Relation& r : relations_of(g)) {
    const PcElement rhs = relation_rhs(cv, r);
    set_relation(q, r, join(rhs.truncated(n), reduce_onto_free(u, free, slice(rhs, n, n + m))));
  }
  return q;
}

PcElement reduce_to_quotient(const PCoverData& cover, const Subspace& u,
                             const PcPresentation& quotient, const PcElement& x) {
  const std::size_t n = cover.base->size();
  const PcElement y =
      join(x.truncated(n), reduce_onto_free(u, free_columns(u), slice(x, n, n + cover.mult_rank)));
  if (y.size() != quotient.size()) throw StructuralError("quotient does not match the subspace");
  return y;
}

// --- orbits and stabilizers -------------------------------------------------

namespace {

struct Orbit {
  std::vector<Subspace> points;
  std::vector<std::size_t> parent, via;      // spanning tree
  std::vector<std::vector<std::size_t>> act;  // act[k][a]: index of points[k] * A_a
  std::unordered_map<std::string, std::size_t> index;
};

Orbit orbit_of(const Subspace& u, const std::vector<FpMatrix>& mats) {
  Orbit o;
  o.points.push_back(u);
  o.parent.push_back(0);
  o.via.push_back(0);
  o.index[u.key()] = 0;
  for (std::size_t k = 0; k < o.points.size(); ++k) {
    std::vector<std::size_t> row;
    row.reserve(mats.size());
    for (std::size_t a = 0; a < mats.size(); ++a) {
      Subspace w = o.points[k].image(mats[a]);
      const std::string key = w.key();
      auto it = o.index.find(key);
      if (it == o.index.end()) {
        it = o.index.emplace(key, o.points.size()).first;
        o.points.push_back(std::move(w));
        o.parent.push_back(k);
        o.via.push_back(a);
      }
      row.push_back(it->second);
    }
    o.act.push_back(std::move(row));
  }
  return o;
}

AutomorphismGroup stabilizer_from_orbit(std::shared_ptr<const PcPresentation> g,
                                        const AutomorphismGroup& auts, const Orbit& o) {
  const BigInt size = o.points.size();
  if (auts.order % size != 0)
    throw StructuralError("orbit length does not divide the automorphism group order");
  AutomorphismGroup out;
  out.order = auts.order / size;
  AutomorphismChain chain(g);
  if (out.order == 1) return out;

  std::vector<std::optional<Automorphism>> trans(o.points.size()), trans_inv(o.points.size());
  trans[0] = Automorphism::identity(g);
  trans_inv[0] = trans[0];
  // Tree parents always precede their children.
  auto transversal = [&](std::size_t k) -> const Automorphism& {
    if (!trans[k]) {
      std::vector<std::size_t> path;
      std::size_t x = k;
      while (!trans[x]) {
        path.push_back(x);
        x = o.parent[x];
      }
      for (auto it = path.rbegin(); it != path.rend(); ++it)
        trans[*it] = trans[o.parent[*it]]->then(auts.generators[o.via[*it]]);
    }
    return *trans[k];
  };
  auto transversal_inv = [&](std::size_t k) -> const Automorphism& {
    if (!trans_inv[k]) trans_inv[k] = transversal(k).inverse();
    return *trans_inv[k];
  };

  for (std::size_t k = 0; k < o.points.size() && chain.order() < out.order; ++k)
    for (std::size_t a = 0; a < auts.generators.size() && chain.order() < out.order; ++a) {
      const std::size_t l = o.act[k][a];
      if (l != 0 && o.parent[l] == k && o.via[l] == a && l > k) continue;
      chain.add(transversal(k).then(auts.generators[a]).then(transversal_inv(l)));
    }
  if (chain.order() < out.order) chain.close();
  if (chain.order() != out.order)
    throw StructuralError("stabilizer order " + chain.order().str() + " differs from expected " +
                          out.order.str());
  out.generators = chain.generators();
  return out;
}

std::vector<PcElement> padded_rank_images(const Automorphism& a, std::size_t n) {
  std::vector<PcElement> out;
  for (const PcElement& x : a.rank_images()) out.push_back(x.padded(n));
  return out;
}

// Automorphisms g_i -> g_i z for z among the generators from `first` on.
void add_central_automorphisms(std::shared_ptr<const PcPresentation> q, std::size_t first,
                               AutomorphismGroup& out) {
  const std::size_t d = q->rank();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t t = first; t < q->size(); ++t) {
      std::vector<PcElement> imgs;
      for (std::size_t j = 0; j < d; ++j) imgs.push_back(q->generator(j));
      q->multiply_generator(imgs[i], t);
      out.generators.push_back(Automorphism::from_images(q, imgs, false));
      out.order *= q->prime();
    }
}

}  // namespace

AutomorphismGroup subspace_stabilizer(const PCoverData& cover, const AutomorphismGroup& auts,
                                      const Subspace& u) {
  const auto mats = aut_action_on_multiplicator(cover, auts.generators);
  return stabilizer_from_orbit(cover.base, auts, orbit_of(u, mats));
}

std::vector<DescendantRecord> immediate_descendants(const PCoverData& cover,
                                                    const AutomorphismGroup& auts,
                                                    const DescendantOptions& options) {
  std::vector<DescendantRecord> out;
  const std::size_t m = cover.mult_rank, nu = cover.nuclear_rank;
  const unsigned p = cover.base->prime();
  if (nu == 0) return out;
  const auto mats = aut_action_on_multiplicator(cover, auts.generators);
  const Subspace nucleus = cover.nucleus();
  for (std::size_t step = 1; step <= std::min(nu, options.max_step); ++step) {
    const unsigned long long count = count_tail_supplements(p, m, nu, step);
    if (count > options.orbit_cap) throw OrbitCapExceeded(options.node_id, count, options.orbit_cap);
    const std::vector<Subspace> all = enumerate_supplements(m, nucleus, step);
    std::unordered_map<std::string, std::size_t> where;
    for (std::size_t k = 0; k < all.size(); ++k) where[all[k].key()] = k;
    std::vector<bool> seen(all.size(), false);
    for (std::size_t k = 0; k < all.size(); ++k) {
      if (seen[k]) continue;
      const Orbit o = orbit_of(all[k], mats);
      for (const Subspace& w : o.points) {
        const auto it = where.find(w.key());
        if (it == where.end()) throw StructuralError("automorphism moved an allowable subspace out");
        seen[it->second] = true;
      }
      const AutomorphismGroup stab = stabilizer_from_orbit(cover.base, auts, o);
      DescendantRecord rec;
      rec.allowable = all[k];
      rec.quotient = std::make_shared<PcPresentation>(cover_quotient(cover, all[k]));
      rec.step = step;
      rec.orbit_size = o.points.size();
      rec.stabilizer = stab.generators;
      rec.stabilizer_order = stab.order;
      rec.projection = Homomorphism::truncation(rec.quotient, cover.base);
      out.push_back(std::move(rec));
    }
  }
  return out;
}

std::vector<DescendantRecord> immediate_descendants(std::shared_ptr<const PcPresentation> g,
                                                    const AutomorphismGroup& auts,
                                                    const DescendantOptions& options) {
  return immediate_descendants(p_cover(std::move(g)), auts, options);
}

AutomorphismGroup propagate_automorphisms(const DescendantRecord& d) {
  const auto q = d.quotient;
  AutomorphismGroup out;
  out.order = d.stabilizer_order;
  const std::size_t parent_size = q->size() - d.step;
  for (const Automorphism& a : d.stabilizer)
    out.generators.push_back(Automorphism::from_images(q, padded_rank_images(a, q->size()), false));
  add_central_automorphisms(q, parent_size, out);
  return out;
}

PcPresentation class_quotient(const PcPresentation& g, unsigned c) {
  std::size_t k = 0;
  while (k < g.size() && g.weight(k) <= c) ++k;
  PcPresentation q(g.prime(), k);
  for (std::size_t i = 0; i < k; ++i) {
    q.set_weight(i, g.weight(i));
    q.set_definition(i, g.definition(i));
    q.set_power(i, g.power(i).truncated(k));
    for (std::size_t j = i + 1; j < k; ++j) q.set_conjugate(j, i, g.conjugate_relation(j, i).truncated(k));
  }
  return q;
}

namespace {

// Kernel of the map from the multiplicator of G_k to the last layer of
// `next`, where the cover is sent onto `next` by the given rank images.
Subspace cover_kernel(const PCoverData& cover, const PcPresentation& next,
                      const std::vector<PcElement>& rank_images, std::vector<PcElement>* images) {
  const auto img = extend_along_definitions(*cover.cover, next, rank_images);
  const std::size_t nk = cover.base->size(), s = next.size() - nk, m = cover.mult_rank;
  FpMatrix onto(next.prime(), m, s);
  for (std::size_t x = 0; x < m; ++x) {
    const PcElement& y = img[nk + x];
    for (std::size_t t = 0; t < nk; ++t)
      if (y[t]) throw StructuralError("multiplicator does not map into the last layer");
    for (std::size_t t = 0; t < s; ++t) onto.set(x, t, y[nk + t]);
  }
  Subspace kernel = left_kernel(onto);
  if (kernel.codim() != s) throw StructuralError("class quotient is not a quotient of the cover");
  if (images) *images = img;
  return kernel;
}

// Aut(G*/U) from Aut(G) and the stabilizer of U.
AutomorphismGroup lift_stabilizer(const AutomorphismGroup& stab,
                                  std::shared_ptr<const PcPresentation> next, std::size_t nk) {
  AutomorphismGroup lifted;
  lifted.order = stab.order;
  for (const Automorphism& a : stab.generators)
    lifted.generators.push_back(
        Automorphism::from_images(next, padded_rank_images(a, next->size()), false));
  add_central_automorphisms(next, nk, lifted);
  return lifted;
}

std::shared_ptr<const PcPresentation> elementary_abelian(unsigned p, std::size_t d) {
  auto e = std::make_shared<PcPresentation>(p, d);
  for (std::size_t i = 0; i < d; ++i) e->set_weight(i, 1);
  return e;
}

}  // namespace

AutomorphismGroup automorphism_group(std::shared_ptr<const PcPresentation> g) {
  const std::string bad = weighted_violation(*g);
  if (!bad.empty()) throw StructuralError("automorphism group needs a weighted presentation: " + bad);
  const std::size_t d = g->rank();
  const unsigned c = g->size() == 0 ? 0 : g->p_class();
  std::shared_ptr<const PcPresentation> gk = std::make_shared<PcPresentation>(class_quotient(*g, 1));
  AutomorphismGroup auts = elementary_abelian_automorphisms(gk);
  for (unsigned k = 1; k < c; ++k) {
    const PCoverData cover = p_cover(gk);
    auto next = std::make_shared<PcPresentation>(class_quotient(*g, k + 1));
    std::vector<PcElement> gens;
    for (std::size_t i = 0; i < d; ++i) gens.push_back(next->generator(i));
    const Subspace kernel = cover_kernel(cover, *next, gens, nullptr);
    auts = lift_stabilizer(subspace_stabilizer(cover, auts, kernel), next, gk->size());
    gk = next;
  }
  AutomorphismGroup out;
  out.order = auts.order;
  for (const Automorphism& a : auts.generators)
    out.generators.push_back(Automorphism::from_images(g, a.rank_images(), false));
  return out;
}

PcPresentation standard_presentation(std::shared_ptr<const PcPresentation> g) {
  const std::string bad = weighted_violation(*g);
  if (!bad.empty()) throw StructuralError("standard presentation needs a weighted presentation: " + bad);
  const std::size_t d = g->rank();
  const unsigned c = g->size() == 0 ? 0 : g->p_class();
  std::shared_ptr<const PcPresentation> ck = elementary_abelian(g->prime(), d);
  AutomorphismGroup auts = elementary_abelian_automorphisms(ck);
  // Images in G of the rank generators of the standard quotient C_k.
  std::vector<PcElement> rank_images;
  for (std::size_t i = 0; i < d; ++i) rank_images.push_back(g->generator(i));
  for (unsigned k = 1; k < c; ++k) {
    const PCoverData cover = p_cover(ck);
    const PcPresentation next = class_quotient(*g, k + 1);
    std::vector<PcElement> lifted_images;
    for (const PcElement& x : rank_images) lifted_images.push_back(x.truncated(next.size()));
    std::vector<PcElement> onto;
    const Subspace u = cover_kernel(cover, next, lifted_images, &onto);

    // Least point of the orbit and an automorphism t with U t = U_min.
    const auto mats = aut_action_on_multiplicator(cover, auts.generators);
    const Orbit o = orbit_of(u, mats);
    std::size_t least = 0;
    for (std::size_t j = 1; j < o.points.size(); ++j)
      if (o.points[j] < o.points[least]) least = j;
    std::vector<std::size_t> path;
    for (std::size_t x = least; x != 0; x = o.parent[x]) path.push_back(o.via[x]);
    Automorphism t = Automorphism::identity(ck);
    for (auto it = path.rbegin(); it != path.rend(); ++it) t = t.then(auts.generators[*it]);

    auto canonical = std::make_shared<PcPresentation>(cover_quotient(cover, o.points[least]));
    // Rank generator j of the new quotient goes to psi(t^-1(g_j)).
    const Automorphism back = t.inverse();
    std::vector<PcElement> next_images;
    for (const PcElement& w : back.rank_images()) {
      PcElement y = next.identity();
      const PcElement lift = w.padded(cover.cover->size());
      for (std::size_t i = 0; i < lift.size(); ++i)
        if (lift[i]) next.multiply_in_place(y, next.pow(onto[i], lift[i]));
      next_images.push_back(y.padded(g->size()));
    }
    auts = lift_stabilizer(subspace_stabilizer(cover, auts, o.points[least]), canonical, ck->size());
    ck = canonical;
    rank_images = std::move(next_images);
  }
  // The tracked images must give an isomorphism C_c -> G.
  const auto all = extend_along_definitions(*ck, *g, rank_images);
  if (!respects_relations(*ck, *g, all))
    throw StructuralError("standard presentation: tracked images do not define a homomorphism");
  std::vector<FpVector> tops;
  for (const PcElement& x : rank_images) tops.push_back(FpVector(x.exponents().begin(), x.exponents().begin() + d));
  if (rank(FpMatrix::from_rows(g->prime(), d, tops)) != d)
    throw StructuralError("standard presentation: tracked images do not generate");
  return PcPresentation(*ck);
}

bool isomorphic(std::shared_ptr<const PcPresentation> g, std::shared_ptr<const PcPresentation> h) {
  if (g->prime() != h->prime() || g->size() != h->size()) return false;
  if (g->size() == 0) return true;
  if (g->rank() != h->rank() || g->p_class() != h->p_class()) return false;
  return format_presentation(standard_presentation(g)) == format_presentation(standard_presentation(h));
}

// --- finitely presented groups ----------------------------------------------

namespace {

class FpParser {
 public:
  FpParser(const std::string& s, const std::vector<std::string>& gens) : s_(s), gens_(gens) {}

  Word word() {
    Word w;
    for (;;) {
      skip();
      if (pos_ >= s_.size()) break;
      const char ch = s_[pos_];
      if (ch == '*') {
        ++pos_;
        continue;
      }
      if (ch == ',' || ch == ')' || ch == ']' || ch == '=' || ch == '|' || ch == '>') break;
      Word f = factor();
      w.insert(w.end(), f.begin(), f.end());
    }
    return w;
  }

  bool at_end() {
    skip();
    return pos_ >= s_.size();
  }
  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  void expect(char ch) {
    if (peek() != ch) throw ParseError(std::string("expected '") + ch + "' in \"" + s_ + "\"");
    ++pos_;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  static Word invert(const Word& w) {
    Word r;
    for (auto it = w.rbegin(); it != w.rend(); ++it) r.push_back({it->gen, -it->power});
    return r;
  }

  static Word repeat(const Word& w, long long e) {
    if (w.size() == 1) return {{w[0].gen, w[0].power * e}};
    const Word base = e < 0 ? invert(w) : w;
    Word r;
    for (long long k = 0; k < (e < 0 ? -e : e); ++k) r.insert(r.end(), base.begin(), base.end());
    return r;
  }

  long long exponent() {
    skip();
    std::size_t start = pos_;
    if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    const std::string t = s_.substr(start, pos_ - start);
    if (t.empty() || t == "-" || t == "+") throw ParseError("bad exponent in \"" + s_ + "\"");
    return std::stoll(t);
  }

  Word factor() {
    Word base;
    const char ch = s_[pos_];
    if (ch == '(') {
      ++pos_;
      base = word();
      expect(')');
    } else if (ch == '[') {
      ++pos_;
      const Word a = word();
      expect(',');
      const Word b = word();
      expect(']');
      base = invert(a);
      const Word ib = invert(b);
      base.insert(base.end(), ib.begin(), ib.end());
      base.insert(base.end(), a.begin(), a.end());
      base.insert(base.end(), b.begin(), b.end());
    } else if (ch == '1') {
      ++pos_;
    } else if (std::isalpha(static_cast<unsigned char>(ch))) {
      base = identifier();
    } else {
      throw ParseError(std::string("unexpected '") + ch + "' in \"" + s_ + "\"");
    }
    skip();
    if (pos_ < s_.size() && s_[pos_] == '^') {
      ++pos_;
      return repeat(base, exponent());
    }
    return base;
  }

  // A generator name; a run of single-letter names is split into letters.
  Word identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    std::string name = s_.substr(start, pos_ - start);
    const auto find = [&](const std::string& x) -> std::optional<std::size_t> {
      const auto it = std::find(gens_.begin(), gens_.end(), x);
      if (it == gens_.end()) return std::nullopt;
      return static_cast<std::size_t>(it - gens_.begin());
    };
    if (auto k = find(name)) return {{*k, 1}};
    // Split letters; trailing digits belong to nothing, so reject them.
    Word w;
    for (char ch : name) {
      auto k = find(std::string(1, ch));
      if (!k) throw ParseError("unknown generator '" + name + "'");
      w.push_back({*k, 1});
    }
    // An exponent applies only to the last letter.
    const bool caret = peek() == '^';
    if (caret && w.size() > 1) {
      const Letter last = w.back();
      w.pop_back();
      ++pos_;
      const long long e = exponent();
      w.push_back({last.gen, e});
      return w;
    }
    return w;
  }

  const std::string& s_;
  const std::vector<std::string>& gens_;
  std::size_t pos_ = 0;
};

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(cur);
  return out;
}

Word parse_relator(const std::string& text, const std::vector<std::string>& gens) {
  const auto sides = split_top(text, '=');
  if (sides.size() > 2) throw ParseError("more than one '=' in \"" + text + "\"");
  Word total;
  for (std::size_t s = 0; s < sides.size(); ++s) {
    FpParser parser(sides[s], gens);
    Word w = parser.word();
    if (!parser.at_end()) throw ParseError("trailing text in \"" + sides[s] + "\"");
    if (s == 1) {
      Word inv;
      for (auto it = w.rbegin(); it != w.rend(); ++it) inv.push_back({it->gen, -it->power});
      w = inv;
    }
    total.insert(total.end(), w.begin(), w.end());
  }
  return total;
}

}  // namespace

FpPresentation parse_fp_presentation(const std::string& text) {
  std::string s = trim(text);
  if (s.size() < 2 || s.front() != '<' || s.back() != '>')
    throw ParseError("presentation must be written <generators | relators>");
  s = s.substr(1, s.size() - 2);
  const std::size_t bar = s.find('|');
  FpPresentation f;
  for (const std::string& g : split_top(s.substr(0, bar), ',')) {
    const std::string name = trim(g);
    if (name.empty()) continue;
    if (!std::isalpha(static_cast<unsigned char>(name[0])) ||
        !std::all_of(name.begin(), name.end(),
                     [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; }))
      throw ParseError("bad generator name '" + name + "'");
    if (std::find(f.generators.begin(), f.generators.end(), name) != f.generators.end())
      throw ParseError("duplicate generator '" + name + "'");
    f.generators.push_back(name);
  }
  if (f.generators.empty()) throw ParseError("presentation has no generators");
  if (bar != std::string::npos)
    for (const std::string& r : split_top(s.substr(bar + 1), ',')) {
      if (trim(r).empty()) continue;
      f.relators.push_back(parse_relator(r, f.generators));
    }
  return f;
}

Word parse_fp_word(const std::string& text, const std::vector<std::string>& generators) {
  return parse_relator(text, generators);
}

std::string format_fp_presentation(const FpPresentation& f) {
  std::string out = "<";
  for (std::size_t k = 0; k < f.generators.size(); ++k) {
    if (k) out += ", ";
    out += f.generators[k];
  }
  out += " |";
  for (std::size_t r = 0; r < f.relators.size(); ++r) {
    out += r ? ", " : " ";
    if (f.relators[r].empty()) out += "1";
    for (std::size_t k = 0; k < f.relators[r].size(); ++k) {
      const Letter& l = f.relators[r][k];
      if (k) out += "*";
      out += f.generators.at(l.gen);
      if (l.power != 1) out += "^" + std::to_string(l.power);
    }
  }
  out += ">";
  return out;
}

// --- p-quotient -------------------------------------------------------------

namespace {

PcElement evaluate_word(const PcPresentation& g, const std::vector<PcElement>& img, const Word& w) {
  PcElement x = g.identity();
  for (const Letter& l : w) g.multiply_in_place(x, g.pow(img.at(l.gen), l.power));
  return x;
}

unsigned mod_p(long long v, unsigned p) {
  const long long r = v % static_cast<long long>(p);
  return static_cast<unsigned>(r < 0 ? r + p : r);
}

}  // namespace

PQuotientResult p_quotient(const FpPresentation& f, unsigned p, unsigned max_class) {
  if (!is_prime(p)) throw StructuralError("p = " + std::to_string(p) + " is not prime");
  if (max_class < 1) throw StructuralError("class bound must be at least 1");
  const std::size_t k = f.generators.size();
  FpMatrix sums(p, f.relators.size(), k);
  for (std::size_t r = 0; r < f.relators.size(); ++r) {
    std::vector<long long> e(k, 0);
    for (const Letter& l : f.relators[r]) e.at(l.gen) += l.power;
    for (std::size_t x = 0; x < k; ++x) sums.set(r, x, mod_p(e[x], p));
  }
  const Echelon ech = rref(sums);
  std::vector<std::size_t> pivot_row(k, k);
  for (std::size_t r = 0; r < ech.pivots.size(); ++r) pivot_row[ech.pivots[r]] = r;
  std::vector<std::size_t> free, bound;
  for (std::size_t x = 0; x < k; ++x) (pivot_row[x] == k ? free : bound).push_back(x);
  const std::size_t d = free.size();

  PQuotientResult res;
  auto g = std::make_shared<PcPresentation>(p, d);
  for (std::size_t i = 0; i < d; ++i) g->set_weight(i, 1);
  std::vector<PcElement> images(k, g->identity());
  for (std::size_t t = 0; t < d; ++t) images[free[t]] = g->generator(t);
  for (std::size_t x : bound)
    for (std::size_t t = 0; t < d; ++t) images[x][t] = static_cast<std::uint8_t>((p - ech.matrix.at(pivot_row[x], free[t])) % p);
  res.group = g;
  res.images = images;
  if (d == 0) {
    res.maximal = true;
    return res;
  }

  for (unsigned cls = 1; cls < max_class; ++cls) {
    const PCoverData cover = p_cover(res.group);
    const PcPresentation& cv = *cover.cover;
    const std::size_t n = res.group->size(), m = cover.mult_rank, b = bound.size();
    std::vector<PcElement> lift;
    for (const PcElement& x : res.images) lift.push_back(x.padded(n + m));
    FpMatrix sys(p, 0, b + m);
    for (std::size_t r = 0; r < f.relators.size(); ++r) {
      const FpVector v = cover.tail_part(evaluate_word(cv, lift, f.relators[r]));
      FpVector row(b + m);
      for (std::size_t i = 0; i < b; ++i) row[i] = static_cast<std::uint8_t>(sums.at(r, bound[i]));
      for (std::size_t x = 0; x < m; ++x) row[b + x] = v[x];
      sys.append_row(row);
    }
    const Echelon e = rref(sys);
    FpMatrix kernel_rows(p, 0, m);
    std::vector<FpVector> shift(b, FpVector(m, 0));
    std::size_t solved = 0;
    for (std::size_t r = 0; r < e.pivots.size(); ++r) {
      FpVector w(m);
      for (std::size_t x = 0; x < m; ++x) w[x] = static_cast<std::uint8_t>(e.matrix.at(r, b + x));
      if (e.pivots[r] < b) {
        for (std::size_t x = 0; x < m; ++x) shift[e.pivots[r]][x] = static_cast<std::uint8_t>((p - w[x]) % p);
        ++solved;
      } else {
        kernel_rows.append_row(w);
      }
    }
    if (solved != b) throw StructuralError("exponent-sum system lost a pivot");
    const Subspace u = Subspace::spanned_by(kernel_rows);
    if (u.dim() == m) {
      res.maximal = true;
      return res;
    }
    if (u.sum(cover.nucleus()).dim() != m)
      throw StructuralError("relator subspace is not allowable");
    auto q = std::make_shared<PcPresentation>(cover_quotient(cover, u));
    std::vector<PcElement> next;
    for (std::size_t x = 0; x < k; ++x) {
      PcElement y = lift[x];
      const auto it = std::find(bound.begin(), bound.end(), x);
      if (it != bound.end()) {
        const FpVector& z = shift[static_cast<std::size_t>(it - bound.begin())];
        cv.multiply_in_place(y, join(PcElement(n), z));
      }
      next.push_back(reduce_to_quotient(cover, u, *q, y));
    }
    res.group = q;
    res.images = std::move(next);
  }
  res.maximal = false;
  return res;
}

}  // namespace pgg
