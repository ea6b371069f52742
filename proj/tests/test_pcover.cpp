#include "oracle.hpp"
#include "pgg/error.hpp"
#include "pgg/pcover.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <random>
#include <set>

using namespace pgg;

namespace {

using Group = std::shared_ptr<const PcPresentation>;

Group elementary(unsigned p, std::size_t d) {
  auto g = std::make_shared<PcPresentation>(p, d);
  for (std::size_t i = 0; i < d; ++i) g->set_weight(i, 1);
  return g;
}

Group load(const char* text) { return std::make_shared<const PcPresentation>(parse_presentation(text)); }

const char* kQuaternion8 = R"(group p=2 n=3
g1 ; w=1
g2 ; w=1
g3 ; w=2 def=pow(g1)
g1^2 = g3
g2^2 = g3
g2^g1 = g2*g3
)";

const char* kDihedral8 = R"(group p=2 n=3
g1 ; w=1
g2 ; w=1
g3 ; w=2 def=pow(g2)
g2^2 = g3
g2^g1 = g2*g3
)";

const char* kSemidihedral16 = R"(group p=2 n=4
g1 ; w=1
g2 ; w=1
g3 ; w=2 def=pow(g2)
g4 ; w=3 def=pow(g3)
g2^2 = g3
g3^2 = g4
g2^g1 = g2*g3
g3^g1 = g3*g4
)";

const char* kHeisenberg27 = R"(group p=3 n=3
g1 ; w=1
g2 ; w=1
g3 ; w=2 def=comm(g2,g1)
g2^g1 = g2*g3
)";

const char* kCyclic4 = R"(group p=2 n=2
g1 ; w=1
g2 ; w=2 def=pow(g1)
g1^2 = g2
)";

// Automorphisms counted by trying every tuple of images of the weight-1
// generators in the Cayley table.
long long brute_force_aut_order(const PcPresentation& g) {
  const oracle::Table t = oracle::from_pc(g);
  const int n = t.order();
  std::vector<int> gens;
  for (std::size_t i = 0; i < g.rank(); ++i) gens.push_back(oracle::pc_index(g, g.generator(i)));
  std::vector<int> images(gens.size());
  long long count = 0;
  std::function<void(std::size_t)> go = [&](std::size_t k) {
    if (k < gens.size()) {
      for (int y = 0; y < n; ++y) {
        images[k] = y;
        go(k + 1);
      }
      return;
    }
    std::vector<int> map(n, -1);
    map[t.identity] = t.identity;
    std::vector<int> todo{t.identity};
    while (!todo.empty()) {
      const int x = todo.back();
      todo.pop_back();
      for (std::size_t i = 0; i < gens.size(); ++i) {
        const int y = t.mul[x][gens[i]], fy = t.mul[map[x]][images[i]];
        if (map[y] == -1) {
          map[y] = fy;
          todo.push_back(y);
        } else if (map[y] != fy) {
          return;
        }
      }
    }
    std::vector<bool> hit(n, false);
    for (int x = 0; x < n; ++x) {
      if (map[x] < 0 || hit[map[x]]) return;
      hit[map[x]] = true;
    }
    ++count;
  };
  go(0);
  return count;
}

bool is_cyclic(const oracle::Table& t) {
  for (int x = 0; x < t.order(); ++x)
    if (t.element_order(x) == t.order()) return true;
  return false;
}

// Isomorphism classes of all groups G*/U, U allowable of codimension step,
// by brute force.
std::size_t brute_force_descendant_count(const PCoverData& cover, std::size_t step) {
  const unsigned p = cover.base->prime();
  const Subspace n = cover.nucleus();
  std::vector<oracle::Table> classes;
  for (const Subspace& u : enumerate_subspaces(p, cover.mult_rank, cover.mult_rank - step)) {
    if (u.sum(n).dim() != cover.mult_rank) continue;
    const oracle::Table t = oracle::from_pc(cover_quotient(cover, u));
    bool known = false;
    for (const oracle::Table& c : classes)
      if (oracle::isomorphic(c, t)) {
        known = true;
        break;
      }
    if (!known) classes.push_back(t);
  }
  return classes.size();
}

// Counts the groups of order p^k for k <= max_exp by walking the descendant
// trees of the elementary abelian groups.
std::map<std::size_t, std::size_t> tree_counts(unsigned p, std::size_t max_exp) {
  std::map<std::size_t, std::size_t> counts;
  struct Node {
    Group g;
    AutomorphismGroup auts;
  };
  for (std::size_t d = 1; d <= max_exp; ++d) {
    const Group root = elementary(p, d);
    std::vector<Node> todo{{root, elementary_abelian_automorphisms(root)}};
    while (!todo.empty()) {
      Node node = todo.back();
      todo.pop_back();
      ++counts[node.g->size()];
      if (node.g->size() == max_exp) continue;
      const PCoverData cover = p_cover(node.g);
      DescendantOptions opt;
      opt.max_step = max_exp - node.g->size();
      for (const DescendantRecord& rec : immediate_descendants(cover, node.auts, opt)) {
        todo.push_back({rec.quotient, propagate_automorphisms(rec)});
      }
    }
  }
  return counts;
}

}  // namespace

TEST(PCover, ElementaryAbelianMultiplicatorRanks) {
  for (unsigned p : {2u, 3u, 5u})
    for (std::size_t d = 1; d <= 4; ++d) {
      if (p == 5 && d > 3) continue;
      const PCoverData c = p_cover(elementary(p, d));
      EXPECT_EQ(c.mult_rank, d * (d + 1) / 2) << "p=" << p << " d=" << d;
      EXPECT_EQ(c.nuclear_rank, d * (d + 1) / 2);
      EXPECT_TRUE(is_consistent(*c.cover));
      EXPECT_EQ(c.cover->size(), d + c.mult_rank);
    }
}

TEST(PCover, CoverIsConsistentAndProjects) {
  for (const char* text : {kQuaternion8, kDihedral8, kSemidihedral16, kHeisenberg27, kCyclic4}) {
    const Group g = load(text);
    const PCoverData c = p_cover(g);
    EXPECT_TRUE(is_consistent(*c.cover));
    EXPECT_EQ(c.cover->size(), g->size() + c.mult_rank);
    EXPECT_EQ(c.cover->rank(), g->rank());
    // Brute force: the cover has rank d and maps onto G with central elementary kernel.
    if (c.cover->size() <= 7 && g->prime() == 2) {
      const oracle::Table t = oracle::from_pc(*c.cover);
      EXPECT_TRUE(oracle::associative(t));
      EXPECT_EQ(oracle::frattini_rank(t, g->prime()), static_cast<int>(g->rank()));
    }
    for (std::size_t x = 0; x < c.mult_rank; ++x) {
      const PcElement z = c.cover->generator(g->size() + x);
      for (std::size_t k = 0; k < c.cover->size(); ++k)
        EXPECT_EQ(c.cover->commutator(z, c.cover->generator(k)), c.cover->identity());
      EXPECT_TRUE(c.projection.apply(z).is_identity());
    }
  }
}

TEST(PCover, SemidihedralIsTerminal) {
  const PCoverData c = p_cover(load(kSemidihedral16));
  EXPECT_EQ(c.mult_rank, 2u);
  EXPECT_EQ(c.nuclear_rank, 0u);
  const Group g = load(kSemidihedral16);
  EXPECT_TRUE(immediate_descendants(g, automorphism_group(g)).empty());
}

TEST(PCover, CyclicTwoHasOneDescendantOfOrderFour) {
  const Group g = elementary(2, 1);
  const auto ds = immediate_descendants(g, elementary_abelian_automorphisms(g));
  ASSERT_EQ(ds.size(), 1u);
  const oracle::Table t = oracle::from_pc(*ds[0].quotient);
  EXPECT_EQ(t.order(), 4);
  EXPECT_TRUE(is_cyclic(t));
  EXPECT_EQ(weighted_violation(*ds[0].quotient), "");
}

TEST(PCover, KleinFourDescendantsOfOrderEight) {
  const Group g = elementary(2, 2);
  const auto ds = immediate_descendants(g, elementary_abelian_automorphisms(g));
  std::vector<oracle::Table> eight;
  for (const auto& d : ds)
    if (d.step == 1) eight.push_back(oracle::from_pc(*d.quotient));
  ASSERT_EQ(eight.size(), 3u);
  const oracle::Table c4c2 = oracle::from_permutations({{1, 2, 3, 0, 4, 5}, {0, 1, 2, 3, 5, 4}});
  const oracle::Table d8 = oracle::from_permutations({{1, 2, 3, 0}, {0, 3, 2, 1}});
  const oracle::Table q8 = oracle::from_permutations({{1, 4, 7, 2, 5, 0, 3, 6}, {2, 3, 4, 5, 6, 7, 0, 1}});
  for (const oracle::Table* want : {&c4c2, &d8, &q8}) {
    int hits = 0;
    for (const auto& t : eight) hits += oracle::isomorphic(t, *want);
    EXPECT_EQ(hits, 1);
  }
}

TEST(PCover, DescendantsMatchBruteForceQuotients) {
  std::vector<std::pair<Group, AutomorphismGroup>> cases;
  for (auto [p, d] : {std::pair{2u, 1u}, {2u, 2u}, {2u, 3u}, {3u, 1u}, {3u, 2u}}) {
    const Group g = elementary(p, d);
    cases.emplace_back(g, elementary_abelian_automorphisms(g));
  }
  for (const char* text : {kQuaternion8, kDihedral8, kCyclic4}) {
    const Group g = load(text);
    cases.emplace_back(g, automorphism_group(g));
  }
  for (const auto& [g, auts] : cases) {
    const PCoverData cover = p_cover(g);
    const auto ds = immediate_descendants(cover, auts);
    for (std::size_t step = 1; step <= cover.nuclear_rank; ++step) {
      if (cover.cover->size() > 7 && g->prime() == 2) continue;
      if (g->size() + step > 5 && g->prime() == 3) continue;
      std::size_t ours = 0;
      for (const auto& d : ds) ours += d.step == step;
      EXPECT_EQ(ours, brute_force_descendant_count(cover, step))
          << format_presentation(*g) << "step " << step;
    }
    for (const auto& d : ds) {
      EXPECT_EQ(weighted_violation(*d.quotient), "");
      EXPECT_TRUE(is_consistent(*d.quotient));
      EXPECT_EQ(d.quotient->p_class(), g->p_class() + 1);
      EXPECT_EQ(d.quotient->rank(), g->rank());
      EXPECT_EQ(d.stabilizer_order * d.orbit_size, auts.order);
    }
  }
}

TEST(PCover, GroupCountsFromDescendantTrees) {
  const auto two = tree_counts(2, 6);
  EXPECT_EQ(two.at(1), 1u);
  EXPECT_EQ(two.at(2), 2u);
  EXPECT_EQ(two.at(3), 5u);
  EXPECT_EQ(two.at(4), 14u);
  EXPECT_EQ(two.at(5), 51u);
  EXPECT_EQ(two.at(6), 267u);
  const auto three = tree_counts(3, 5);
  EXPECT_EQ(three.at(3), 5u);
  EXPECT_EQ(three.at(4), 15u);
  EXPECT_EQ(three.at(5), 67u);
  EXPECT_EQ(tree_counts(5, 4).at(4), 15u);
}

TEST(Automorphisms, GroupOrdersMatchBruteForce) {
  for (const char* text : {kQuaternion8, kDihedral8, kSemidihedral16, kHeisenberg27, kCyclic4}) {
    const Group g = load(text);
    const AutomorphismGroup a = automorphism_group(g);
    EXPECT_EQ(a.order, brute_force_aut_order(*g)) << format_presentation(*g);
    for (const Automorphism& x : a.generators) EXPECT_TRUE(respects_relations(*g, *g, x.images()));
  }
  EXPECT_EQ(automorphism_group(load(kCyclic4)).order, 2);
  EXPECT_EQ(automorphism_group(load(kQuaternion8)).order, 24);
}

TEST(Automorphisms, PropagatedOrdersMatchBruteForce) {
  const Group g = elementary(2, 2);
  for (const auto& d : immediate_descendants(g, elementary_abelian_automorphisms(g))) {
    if (d.quotient->size() > 4) continue;
    const AutomorphismGroup a = propagate_automorphisms(d);
    EXPECT_EQ(a.order, brute_force_aut_order(*d.quotient)) << format_presentation(*d.quotient);
    for (const Automorphism& x : a.generators)
      EXPECT_TRUE(respects_relations(*d.quotient, *d.quotient, x.images()));
  }
}

TEST(Automorphisms, CompositionInverseAndPreimage) {
  const Group g = load(kSemidihedral16);
  const AutomorphismGroup a = automorphism_group(g);
  ASSERT_GE(a.generators.size(), 2u);
  const Automorphism& x = a.generators[0];
  const Automorphism& y = a.generators[1];
  const Automorphism xy = x.then(y);
  const oracle::Table t = oracle::from_pc(*g);
  for (int code = 0; code < t.order(); ++code) {
    PcElement e(g->size());
    int c = code;
    for (std::size_t k = g->size(); k-- > 0;) {
      e[k] = static_cast<std::uint8_t>(c % 2);
      c /= 2;
    }
    EXPECT_EQ(xy.apply(e), y.apply(x.apply(e)));
    EXPECT_EQ(x.preimage(x.apply(e)), e);
    EXPECT_EQ(x.inverse().apply(x.apply(e)), e);
  }
  EXPECT_TRUE(x.then(x.inverse()).is_identity());
  EXPECT_EQ(x.top_matrix() * y.top_matrix(), xy.top_matrix());
}

TEST(Automorphisms, ChainOrdersOfGeneralLinearGroups) {
  for (auto [p, d] : {std::pair{2u, 2u}, {2u, 3u}, {3u, 2u}, {5u, 2u}, {2u, 4u}}) {
    const Group g = elementary(p, d);
    AutomorphismChain chain(g);
    for (const Automorphism& a : elementary_abelian_automorphisms(g).generators) chain.add(a);
    chain.close();
    EXPECT_EQ(chain.order(), gl_order(d, p)) << "p=" << p << " d=" << d;
  }
  EXPECT_EQ(gl_order(3, 2), 168);
  EXPECT_EQ(gl_order(2, 3), 48);
}

TEST(Automorphisms, ChainTracksKernelOrder) {
  const Group g = load(kHeisenberg27);
  const AutomorphismGroup a = automorphism_group(g);
  AutomorphismChain chain(g);
  for (const Automorphism& x : a.generators) chain.add(x);
  chain.close();
  EXPECT_EQ(chain.order(), a.order);
  EXPECT_EQ(a.order, 432);
}

TEST(Automorphisms, InnerAutomorphismsFixTheMultiplicator) {
  for (const char* text : {kQuaternion8, kDihedral8, kHeisenberg27}) {
    const Group g = load(text);
    const PCoverData c = p_cover(g);
    for (std::size_t i = 0; i < g->rank(); ++i) {
      std::vector<PcElement> imgs;
      for (std::size_t j = 0; j < g->rank(); ++j)
        imgs.push_back(g->conjugate(g->generator(j), g->generator(i)));
      const Automorphism inner = Automorphism::from_images(g, imgs);
      EXPECT_EQ(multiplicator_action(c, inner), FpMatrix::identity(g->prime(), c.mult_rank));
    }
  }
}

TEST(Automorphisms, SwapActsOnKleinFourMultiplicator) {
  const Group g = elementary(2, 2);
  const PCoverData c = p_cover(g);
  const Automorphism swap = Automorphism::from_matrix(g, FpMatrix::from_rows(2, 2, {{0, 1}, {1, 0}}));
  const FpMatrix a = multiplicator_action(c, swap);
  EXPECT_EQ(a * a, FpMatrix::identity(2, 3));
  EXPECT_NE(a, FpMatrix::identity(2, 3));
}

TEST(Automorphisms, RejectsNonAutomorphisms) {
  const Group g = load(kQuaternion8);
  EXPECT_THROW(Automorphism::from_images(g, {g->generator(0), g->generator(0)}), StructuralError);
}

TEST(CoverQuotient, RejectsNonAllowableSubspace) {
  const PCoverData c = p_cover(load(kDihedral8));
  ASSERT_LT(c.nuclear_rank, c.mult_rank);
  EXPECT_THROW(cover_quotient(c, Subspace(2, c.mult_rank)), StructuralError);
}

TEST(CoverQuotient, OrbitCapStopsEnumeration) {
  const Group g = elementary(2, 4);
  DescendantOptions opt;
  opt.orbit_cap = 10;
  opt.node_id = "1.2";
  try {
    immediate_descendants(g, elementary_abelian_automorphisms(g), opt);
    FAIL() << "cap not enforced";
  } catch (const OrbitCapExceeded& e) {
    EXPECT_EQ(e.node(), "1.2");
  }
}

TEST(FpPresentation, ParseAndFormat) {
  const FpPresentation f = parse_fp_presentation("<a, b | a^2, b^-1*a*b*a*b^3*a>");
  ASSERT_EQ(f.generators.size(), 2u);
  ASSERT_EQ(f.relators.size(), 2u);
  EXPECT_EQ(format_fp_presentation(f), "<a, b | a^2, b^-1*a*b*a*b^3*a>");
  const FpPresentation g = parse_fp_presentation("<a, b | a^2 = 1, b^-1 a b a b^3 a, [a, b]^2>");
  EXPECT_EQ(g.relators[1].size(), f.relators[1].size());
  EXPECT_EQ(g.relators[2].size(), 8u);
  const FpPresentation h = parse_fp_presentation("<a,b|bab^2a>");
  EXPECT_EQ(h.relators[0].size(), 4u);
  EXPECT_THROW(parse_fp_presentation("<a | c>"), ParseError);
  EXPECT_THROW(parse_fp_presentation("a, b | a"), ParseError);
  EXPECT_THROW(parse_fp_presentation("<a | a^>"), ParseError);
}

TEST(PQuotient, CyclicAndFreeAbelian) {
  const auto c4 = p_quotient(parse_fp_presentation("<a | a^4>"), 2, 10);
  EXPECT_TRUE(c4.maximal);
  EXPECT_EQ(c4.group->size(), 2u);
  const auto z2 = p_quotient(parse_fp_presentation("<a, b | [a, b]>"), 2, 3);
  EXPECT_FALSE(z2.maximal);
  EXPECT_EQ(z2.group->size(), 6u);
  EXPECT_EQ(abelian_invariants(*z2.group), AbelianType({3, 3}));
  const auto triv = p_quotient(parse_fp_presentation("<a | a^3>"), 2, 5);
  EXPECT_TRUE(triv.maximal);
  EXPECT_EQ(triv.group->size(), 0u);
  EXPECT_THROW(p_quotient(parse_fp_presentation("<a | a^3>"), 2, 0), StructuralError);
}

TEST(PQuotient, ImagesSatisfyRelatorsAndGenerate) {
  for (const char* text : {"<a, b | a^2, b^-1*a*b*a*b^3*a>", "<x, y | x^4, y^4, (x*y)^2>",
                           "<a, b, c | a*b*c, a^2 = b^3>"}) {
    const FpPresentation f = parse_fp_presentation(text);
    const auto r = p_quotient(f, 2, 8);
    const PcPresentation& g = *r.group;
    EXPECT_TRUE(is_consistent(g));
    EXPECT_EQ(weighted_violation(g), "");
    for (const Word& w : f.relators) {
      PcElement x = g.identity();
      for (const Letter& l : w) g.multiply_in_place(x, g.pow(r.images[l.gen], l.power));
      EXPECT_TRUE(x.is_identity()) << text;
    }
    if (g.size() <= 10) {
      const oracle::Table t = oracle::from_pc(g);
      std::vector<int> gens;
      for (const PcElement& x : r.images) gens.push_back(oracle::pc_index(g, x));
      EXPECT_EQ(static_cast<int>(oracle::generated(t, gens).size()), t.order()) << text;
    }
  }
}

TEST(PQuotient, KnownOrders) {
  const auto k2 = p_quotient(parse_fp_presentation("<a, b | a^2, b^-1*a*b*a*b*a*b^3*a>"), 2, 30);
  EXPECT_TRUE(k2.maximal);
  EXPECT_EQ(k2.group->size(), 7u);
  const auto k3 = p_quotient(parse_fp_presentation("<a, b | a^2, b^-1*a*b*a*b*a*b^7*a>"), 2, 30);
  EXPECT_TRUE(k3.maximal);
  EXPECT_EQ(k3.group->size(), 10u);
  const auto x8 = p_quotient(parse_fp_presentation("<x, y | x^4, y^2, (x*y)^2>"), 2, 10);
  EXPECT_TRUE(x8.maximal);
  EXPECT_TRUE(oracle::isomorphic(oracle::from_pc(*x8.group), oracle::from_pc(*load(kDihedral8))));
}

TEST(PQuotient, PcPresentationRoundTrip) {
  const Group g = elementary(2, 2);
  for (const auto& d : immediate_descendants(g, elementary_abelian_automorphisms(g))) {
    const PcPresentation& q = *d.quotient;
    FpPresentation f;
    for (std::size_t k = 0; k < q.size(); ++k) f.generators.push_back("g" + std::to_string(k + 1));
    auto rel = [&](Word lhs, const PcElement& rhs) {
      for (Letter l : q.word_of(q.inverse(rhs))) lhs.push_back(l);
      f.relators.push_back(lhs);
    };
    for (std::size_t i = 0; i < q.size(); ++i) {
      rel({{i, 2}}, q.power(i));
      for (std::size_t j = i + 1; j < q.size(); ++j)
        rel({{i, -1}, {j, 1}, {i, 1}}, q.conjugate_relation(j, i));
    }
    const auto r = p_quotient(f, 2, 10);
    EXPECT_TRUE(r.maximal);
    EXPECT_EQ(r.group->size(), q.size());
    EXPECT_TRUE(oracle::isomorphic(oracle::from_pc(*r.group), oracle::from_pc(q)));
  }
}

namespace {

// Every group of order p^k, k <= max_exp, once, with a parent cover and the
// parent's automorphism group for relabeling.
struct TreeGroup {
  Group g;
  std::shared_ptr<PCoverData> parent_cover;
  AutomorphismGroup parent_auts;
  Subspace allowable;
};

std::vector<TreeGroup> all_groups(unsigned p, std::size_t max_exp) {
  std::vector<TreeGroup> out;
  for (std::size_t d = 1; d <= max_exp; ++d) {
    const Group root = elementary(p, d);
    std::vector<std::pair<Group, AutomorphismGroup>> todo{{root, elementary_abelian_automorphisms(root)}};
    out.push_back({root, nullptr, {}, {}});
    while (!todo.empty()) {
      auto [g, auts] = todo.back();
      todo.pop_back();
      if (g->size() == max_exp) continue;
      auto cover = std::make_shared<PCoverData>(p_cover(g));
      DescendantOptions opt;
      opt.max_step = max_exp - g->size();
      for (const DescendantRecord& rec : immediate_descendants(*cover, auts, opt)) {
        out.push_back({rec.quotient, cover, auts, rec.allowable});
        todo.emplace_back(rec.quotient, propagate_automorphisms(rec));
      }
    }
  }
  return out;
}

}  // namespace

TEST(Isomorphism, StandardPresentationsSeparateTreeGroups) {
  for (auto [p, max_exp] : {std::pair{2u, 5u}, {3u, 4u}}) {
    std::set<std::string> seen;
    const auto groups = all_groups(p, max_exp);
    for (const TreeGroup& t : groups) {
      const PcPresentation s = standard_presentation(t.g);
      EXPECT_TRUE(is_consistent(s));
      EXPECT_EQ(s.order_exponent(), t.g->order_exponent());
      EXPECT_TRUE(seen.insert(format_presentation(s)).second) << format_presentation(*t.g);
    }
  }
}

TEST(Isomorphism, OrbitRelabelingsAgree) {
  std::mt19937 rng(11);
  for (const TreeGroup& t : all_groups(2, 6)) {
    if (!t.parent_cover || t.parent_auts.generators.empty()) continue;
    const auto mats = aut_action_on_multiplicator(*t.parent_cover, t.parent_auts.generators);
    Subspace u = t.allowable;
    for (int k = 0; k < 4; ++k) u = u.image(mats[rng() % mats.size()]);
    const Group moved = std::make_shared<PcPresentation>(cover_quotient(*t.parent_cover, u));
    EXPECT_TRUE(isomorphic(moved, t.g)) << format_presentation(*t.g);
    if (t.g->size() <= 5)
      EXPECT_TRUE(oracle::isomorphic(oracle::from_pc(*moved), oracle::from_pc(*t.g)));
  }
}

TEST(Isomorphism, AgreesWithBruteForce) {
  const auto groups = all_groups(2, 4);
  for (std::size_t i = 0; i < groups.size(); ++i)
    for (std::size_t j = 0; j < groups.size(); ++j) {
      if (groups[i].g->size() != groups[j].g->size()) continue;
      const bool brute = oracle::isomorphic(oracle::from_pc(*groups[i].g), oracle::from_pc(*groups[j].g));
      EXPECT_EQ(isomorphic(groups[i].g, groups[j].g), brute);
    }
  // Different finite presentations of one group.
  const Group a = p_quotient(parse_fp_presentation("<a, b | a^2, b^8, a^-1*b*a = b^3>"), 2, 10).group;
  const Group b = p_quotient(parse_fp_presentation("<b, a | a^2, b^8, a^-1*b*a = b^3>"), 2, 10).group;
  EXPECT_NE(format_presentation(*a), format_presentation(*b));
  EXPECT_TRUE(isomorphic(a, b));
}
