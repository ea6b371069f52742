#include "oracle.hpp"
#include "pgg/constraints.hpp"
#include "pgg/error.hpp"

#include <gtest/gtest.h>

#include <functional>
#include <numeric>
#include <random>

using namespace pgg;

namespace {

using Group = std::shared_ptr<const PcPresentation>;

Group quotient(const char* fp) { return p_quotient(parse_fp_presentation(fp), 2, 20).group; }

const char* kSD16 = "<a, b | a^2, b^8, a^-1*b*a = b^3>";
const char* kD16 = "<a, b | a^2, b^8, a^-1*b*a = b^-1>";
const char* kD32 = "<a, b | a^2, b^16, a^-1*b*a = b^-1>";
const char* kQ16 = "<a, b | a^2 = b^4, b^8, a^-1*b*a = b^-1>";

struct Fixture {
  Group q, base;
  Homomorphism pi;
};

Fixture over_frattini_quotient(Group q) {
  auto base = std::make_shared<const PcPresentation>(class_quotient(*q, 1));
  return {q, base, Homomorphism::truncation(q, base)};
}

PcElement element(const PcPresentation& g, const char* word) {
  return g.evaluate(parse_pc_word(word, g.size()));
}

AbelianType ab(const char* text) { return AbelianType::parse(text, 2); }

TargetData semidihedral_targets() {
  TargetData t;
  t.index1 = ab("[2, 2]");
  t.index_p = {{{1, 0}, ab("[8]")}, {{0, 1}, ab("[2, 2]")}, {{1, 1}, ab("[2, 2]")}};
  t.comparison_depth = 2;
  return t;
}

// Counts elements of each order in B/N, which determine its isomorphism type.
std::vector<int> quotient_order_profile(const oracle::Table& t, const oracle::Set& n) {
  std::vector<int> seen(t.order(), 0), profile;
  for (int x = 0; x < t.order(); ++x) {
    bool first = true;
    for (int y : n)
      if (seen[t.mul[x][y]]) first = false;
    if (!first) continue;
    for (int y : n) seen[t.mul[x][y]] = 1;
    int k = 1, pw = x;
    while (!n.count(pw)) {
      pw = t.mul[pw][x];
      ++k;
    }
    profile.push_back(k);
  }
  std::sort(profile.begin(), profile.end());
  return profile;
}

oracle::Table abelian_table(const std::vector<unsigned>& exps) {
  std::vector<int> mods;
  for (unsigned e : exps) mods.push_back(1 << e);
  int n = 1;
  for (int m : mods) n *= m;
  oracle::Table t;
  t.mul.assign(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y) {
      int r = 0, mult = 1, a = x, b = y;
      for (int m : mods) {
        r += ((a % m + b % m) % m) * mult;
        mult *= m;
        a /= m;
        b /= m;
      }
      t.mul[x][y] = r;
    }
  return t;
}

std::vector<std::vector<unsigned>> partitions_up_to(unsigned total) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> cur;
  std::function<void(unsigned, unsigned)> go = [&](unsigned left, unsigned maxpart) {
    out.push_back(cur);
    for (unsigned k = std::min(left, maxpart); k >= 1; --k) {
      cur.push_back(k);
      go(left - k, k);
      cur.pop_back();
    }
  };
  go(total, total);
  return out;
}

bool brute_force_quotient(const std::vector<unsigned>& a, const std::vector<unsigned>& b) {
  const oracle::Table ta = abelian_table(a), tb = abelian_table(b);
  if (tb.order() % ta.order()) return false;
  const auto target = quotient_order_profile(ta, {ta.identity});
  for (const oracle::Set& n : oracle::subgroups_of_order(tb, tb.order() / ta.order()))
    if (quotient_order_profile(tb, n) == target) return true;
  return false;
}

// Groups of the descendant tree of C2 x C2 up to the given order exponent.
std::vector<std::pair<Group, Group>> tree_edges(std::size_t max_exp) {
  std::vector<std::pair<Group, Group>> edges;
  auto root = std::make_shared<PcPresentation>(2, 2);
  root->set_weight(0, 1);
  root->set_weight(1, 1);
  struct Node {
    Group g;
    AutomorphismGroup auts;
  };
  std::vector<Node> todo{{root, elementary_abelian_automorphisms(root)}};
  while (!todo.empty()) {
    const Node node = todo.back();
    todo.pop_back();
    if (node.g->size() >= max_exp) continue;
    DescendantOptions opt;
    opt.max_step = max_exp - node.g->size();
    for (const DescendantRecord& rec : immediate_descendants(node.g, node.auts, opt)) {
      edges.emplace_back(node.g, rec.quotient);
      todo.push_back({rec.quotient, propagate_automorphisms(rec)});
    }
  }
  return edges;
}

}  // namespace

TEST(TestI, SemidihedralInertiaWitness) {
  const Fixture s = over_frattini_quotient(quotient(kSD16));
  const PlaceConstraint tau{3u, {element(*s.base, "g2"), element(*s.base, "g1*g2")}};
  const TestIResult r = test_i(s.q, s.pi, s.base, {tau});
  ASSERT_TRUE(r.pass);
  ASSERT_EQ(r.witnesses.size(), 1u);
  const PcElement b = element(*s.q, "g2");
  bool found = false;
  for (const PcElement& x : r.witnesses[0].classes) found = found || are_conjugate(s.q, x, b);
  EXPECT_TRUE(found);
}

TEST(TestI, ElementaryAbelianEveryClassIsAWitness) {
  for (std::size_t d : {1u, 2u, 3u}) {
    auto g = std::make_shared<PcPresentation>(2, d);
    for (std::size_t i = 0; i < d; ++i) g->set_weight(i, 1);
    const Fixture s = over_frattini_quotient(g);
    std::vector<PcElement> everything;
    for (const auto& c : class_representatives(g)) everything.push_back(c.rep);
    for (unsigned q : {3u, 5u, 7u, 19u}) {
      const TestIResult r = test_i(s.q, s.pi, s.base, {{q, everything}});
      ASSERT_TRUE(r.pass);
      EXPECT_EQ(r.witnesses[0].classes.size(), std::size_t{1} << d);
    }
  }
}

TEST(TestI, GeneralizedQuaternionHasNoAllowedInvolution) {
  const Fixture s = over_frattini_quotient(quotient(kQ16));
  ASSERT_EQ(s.q->size(), 4u);
  const PlaceConstraint inf{std::nullopt,
                            {element(*s.base, "g1"), element(*s.base, "g2"),
                             element(*s.base, "g1*g2")}};
  const TestIResult r = test_i(s.q, s.pi, s.base, {inf});
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.failed_place, "infinity");
  ConstraintOptions off;
  off.infinite_place = false;
  EXPECT_TRUE(test_i(s.q, s.pi, s.base, {inf}, nullptr, off).pass);
}

TEST(TestI, GenerationFlag) {
  const Fixture s = over_frattini_quotient(quotient(kSD16));
  const PlaceConstraint inf{std::nullopt, {element(*s.base, "g1")}};
  const PlaceConstraint tau{3u, {element(*s.base, "g2")}};
  ConstraintOptions strict;
  strict.require_generation = true;
  EXPECT_TRUE(test_i(s.q, s.pi, s.base, {inf, tau}, nullptr, strict).pass);
  EXPECT_TRUE(test_i(s.q, s.pi, s.base, {inf}).pass);
  const TestIResult r = test_i(s.q, s.pi, s.base, {inf}, nullptr, strict);
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.failed_place, "generation");
}

TEST(TestI, WitnessesProjectAndLiftingLosesNothing) {
  for (const auto& [parent, child] : tree_edges(5)) {
    const Fixture sp = over_frattini_quotient(parent);
    const Fixture sc = over_frattini_quotient(child);
    std::vector<PcElement> all;
    for (const auto& c : class_representatives(sp.base)) all.push_back(c.rep);
    const std::vector<PlaceConstraint> places{{3u, all},
                                              {5u, {element(*sp.base, "g2")}},
                                              {std::nullopt, {element(*sp.base, "g1")}}};
    const TestIResult up = test_i(sp.q, sp.pi, sp.base, places);
    if (!up.pass) continue;
    const TestIResult full = test_i(sc.q, sc.pi, sc.base, places);
    const TestIResult lifted = test_i(sc.q, sc.pi, sc.base, places, &up.witnesses);
    ASSERT_EQ(full.pass, lifted.pass);
    if (!full.pass) continue;
    const Homomorphism down = Homomorphism::truncation(child, parent);
    for (std::size_t k = 0; k < full.witnesses.size(); ++k) {
      ASSERT_EQ(full.witnesses[k].classes.size(), lifted.witnesses[k].classes.size());
      for (const PcElement& x : full.witnesses[k].classes) {
        const PcElement y = down.apply(x);
        bool hit = false;
        for (const PcElement& w : up.witnesses[k].classes) hit = hit || are_conjugate(parent, y, w);
        EXPECT_TRUE(hit) << "witness of child does not project to a parent witness";
        bool same = false;
        for (const PcElement& w : lifted.witnesses[k].classes) same = same || are_conjugate(child, x, w);
        EXPECT_TRUE(same);
      }
    }
  }
}

TEST(Dominance, Examples) {
  EXPECT_TRUE(dominated(ab("[2, 2]"), ab("[2, 4]")));
  EXPECT_FALSE(dominated(ab("[4]"), ab("[2, 2]")));
  EXPECT_TRUE(dominated(ab("[]"), ab("[2]")));
  EXPECT_FALSE(dominated(ab("[2, 2, 2]"), ab("[4, 4]")));
}

TEST(Dominance, MatchesBruteForceQuotients) {
  const auto types = partitions_up_to(5);
  for (const auto& a : types)
    for (const auto& b : types) {
      const unsigned sa = std::accumulate(a.begin(), a.end(), 0u);
      const unsigned sb = std::accumulate(b.begin(), b.end(), 0u);
      if (sa > sb) {
        EXPECT_FALSE(dominated(AbelianType(a), AbelianType(b)));
        continue;
      }
      EXPECT_EQ(dominated(AbelianType(a), AbelianType(b)), brute_force_quotient(a, b))
          << AbelianType(a).render(2) << " vs " << AbelianType(b).render(2);
    }
}

TEST(Dominance, IsAPartialOrder) {
  std::mt19937 rng(3);
  const auto random_type = [&] {
    std::vector<unsigned> e(rng() % 4);
    for (auto& x : e) x = 1 + rng() % 4;
    std::sort(e.rbegin(), e.rend());
    return AbelianType(e);
  };
  for (int trial = 0; trial < 3000; ++trial) {
    const AbelianType a = random_type(), b = random_type(), c = random_type();
    EXPECT_TRUE(dominated(a, a));
    if (dominated(a, b) && dominated(b, a)) EXPECT_EQ(a, b);
    if (dominated(a, b) && dominated(b, c)) EXPECT_TRUE(dominated(a, c));
  }
}

TEST(Matching, PerfectAndSaturating) {
  const std::vector<AbelianType> left{ab("[2, 2]"), ab("[4]")};
  EXPECT_TRUE(has_matching(left, {ab("[4]"), ab("[2, 4]")}, true, false));
  EXPECT_FALSE(has_matching(left, {ab("[2, 2]"), ab("[2, 2]")}, true, false));
  EXPECT_TRUE(has_matching(left, {ab("[8]"), ab("[2, 2]"), ab("[2]")}, false, false));
  EXPECT_FALSE(has_matching(left, {ab("[8]"), ab("[2, 2]"), ab("[2]")}, true, false));
  EXPECT_TRUE(has_matching(left, {ab("[4]"), ab("[2, 2]")}, true, true));
}

TEST(TestII, SemidihedralPassesExactly) {
  const Fixture s = over_frattini_quotient(quotient(kSD16));
  const TestIIResult r = test_ii(s.q, s.pi, semidihedral_targets(), s.q->p_class());
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.detail.size(), 4u);
}

TEST(TestII, DihedralThirtyTwoFailsAtItsCyclicSubgroup) {
  const Fixture s = over_frattini_quotient(quotient(kD32));
  ASSERT_EQ(s.q->size(), 5u);
  const TestIIResult r = test_ii(s.q, s.pi, semidihedral_targets(), s.q->p_class());
  EXPECT_FALSE(r.pass);
  EXPECT_NE(r.reason.find("[16]"), std::string::npos) << r.reason;
}

TEST(TestII, AbelianizationTooLarge) {
  const Fixture s = over_frattini_quotient(quotient("<a, b | a^2, b^4, [a, b]>"));
  const TestIIResult r = test_ii(s.q, s.pi, semidihedral_targets(), s.q->p_class());
  EXPECT_FALSE(r.pass);
  EXPECT_EQ(r.detail.at(0).actual, ab("[2, 4]"));
}

TEST(TestII, EqualityImpliesDominance) {
  for (const char* fp : {kSD16, kD16, kD32, kQ16, "<a, b | a^2, b^4, [a, b]>"}) {
    const Fixture s = over_frattini_quotient(quotient(fp));
    for (const TargetData& t : {semidihedral_targets()}) {
      if (test_ii(s.q, s.pi, t, s.q->p_class(), true).pass)
        EXPECT_TRUE(test_ii(s.q, s.pi, t, s.q->p_class()).pass);
    }
    // Targets read off the group itself pass with equality at every depth.
    TargetData own;
    own.index1 = abelian_invariants(*s.q);
    for (const LabeledSubgroup& h : index_p_subgroups(s.q))
      own.index_p[h.label] = abelian_invariants(h.subgroup);
    for (const Subgroup& h : index_p2_subgroups(s.q)) own.index_p2.push_back(abelian_invariants(h));
    own.comparison_depth = 4;
    const TestIIResult r = test_ii(s.q, s.pi, own, s.q->p_class(), true);
    EXPECT_TRUE(r.pass) << r.reason;
    EXPECT_TRUE(r.exact);
    EXPECT_TRUE(test_ii(s.q, s.pi, own, s.q->p_class()).pass);
  }
}

TEST(TestII, StrictFromClass) {
  const Fixture s = over_frattini_quotient(quotient(kD16));
  TargetData t = semidihedral_targets();
  t.index_p[{1, 0}] = ab("[16]");
  EXPECT_TRUE(test_ii(s.q, s.pi, t, s.q->p_class()).pass);
  t.strict_from_class = 3;
  EXPECT_FALSE(test_ii(s.q, s.pi, t, 3).pass);
  EXPECT_TRUE(test_ii(s.q, s.pi, t, 2).pass);
}

TEST(TestII, UnlabeledIndexPMode) {
  const Fixture s = over_frattini_quotient(quotient(kSD16));
  TargetData t;
  t.index1 = ab("[2, 2]");
  t.index_p_unlabeled = {ab("[2, 2]"), ab("[2, 2]"), ab("[8]")};
  t.comparison_depth = 2;
  const TestIIResult r = test_ii(s.q, s.pi, t, 3);
  EXPECT_TRUE(r.pass);
  EXPECT_TRUE(r.exact);
  t.index_p_unlabeled = {ab("[2, 2]"), ab("[2, 2]"), ab("[4]")};
  EXPECT_FALSE(test_ii(s.q, s.pi, t, 3).pass);
}

TEST(TestII, IndexFourTargetsUseMatching) {
  const Fixture s = over_frattini_quotient(quotient(kSD16));
  TargetData t = semidihedral_targets();
  t.comparison_depth = 4;
  for (const Subgroup& h : index_p2_subgroups(s.q)) t.index_p2.push_back(abelian_invariants(h));
  std::reverse(t.index_p2.begin(), t.index_p2.end());
  EXPECT_TRUE(test_ii(s.q, s.pi, t, 3).exact);
  t.index_p2.pop_back();
  EXPECT_FALSE(test_ii(s.q, s.pi, t, 3).pass);
}

TEST(TestII, TransportedLabels) {
  const Group q = quotient(kSD16);
  auto base = std::make_shared<const PcPresentation>(class_quotient(*q, 1));
  // pi swaps the two generators of the Frattini quotient.
  std::vector<PcElement> img(q->size(), base->identity());
  img[0] = base->generator(1);
  img[1] = base->generator(0);
  const Homomorphism pi(q, base, img);
  EXPECT_EQ(transport_character(pi, FpVector{1, 0}), (FpVector{0, 1}));
  EXPECT_EQ(transport_character(pi, FpVector{1, 1}), (FpVector{1, 1}));
  TargetData t = semidihedral_targets();
  std::swap(t.index_p[{1, 0}], t.index_p[{0, 1}]);
  EXPECT_TRUE(test_ii(q, pi, t, 3).exact);
  const Homomorphism id = Homomorphism::truncation(q, base);
  EXPECT_FALSE(test_ii(q, id, t, 3).pass);

  auto c2 = std::make_shared<PcPresentation>(2, 1);
  c2->set_weight(0, 1);
  const Homomorphism bad(q, c2, {c2->generator(0), c2->identity(), c2->identity(), c2->identity()});
  EXPECT_THROW(test_ii(q, bad, t, 3), StructuralError);
}

TEST(TestIII, RankGap) {
  const Group sd = quotient(kSD16);
  const PCoverData c = p_cover(sd);
  EXPECT_EQ(c.mult_rank, 2u);
  EXPECT_EQ(c.nuclear_rank, 0u);
  EXPECT_TRUE(test_iii(c, 2));
  EXPECT_FALSE(test_iii(c, 1));
  auto v = std::make_shared<PcPresentation>(2, 2);
  v->set_weight(0, 1);
  v->set_weight(1, 1);
  EXPECT_TRUE(test_iii(v, 0));
  const PCoverData d = p_cover(quotient(kD16));
  const std::size_t gap = d.mult_rank - d.nuclear_rank;
  EXPECT_TRUE(test_iii(d, gap));
  if (gap > 0) EXPECT_FALSE(test_iii(d, gap - 1));
}

TEST(Candidate, KnownGroups) {
  const Fixture sd = over_frattini_quotient(quotient(kSD16));
  EXPECT_TRUE(is_candidate(sd.q, sd.pi, semidihedral_targets(), 2));
  const Fixture d16 = over_frattini_quotient(quotient(kD16));
  EXPECT_EQ(p_cover(d16.q).mult_rank, 3u);
  EXPECT_FALSE(is_candidate(d16.q, d16.pi, semidihedral_targets(), 2));

  const Fixture c8 = over_frattini_quotient(quotient("<a | a^8>"));
  TargetData t;
  t.index1 = ab("[8]");
  EXPECT_TRUE(is_candidate(c8.q, c8.pi, t, 1));
  const Fixture c4 = over_frattini_quotient(quotient("<a | a^4>"));
  EXPECT_FALSE(is_candidate(c4.q, c4.pi, t, 1));
}

TEST(Candidate, CandidatesAreTerminalOrOutgrowTheirTargets) {
  for (const char* fp : {kSD16, kQ16, "<a | a^8>", "<a, b | a^2, b^8, a^-1*b*a = b^5>"}) {
    const Fixture s = over_frattini_quotient(quotient(fp));
    TargetData own;
    own.index1 = abelian_invariants(*s.q);
    const PCoverData c = p_cover(s.q);
    ASSERT_TRUE(is_candidate(c, s.pi, own, s.q->rank())) << fp;
    const auto next = immediate_descendants(s.q, automorphism_group(s.q));
    if (s.q->rank() >= 2) EXPECT_TRUE(next.empty()) << fp;
    for (const DescendantRecord& r : next) {
      const Homomorphism pi = Homomorphism::truncation(r.quotient, s.base);
      EXPECT_FALSE(test_ii(r.quotient, pi, own, r.quotient->p_class()).pass) << fp;
    }
  }
}
