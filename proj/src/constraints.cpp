#include "pgg/constraints.hpp"

#include "pgg/error.hpp"

#include <algorithm>
#include <functional>

namespace pgg {

namespace {

const PlaceWitnesses* find_place(const WitnessSet& w, const std::string& name) {
  for (const auto& pw : w)
    if (pw.place == name) return &pw;
  return nullptr;
}

bool power_conjugate(const std::shared_ptr<const PcPresentation>& q, const PcElement& x,
                     unsigned prime) {
  const unsigned long long ord = q->order_of(x);
  if (ord == 1) return true;
  const PcElement y = q->pow(x, static_cast<long long>(prime % ord));
  return y == x || are_conjugate(q, x, y);
}

FpVector top_coordinates(const PcElement& x, std::size_t d) {
  return FpVector(x.exponents().begin(), x.exponents().begin() + static_cast<long>(d));
}

// Some choice of one witness per place spans the Frattini quotient.
bool witnesses_generate(const PcPresentation& q, const WitnessSet& w) {
  const std::size_t d = q.rank();
  std::vector<FpVector> chosen;
  std::function<bool(std::size_t)> pick = [&](std::size_t k) -> bool {
    if (k == w.size()) {
      if (chosen.empty()) return d == 0;
      return rank(FpMatrix::from_rows(q.prime(), d, chosen)) == d;
    }
    for (const PcElement& x : w[k].classes) {
      chosen.push_back(top_coordinates(x, d));
      const bool ok = pick(k + 1);
      chosen.pop_back();
      if (ok) return true;
    }
    return false;
  };
  return pick(0);
}

void normalize(FpVector& v, unsigned p) {
  for (auto c : v)
    if (c) {
      const unsigned inv = fp_inverse(c, p);
      for (auto& e : v) e = static_cast<std::uint8_t>(e * inv % p);
      return;
    }
}

std::string render_label(const FpVector& v) {
  std::string s;
  for (auto c : v) s += static_cast<char>('0' + c);
  return s;
}

}  // namespace

TestIResult test_i(std::shared_ptr<const PcPresentation> q, const Homomorphism& pi,
                   std::shared_ptr<const PcPresentation> base,
                   const std::vector<PlaceConstraint>& places,
                   const WitnessSet* parent_witnesses, const ConstraintOptions& options) {
  TestIResult out;
  for (const PlaceConstraint& place : places) {
    if (place.infinite() && !options.infinite_place) continue;
    const std::string name = place.name();
    const bool trivial_allowed =
        std::any_of(place.allowed.begin(), place.allowed.end(),
                    [](const PcElement& x) { return x.is_identity(); });

    std::vector<ConjugacyClass> classes;
    const PlaceWitnesses* above =
        parent_witnesses && options.lift_witnesses ? find_place(*parent_witnesses, name) : nullptr;
    if (above) {
      std::vector<PcElement> reps = above->classes;
      // An involution in the kernel of the last step lifts the identity.
      if (place.infinite() && trivial_allowed && !reps.empty()) {
        const PcElement one(reps.front().size());
        if (std::find(reps.begin(), reps.end(), one) == reps.end()) reps.push_back(one);
      }
      classes = classes_above(q, reps);
    } else {
      classes = class_representatives(q);
    }

    PlaceWitnesses found{name, {}};
    for (const ConjugacyClass& c : classes) {
      const PcElement& x = c.rep;
      if (place.infinite()) {
        if (q->order_of(x) != 2) continue;
      } else if (!power_conjugate(q, x, *place.prime)) {
        continue;
      }
      const PcElement image = pi.apply(x);
      const bool allowed = std::any_of(place.allowed.begin(), place.allowed.end(),
                                       [&](const PcElement& a) {
                                         return a == image || are_conjugate(base, image, a);
                                       });
      if (allowed) found.classes.push_back(x);
    }
    std::sort(found.classes.begin(), found.classes.end());
    if (found.classes.empty()) {
      out.pass = false;
      out.failed_place = name;
      return out;
    }
    out.witnesses.push_back(std::move(found));
  }
  if (options.require_generation && !witnesses_generate(*q, out.witnesses)) {
    out.pass = false;
    out.failed_place = "generation";
  }
  return out;
}

bool dominated(const AbelianType& a, const AbelianType& b) {
  const auto& x = a.exponents();
  const auto& y = b.exponents();
  if (x.size() > y.size()) return false;
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] > y[i]) return false;
  return true;
}

bool has_matching(const std::vector<AbelianType>& left, const std::vector<AbelianType>& right,
                  bool perfect, bool equality) {
  if (perfect && left.size() != right.size()) return false;
  if (left.size() > right.size()) return false;
  const auto related = [&](std::size_t i, std::size_t j) {
    return equality ? left[i] == right[j] : dominated(left[i], right[j]);
  };
  std::vector<std::size_t> match(right.size(), left.size());
  std::vector<char> seen;
  std::function<bool(std::size_t)> augment = [&](std::size_t i) -> bool {
    for (std::size_t j = 0; j < right.size(); ++j) {
      if (seen[j] || !related(i, j)) continue;
      seen[j] = 1;
      if (match[j] == left.size() || augment(match[j])) {
        match[j] = i;
        return true;
      }
    }
    return false;
  };
  for (std::size_t i = 0; i < left.size(); ++i) {
    seen.assign(right.size(), 0);
    if (!augment(i)) return false;
  }
  return true;
}

FpVector transport_character(const Homomorphism& pi, const FpVector& q_character) {
  const PcPresentation& q = pi.source();
  const PcPresentation& p = pi.target();
  const std::size_t d = q.rank();
  if (p.rank() != d || q_character.size() != d)
    throw StructuralError("projection does not identify the Frattini quotients");
  FpVector chi;
  if (pi.is_truncation()) {
    chi = q_character;
  } else {
    std::vector<FpVector> rows;
    for (std::size_t i = 0; i < d; ++i) rows.push_back(top_coordinates(pi.images()[i], d));
    const FpMatrix m = FpMatrix::from_rows(q.prime(), d, rows);
    if (rank(m) != d) throw StructuralError("projection is not onto the Frattini quotient");
    chi = matrix_inverse(m).transpose().apply_row(q_character);
  }
  normalize(chi, q.prime());
  return chi;
}

TestIIResult test_ii(std::shared_ptr<const PcPresentation> q, const Homomorphism& pi,
                     const TargetData& targets, unsigned current_class, bool strict) {
  TestIIResult out;
  const unsigned p = q->prime();
  const bool equal_only =
      strict || (targets.strict_from_class && current_class >= *targets.strict_from_class);
  const auto fail = [&](std::string reason) {
    out.pass = false;
    out.exact = false;
    out.reason = std::move(reason);
    return out;
  };
  const auto compare = [&](SubgroupComparison c) {
    c.dominated = dominated(c.actual, *c.target);
    c.equal = c.actual == *c.target;
    out.exact = out.exact && c.equal;
    out.detail.push_back(c);
    return equal_only ? c.equal : c.dominated;
  };

  SubgroupComparison top{1, "", abelian_invariants(*q), targets.index1};
  if (!compare(top))
    return fail("index 1: " + top.actual.render(p) + " vs " + targets.index1.render(p));

  if (targets.comparison_depth >= p) {
    if (targets.labeled()) {
      for (const LabeledSubgroup& s : index_p_subgroups(q)) {
        const FpVector label = transport_character(pi, s.label);
        const auto it = targets.index_p.find(label);
        if (it == targets.index_p.end())
          throw StructuralError("no index-" + std::to_string(p) + " target for character " +
                                render_label(label));
        SubgroupComparison c{p, render_label(label), abelian_invariants(s.subgroup), it->second};
        if (!compare(c))
          return fail("index " + std::to_string(p) + " [" + c.label + "]: " + c.actual.render(p) +
                      " vs " + it->second.render(p));
      }
    } else {
      std::vector<AbelianType> actual;
      for (const LabeledSubgroup& s : index_p_subgroups(q)) {
        actual.push_back(abelian_invariants(s.subgroup));
        out.detail.push_back({p, render_label(s.label), actual.back(), std::nullopt});
      }
      if (!has_matching(actual, targets.index_p_unlabeled, true, equal_only))
        return fail("index " + std::to_string(p) + ": no matching onto the targets");
      out.exact = out.exact && has_matching(actual, targets.index_p_unlabeled, true, true);
    }
  }

  if (targets.comparison_depth >= static_cast<unsigned long long>(p) * p) {
    std::vector<AbelianType> actual;
    for (const Subgroup& s : index_p2_subgroups(q)) {
      actual.push_back(abelian_invariants(s));
      out.detail.push_back({static_cast<unsigned long long>(p) * p, "", actual.back(), std::nullopt});
    }
    if (!has_matching(actual, targets.index_p2, equal_only, equal_only))
      return fail("index " + std::to_string(p * p) + ": no matching onto the targets");
    out.exact = out.exact && has_matching(actual, targets.index_p2, true, true);
  }
  return out;
}

bool test_iii(const PCoverData& cover, std::size_t bound) {
  return cover.mult_rank - cover.nuclear_rank <= bound;
}

bool test_iii(std::shared_ptr<const PcPresentation> q, std::size_t bound) {
  return test_iii(p_cover(std::move(q)), bound);
}

bool is_candidate(const PCoverData& cover, const Homomorphism& pi, const TargetData& targets,
                  std::size_t d) {
  if (cover.mult_rank != d) return false;
  return test_ii(cover.base, pi, targets, cover.base->p_class(), true).pass;
}

bool is_candidate(std::shared_ptr<const PcPresentation> q, const Homomorphism& pi,
                  const TargetData& targets, std::size_t d) {
  return is_candidate(p_cover(std::move(q)), pi, targets, d);
}

std::string TestReport::reason() const {
  if (!i.pass) return "test i: no witness at place " + i.failed_place;
  if (!ii.pass) return "test ii: " + ii.reason;
  if (!iii) return "test iii: rank gap too large";
  return "";
}

TestReport evaluate(std::shared_ptr<const PcPresentation> q, const PCoverData& cover,
                    const Homomorphism& pi, std::shared_ptr<const PcPresentation> base,
                    const TestParameters& params, const WitnessSet* parent_witnesses) {
  TestReport r;
  r.i = test_i(q, pi, base, *params.places, parent_witnesses, params.options);
  if (!r.i.pass) return r;
  r.ii = test_ii(q, pi, *params.targets, q->p_class());
  if (!r.ii.pass) return r;
  r.iii = test_iii(cover, params.rank_gap_bound);
  if (!r.iii) return r;
  r.candidate = cover.mult_rank == params.d && r.ii.exact;
  return r;
}

}  // namespace pgg
