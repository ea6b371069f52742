#include "pgg/pcgroup.hpp"

#include "pgg/error.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pgg {

bool PcElement::is_identity() const {
  return std::all_of(e_.begin(), e_.end(), [](std::uint8_t x) { return x == 0; });
}

std::size_t PcElement::depth() const {
  for (std::size_t i = 0; i < e_.size(); ++i)
    if (e_[i]) return i;
  return e_.size();
}

PcElement PcElement::truncated(std::size_t k) const {
  return PcElement(FpVector(e_.begin(), e_.begin() + static_cast<std::ptrdiff_t>(std::min(k, e_.size()))));
}

PcElement PcElement::padded(std::size_t n) const {
  FpVector v = e_;
  v.resize(n, 0);
  return PcElement(std::move(v));
}

PcPresentation::PcPresentation(unsigned p, std::size_t n)
    : p_(p), n_(n), power_(n), conj_(n * (n == 0 ? 0 : n - 1) / 2), noncommuting_(n),
      central_from_(0) {
  if (!is_prime(p) || p > 251) throw StructuralError("unsupported prime " + std::to_string(p));
  nontrivial_.assign(n, 0);
}

PcPresentation::Sparse PcPresentation::sparse_of(const PcElement& x) {
  Sparse s;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k]) s.push_back({static_cast<std::uint32_t>(k), x[k]});
  return s;
}

void PcPresentation::check_rhs(const PcElement& rhs, std::size_t min_gen) const {
  if (rhs.size() != n_) throw StructuralError("relation right-hand side has wrong length");
  for (std::size_t k = 0; k < n_; ++k) {
    if (rhs[k] >= p_) throw StructuralError("exponent out of range in relation");
    if (rhs[k] && k < min_gen) throw StructuralError("relation right-hand side uses g" +
                                                     std::to_string(k + 1) + " out of order");
  }
}

PcElement PcPresentation::power(std::size_t i) const {
  PcElement x(n_);
  for (const Term& t : power_[i]) x[t.gen] = t.exp;
  return x;
}

PcElement PcPresentation::conjugate_relation(std::size_t j, std::size_t i) const {
  if (j <= i) throw StructuralError("conjugate relation needs j > i");
  const Sparse& s = conj_[index(j, i)];
  if (s.empty()) return generator(j);
  PcElement x(n_);
  for (const Term& t : s) x[t.gen] = t.exp;
  return x;
}

void PcPresentation::set_power(std::size_t i, const PcElement& rhs) {
  check_rhs(rhs, i + 1);
  const bool was = !power_[i].empty();
  power_[i] = sparse_of(rhs);
  const bool now = !power_[i].empty();
  if (was != now) nontrivial_[i] += now ? 1 : -1;
  refresh_central_from();
}

void PcPresentation::set_conjugate(std::size_t j, std::size_t i, const PcElement& rhs) {
  if (j <= i || j >= n_) throw StructuralError("conjugate relation needs j > i");
  check_rhs(rhs, i + 1);
  Sparse& slot = conj_[index(j, i)];
  const bool was = !slot.empty();
  const bool now = rhs != generator(j);
  slot = now ? sparse_of(rhs) : Sparse{};
  auto& nc = noncommuting_[i];
  auto it = std::lower_bound(nc.begin(), nc.end(), static_cast<std::uint32_t>(j));
  if (now && (it == nc.end() || *it != j)) nc.insert(it, static_cast<std::uint32_t>(j));
  if (!now && it != nc.end() && *it == j) nc.erase(it);
  if (was != now) {
    nontrivial_[i] += now ? 1 : -1;
    nontrivial_[j] += now ? 1 : -1;
  }
  refresh_central_from();
}

void PcPresentation::refresh_central_from() {
  std::size_t c = n_;
  while (c > 0 && nontrivial_[c - 1] == 0) --c;
  central_from_ = c;
}

void PcPresentation::set_weight(std::size_t i, unsigned w) {
  if (weight_.empty()) {
    weight_.assign(n_, 0);
    def_.assign(n_, Definition{});
  }
  weight_[i] = w;
}

void PcPresentation::set_definition(std::size_t i, Definition d) {
  if (weight_.empty()) {
    weight_.assign(n_, 0);
    def_.assign(n_, Definition{});
  }
  def_[i] = d;
}

void PcPresentation::clear_weights() {
  weight_.clear();
  def_.clear();
}

std::size_t PcPresentation::rank() const {
  if (!has_weights()) throw StructuralError("rank requires a weighted presentation");
  return static_cast<std::size_t>(std::count(weight_.begin(), weight_.end(), 1u));
}

unsigned PcPresentation::p_class() const {
  if (!has_weights()) throw StructuralError("p-class requires a weighted presentation");
  return weight_.empty() ? 0 : *std::max_element(weight_.begin(), weight_.end());
}

PcElement PcPresentation::generator(std::size_t i) const {
  if (i >= n_) throw StructuralError("unknown generator g" + std::to_string(i + 1));
  PcElement x(n_);
  x[i] = 1;
  return x;
}

namespace {
// Scratch stack for suffixes moved aside during collection.
std::vector<std::uint8_t>& stash_stack() {
  thread_local std::vector<std::uint8_t> s;
  return s;
}
}  // namespace

void PcPresentation::collect_sparse(std::uint8_t* e, const Sparse& w, std::size_t repeat) const {
  for (std::size_t r = 0; r < repeat; ++r)
    for (const Term& t : w)
      for (std::uint8_t k = 0; k < t.exp; ++k) collect_generator(e, t.gen);
}

// e := e * g_i. Moves g_i left through the suffix of e, which becomes
// conjugated by g_i; generators from central_from_ on commute with everything.
void PcPresentation::collect_generator(std::uint8_t* e, std::size_t i) const {
  if (i >= central_from_) {
    e[i] = static_cast<std::uint8_t>((e[i] + 1) % p_);
    return;
  }
  const std::size_t cf = central_from_;
  auto apply_power = [&] {
    for (const Term& t : power_[i]) {
      if (t.gen < cf)
        e[t.gen] = t.exp;
      else
        e[t.gen] = static_cast<std::uint8_t>((e[t.gen] + t.exp) % p_);
    }
  };
  bool clash = false;
  for (std::uint32_t j : noncommuting_[i])
    if (e[j]) {
      clash = true;
      break;
    }
  auto& stash = stash_stack();
  if (!clash) {
    if (++e[i] < p_) return;
    e[i] = 0;
    if (power_[i].empty()) return;
    const std::size_t base = stash.size();
    bool any = false;
    for (std::size_t k = i + 1; k < cf; ++k) {
      stash.push_back(e[k]);
      any = any || e[k];
      e[k] = 0;
    }
    apply_power();
    if (any)
      for (std::size_t k = i + 1; k < cf; ++k) {
        const std::uint8_t c = stash[base + (k - i - 1)];
        for (std::uint8_t r = 0; r < c; ++r) collect_generator(e, k);
      }
    stash.resize(base);
    return;
  }
  const std::size_t base = stash.size();
  for (std::size_t k = i + 1; k < cf; ++k) {
    stash.push_back(e[k]);
    e[k] = 0;
  }
  if (++e[i] == p_) {
    e[i] = 0;
    apply_power();
  }
  for (std::size_t k = i + 1; k < cf; ++k) {
    const std::uint8_t c = stash[base + (k - i - 1)];
    if (!c) continue;
    const Sparse& w = conj_[index(k, i)];
    if (w.empty())
      for (std::uint8_t r = 0; r < c; ++r) collect_generator(e, k);
    else
      collect_sparse(e, w, c);
  }
  stash.resize(base);
}

void PcPresentation::multiply_generator(PcElement& x, std::size_t i) const {
  collect_generator(x.exponents().data(), i);
}

void PcPresentation::multiply_in_place(PcElement& x, const PcElement& y) const {
  if (x.size() != n_ || y.size() != n_) throw StructuralError("element length mismatch");
  std::uint8_t* e = x.exponents().data();
  for (std::size_t k = 0; k < n_; ++k)
    for (std::uint8_t r = 0; r < y[k]; ++r) collect_generator(e, k);
}

PcElement PcPresentation::multiply(const PcElement& x, const PcElement& y) const {
  PcElement z = x;
  multiply_in_place(z, y);
  return z;
}

PcElement PcPresentation::inverse(const PcElement& x) const {
  PcElement r = x, out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const std::uint8_t c = r[i];
    if (!c) continue;
    const unsigned k = p_ - c;
    for (unsigned t = 0; t < k; ++t) collect_generator(r.exponents().data(), i);
    out[i] = static_cast<std::uint8_t>(k);
  }
  return out;
}

PcElement PcPresentation::pow(const PcElement& x, long long m) const {
  if (m < 0) {
    const unsigned long long ord = order_of(x);
    m %= static_cast<long long>(ord);
    if (m < 0) m += static_cast<long long>(ord);
  }
  PcElement result = identity(), base = x;
  unsigned long long e = static_cast<unsigned long long>(m);
  while (e) {
    if (e & 1ull) multiply_in_place(result, base);
    e >>= 1;
    if (e) base = multiply(base, base);
  }
  return result;
}

PcElement PcPresentation::conjugate(const PcElement& x, const PcElement& y) const {
  return multiply(multiply(inverse(y), x), y);
}

PcElement PcPresentation::commutator(const PcElement& x, const PcElement& y) const {
  return multiply(inverse(x), conjugate(x, y));
}

PcElement PcPresentation::evaluate(const Word& w) const {
  PcElement e = identity();
  for (const Letter& l : w) {
    if (l.gen >= n_) throw StructuralError("unknown generator g" + std::to_string(l.gen + 1));
    if (l.power == 0) continue;
    if (l.power > 0 && l.power < static_cast<long long>(p_)) {
      for (long long r = 0; r < l.power; ++r) collect_generator(e.exponents().data(), l.gen);
    } else {
      multiply_in_place(e, pow(generator(l.gen), l.power));
    }
  }
  return e;
}

unsigned PcPresentation::order_exponent_of(const PcElement& x) const {
  unsigned k = 0;
  PcElement y = x;
  while (!y.is_identity()) {
    PcElement z = y;
    for (unsigned r = 1; r < p_; ++r) multiply_in_place(z, y);
    y = std::move(z);
    ++k;
  }
  return k;
}

unsigned long long PcPresentation::order_of(const PcElement& x) const {
  unsigned long long o = 1;
  for (unsigned k = order_exponent_of(x); k > 0; --k) o *= p_;
  return o;
}

Word PcPresentation::word_of(const PcElement& x) const {
  Word w;
  for (std::size_t k = 0; k < x.size(); ++k)
    if (x[k]) w.push_back({k, x[k]});
  return w;
}

// --- consistency ------------------------------------------------------------

void for_each_consistency_test(
    const PcPresentation& g,
    const std::function<void(const std::string&, const PcElement&, const PcElement&)>& visit,
    const std::function<bool(std::size_t, std::size_t, std::size_t)>& wanted,
    std::size_t limit) {
  const std::size_t n = std::min(g.size(), limit);
  const unsigned p = g.prime();
  auto gen = [&](std::size_t k) { return g.generator(k); };
  auto gen_pow = [&](std::size_t k, unsigned e) {
    PcElement x(g.size());
    x[k] = static_cast<std::uint8_t>(e);
    return x;
  };
  auto name = [](std::size_t k) { return "g" + std::to_string(k + 1); };
  const std::size_t none = static_cast<std::size_t>(-1);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t i = 0; i < j; ++i) {
        if (wanted && !wanted(k, j, i)) continue;
        PcElement lhs = g.multiply(g.multiply(gen(k), gen(j)), gen(i));
        PcElement rhs = g.multiply(gen(k), g.multiply(gen(j), gen(i)));
        visit("(" + name(k) + "*" + name(j) + ")*" + name(i), lhs, rhs);
      }
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) {
      if (wanted && !wanted(j, j, i)) continue;
      PcElement lhs = g.multiply(g.power(j), gen(i));
      PcElement rhs = g.multiply(gen_pow(j, p - 1), g.multiply(gen(j), gen(i)));
      visit("(" + name(j) + "^" + std::to_string(p) + ")*" + name(i), lhs, rhs);
      if (wanted && !wanted(j, i, i)) continue;
      PcElement lhs2 = g.multiply(gen(j), g.power(i));
      PcElement rhs2 = g.multiply(g.multiply(gen(j), gen(i)), gen_pow(i, p - 1));
      visit(name(j) + "*(" + name(i) + "^" + std::to_string(p) + ")", lhs2, rhs2);
    }
  for (std::size_t i = 0; i < n; ++i) {
    if (wanted && !wanted(i, i, none)) continue;
    PcElement lhs = g.multiply(g.power(i), gen(i));
    PcElement rhs = g.multiply(gen(i), g.power(i));
    visit("(" + name(i) + "^" + std::to_string(p) + ")*" + name(i), lhs, rhs);
  }
}

ConsistencyReport check_consistency(const PcPresentation& g) {
  ConsistencyReport report;
  for_each_consistency_test(
      g,
      [&](const std::string& test, const PcElement& lhs, const PcElement& rhs) {
        if (report.consistent && lhs != rhs) {
          report.consistent = false;
          report.failing_test = test;
        }
      },
      nullptr);
  return report;
}

bool is_consistent(const PcPresentation& g) { return check_consistency(g).consistent; }

std::string weighted_violation(const PcPresentation& g) {
  if (!g.has_weights()) return "presentation carries no weights";
  const std::size_t n = g.size();
  auto name = [](std::size_t k) { return "g" + std::to_string(k + 1); };
  for (std::size_t k = 0; k < n; ++k) {
    const unsigned w = g.weight(k);
    if (w == 0) return name(k) + " has weight 0";
    if (k > 0 && w < g.weight(k - 1)) return "weights decrease at " + name(k);
    const Definition& d = g.definition(k);
    if (w == 1) {
      if (d.kind != Definition::Kind::none) return name(k) + " has weight 1 but a definition";
      continue;
    }
    if (d.kind == Definition::Kind::none) return name(k) + " has no definition";
    PcElement rhs;
    if (d.kind == Definition::Kind::power) {
      if (d.a >= k || g.weight(d.a) + 1 != w) return name(k) + ": bad power definition";
      rhs = g.power(d.a);
    } else {
      if (d.a >= k || d.b >= d.a || g.weight(d.a) + g.weight(d.b) != w)
        return name(k) + ": bad conjugate definition";
      rhs = g.conjugate_relation(d.a, d.b);
    }
    if (rhs[k] != 1) return name(k) + " does not occur in its defining relation";
    for (std::size_t t = k + 1; t < n; ++t)
      if (rhs[t]) return name(k) + " is not last in its defining relation";
  }
  for (std::size_t i = 0; i < n; ++i) {
    const PcElement pw = g.power(i);
    for (std::size_t t = 0; t < n; ++t)
      if (pw[t] && g.weight(t) < g.weight(i) + 1)
        return "power relation of " + name(i) + " violates weights";
    for (std::size_t j = i + 1; j < n; ++j) {
      const PcElement c = g.conjugate_relation(j, i);
      if (c[j] != 1) return "conjugate relation " + name(j) + "^" + name(i) + " lost " + name(j);
      for (std::size_t t = 0; t < n; ++t)
        if (t != j && c[t] && g.weight(t) < g.weight(i) + g.weight(j))
          return "conjugate relation " + name(j) + "^" + name(i) + " violates weights";
    }
  }
  return {};
}

// --- text format ------------------------------------------------------------

std::string format_element(const PcPresentation& g, const PcElement& x) {
  std::string s;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (!x[k]) continue;
    if (!s.empty()) s += "*";
    s += "g" + std::to_string(k + 1);
    if (x[k] != 1) s += "^" + std::to_string(x[k]);
  }
  (void)g;
  return s.empty() ? "1" : s;
}

std::string format_presentation(const PcPresentation& g) {
  std::ostringstream out;
  const std::size_t n = g.size();
  out << "group p=" << g.prime() << " n=" << n << "\n";
  auto name = [](std::size_t k) { return "g" + std::to_string(k + 1); };
  if (g.has_weights())
    for (std::size_t k = 0; k < n; ++k) {
      out << name(k) << " ; w=" << g.weight(k);
      const Definition& d = g.definition(k);
      if (d.kind == Definition::Kind::power) out << " def=pow(" << name(d.a) << ")";
      if (d.kind == Definition::Kind::conjugate)
        out << " def=comm(" << name(d.a) << "," << name(d.b) << ")";
      out << "\n";
    }
  for (std::size_t i = 0; i < n; ++i)
    if (!g.power_trivial(i))
      out << name(i) << "^" << g.prime() << " = " << format_element(g, g.power(i)) << "\n";
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i)
      if (!g.conjugate_trivial(j, i))
        out << name(j) << "^" << name(i) << " = "
            << format_element(g, g.conjugate_relation(j, i)) << "\n";
  return out.str();
}

namespace {

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

std::string strip_spaces(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

// "g12" -> 11
std::size_t parse_gen_name(const std::string& s, std::size_t n) {
  if (s.size() < 2 || s[0] != 'g') throw ParseError("expected generator name, got '" + s + "'");
  for (std::size_t k = 1; k < s.size(); ++k)
    if (!std::isdigit(static_cast<unsigned char>(s[k])))
      throw ParseError("bad generator name '" + s + "'");
  const unsigned long v = std::stoul(s.substr(1));
  if (v == 0 || v > n) throw ParseError("generator '" + s + "' out of range");
  return v - 1;
}

long long parse_int(const std::string& s) {
  if (s.empty()) throw ParseError("missing integer");
  std::size_t pos = 0;
  long long v;
  try {
    v = std::stoll(s, &pos);
  } catch (const std::exception&) {
    throw ParseError("bad integer '" + s + "'");
  }
  if (pos != s.size()) throw ParseError("bad integer '" + s + "'");
  return v;
}

}  // namespace

Word parse_pc_word(const std::string& text, std::size_t n) {
  const std::string s = strip_spaces(text);
  Word w;
  if (s == "1" || s.empty()) return w;
  std::size_t start = 0;
  while (start <= s.size()) {
    std::size_t end = s.find('*', start);
    if (end == std::string::npos) end = s.size();
    const std::string factor = s.substr(start, end - start);
    const std::size_t caret = factor.find('^');
    const std::size_t gen = parse_gen_name(factor.substr(0, caret), n);
    const long long e = caret == std::string::npos ? 1 : parse_int(factor.substr(caret + 1));
    w.push_back({gen, e});
    start = end + 1;
    if (end == s.size()) break;
  }
  return w;
}

PcPresentation parse_presentation(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  PcPresentation g;
  bool have_header = false;
  bool weighted = false;
  auto fail = [&](const std::string& msg) -> ParseError {
    return ParseError("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    if (!have_header) {
      std::istringstream h(line);
      std::string kw, ps, ns;
      h >> kw >> ps >> ns;
      if (kw != "group" || ps.rfind("p=", 0) != 0 || ns.rfind("n=", 0) != 0)
        throw fail("expected 'group p=<prime> n=<count>'");
      const long long p = parse_int(ps.substr(2));
      const long long n = parse_int(ns.substr(2));
      if (p < 2 || p > 251 || !is_prime(static_cast<unsigned long long>(p)))
        throw fail("p must be a prime below 256");
      if (n < 0 || n > 4096) throw fail("bad generator count");
      g = PcPresentation(static_cast<unsigned>(p), static_cast<std::size_t>(n));
      have_header = true;
      continue;
    }
    const std::size_t n = g.size();
    const std::size_t semi = line.find(';');
    const std::size_t eq = line.find('=');
    if (semi != std::string::npos && (eq == std::string::npos || eq > semi)) {
      // generator annotation: gK ; w=W [def=pow(gA)|def=comm(gA,gB)]
      const std::size_t k = parse_gen_name(strip_spaces(line.substr(0, semi)), n);
      std::istringstream ann(line.substr(semi + 1));
      std::string tok;
      bool have_w = false;
      while (ann >> tok) {
        if (tok.rfind("w=", 0) == 0) {
          const long long w = parse_int(tok.substr(2));
          if (w < 1) throw fail("weights must be positive");
          g.set_weight(k, static_cast<unsigned>(w));
          have_w = true;
        } else if (tok.rfind("def=pow(", 0) == 0 && tok.back() == ')') {
          const std::size_t a = parse_gen_name(tok.substr(8, tok.size() - 9), n);
          g.set_definition(k, {Definition::Kind::power, a, 0});
        } else if (tok.rfind("def=comm(", 0) == 0 && tok.back() == ')') {
          const std::string args = tok.substr(9, tok.size() - 10);
          const std::size_t comma = args.find(',');
          if (comma == std::string::npos) throw fail("def=comm needs two generators");
          const std::size_t a = parse_gen_name(args.substr(0, comma), n);
          const std::size_t b = parse_gen_name(args.substr(comma + 1), n);
          g.set_definition(k, {Definition::Kind::conjugate, a, b});
        } else {
          throw fail("unknown annotation '" + tok + "'");
        }
      }
      if (!have_w) throw fail("generator annotation without weight");
      weighted = true;
      continue;
    }
    if (eq == std::string::npos) throw fail("expected a relation");
    const std::string lhs = strip_spaces(line.substr(0, eq));
    const std::string rhs_text = line.substr(eq + 1);
    const std::size_t caret = lhs.find('^');
    if (caret == std::string::npos) throw fail("relation left side must be gI^p or gJ^gI");
    const std::size_t j = parse_gen_name(lhs.substr(0, caret), n);
    const std::string e = lhs.substr(caret + 1);
    PcElement rhs(n);
    std::size_t last = 0;
    bool first = true;
    for (const Letter& l : parse_pc_word(rhs_text, n)) {
      if (l.power <= 0 || l.power >= static_cast<long long>(g.prime()))
        throw fail("right-hand side must be a normal word");
      if (!first && l.gen <= last) throw fail("right-hand side must be a normal word");
      rhs[l.gen] = static_cast<std::uint8_t>(l.power);
      last = l.gen;
      first = false;
    }
    try {
      if (!e.empty() && e[0] == 'g') {
        const std::size_t i = parse_gen_name(e, n);
        if (j <= i) throw fail("conjugate relation gJ^gI needs J > I");
        g.set_conjugate(j, i, rhs);
      } else {
        if (parse_int(e) != static_cast<long long>(g.prime()))
          throw fail("power relation exponent must equal p");
        g.set_power(j, rhs);
      }
    } catch (const StructuralError& err) {
      throw fail(err.what());
    }
  }
  if (!have_header) throw ParseError("missing 'group' header");
  if (weighted) {
    for (std::size_t k = 0; k < g.size(); ++k)
      if (g.weight(k) == 0) throw ParseError("g" + std::to_string(k + 1) + " lacks a weight");
  }
  return g;
}

// --- abelian types ----------------------------------------------------------

AbelianType::AbelianType(std::vector<unsigned> exponents) {
  for (unsigned e : exponents)
    if (e > 0) e_.push_back(e);
  std::sort(e_.begin(), e_.end(), std::greater<>());
}

AbelianType AbelianType::parse(const std::string& text, unsigned p) {
  std::string s = strip_spaces(text);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw ParseError("abelian type must look like [2, 2, 16]");
  s = s.substr(1, s.size() - 2);
  std::vector<unsigned> e;
  std::size_t start = 0;
  while (!s.empty() && start <= s.size()) {
    std::size_t end = s.find(',', start);
    if (end == std::string::npos) end = s.size();
    long long order = parse_int(s.substr(start, end - start));
    if (order < 1) throw ParseError("cyclic orders must be positive");
    unsigned k = 0;
    while (order % p == 0) {
      order /= p;
      ++k;
    }
    if (order != 1) throw ParseError("cyclic order is not a power of " + std::to_string(p));
    e.push_back(k);
    start = end + 1;
    if (end == s.size()) break;
  }
  return AbelianType(std::move(e));
}

unsigned AbelianType::total_exponent() const {
  unsigned t = 0;
  for (unsigned e : e_) t += e;
  return t;
}

std::string AbelianType::render(unsigned p) const {
  std::string s = "[";
  for (std::size_t i = e_.size(); i-- > 0;) {
    BigInt order = 1;
    for (unsigned k = 0; k < e_[i]; ++k) order *= p;
    s += order.str();
    if (i) s += ", ";
  }
  return s + "]";
}

}  // namespace pgg
