#include "pgg/galois_data.hpp"

#include "pgg/error.hpp"

#include <algorithm>
#include <utility>

namespace pgg {

namespace {

long long power_mod(long long a, unsigned long long e, long long m) {
  long long base = a % m;
  if (base < 0) base += m;
  long long r = 1 % m;
  while (e) {
    if (e & 1) r = static_cast<long long>((__int128)r * base % m);
    base = static_cast<long long>((__int128)base * base % m);
    e >>= 1;
  }
  return r;
}

void require_odd_prime(long long q) {
  if (q < 3 || !is_prime(static_cast<unsigned long long>(q)))
    throw StructuralError(std::to_string(q) + " is not an odd prime");
}

std::string pow2(unsigned k) { return std::to_string(1ull << k); }

}  // namespace

int legendre(long long a, long long q) {
  require_odd_prime(q);
  const long long r = power_mod(a, static_cast<unsigned long long>(q - 1) / 2, q);
  if (r == 0) return 0;
  return r == 1 ? 1 : -1;
}

bool is_fourth_power(long long a, long long q) {
  require_odd_prime(q);
  if (a % q == 0) return false;
  const unsigned long long m = static_cast<unsigned long long>(q - 1);
  const unsigned long long g = m % 4 == 0 ? 4 : 2;
  return power_mod(a, m / g, q) == 1;
}

unsigned two_adic_valuation(unsigned long long n) {
  if (n == 0) throw StructuralError("2-adic valuation of 0");
  unsigned k = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++k;
  }
  return k;
}

std::string case_name(PairCase c) {
  switch (c) {
    case PairCase::semidihedral: return "semidihedral";
    case PairCase::modular: return "modular";
    case PairCase::wreath_quartic: return "wreath_quartic";
    case PairCase::wreath_square: return "wreath_square";
    case PairCase::conjectural: return "conjectural";
    case PairCase::unclassified: return "unclassified";
  }
  return "unclassified";
}

PairClassification classify_pair(unsigned a, unsigned b, std::optional<unsigned> n) {
  if (a == b) throw StructuralError("the two primes must differ");
  require_odd_prime(a);
  require_odd_prime(b);
  PairClassification c;
  c.n = n;
  c.p = std::min(a, b);
  c.q = std::max(a, b);

  if (a % 4 == 3 && b % 4 == 3) {
    // Exactly one of the two is a square modulo the other.
    if (legendre(a, b) != 1) std::swap(a, b);
    c.kind = PairCase::semidihedral;
    c.p = a;
    c.q = b;
    c.k = two_adic_valuation(static_cast<unsigned long long>(b) * b - 1);
    c.order_exponent = c.k + 1;
    c.p_class = c.k;
    return c;
  }
  if (a % 4 == 1 && b % 4 == 1) return c;
  if (a % 4 == 1) std::swap(a, b);
  const unsigned p = a, q = b;
  const unsigned kq = two_adic_valuation(q - 1);
  const int chi = legendre(p, q);
  if (chi == -1) {
    c = {PairCase::modular, p, q, kq, kq + 2, kq + 1, n};
    return c;
  }
  const bool quartic = is_fourth_power(p, q);
  if (kq == 2 && quartic) {
    c = {PairCase::wreath_quartic, p, q, kq, 3 * kq + 1, 2 * kq, n};
    return c;
  }
  if (kq >= 3 && !quartic) {
    c = {PairCase::wreath_square, p, q, kq, 3 * kq + 1, 2 * kq, n};
    return c;
  }
  if (q % 8 == 5 && !quartic) {
    const unsigned k = two_adic_valuation(p + 1ull);
    c = {PairCase::conjectural, p, q, k, std::nullopt, std::nullopt, n};
    if (!n || *n == 4) {
      c.order_exponent = 5 * k + 9;
      c.p_class = 4 * k + 3;
    }
    return c;
  }
  return c;
}

std::vector<FpPresentation> predicted_presentations(const PairClassification& c) {
  const unsigned k = c.k;
  std::vector<std::string> texts;
  switch (c.kind) {
    case PairCase::semidihedral:
      texts.push_back("<a, b | a^2, b^" + pow2(k) + ", a^-1*b*a = b^" +
                      std::to_string((1ll << (k - 1)) - 1) + ">");
      break;
    case PairCase::modular:
      texts.push_back("<a, b | a^2, b^" + pow2(k + 1) + ", a^-1*b*a = b^" +
                      std::to_string((1ll << k) + 1) + ">");
      break;
    case PairCase::wreath_quartic:
    case PairCase::wreath_square:
      texts.push_back("<a, b | a^2, b^-1*a*b*a*b*a*b^" + std::to_string((1ll << k) - 1) + "*a>");
      break;
    case PairCase::conjectural:
      if (k != 2 || (c.n && *c.n != 4))
        throw StructuralError("no presentation is known for this pair (unknown)");
      texts.push_back("<a, b | a^2, b*a*b^2*a*b^-5*a*b^5*a*b^9*a*b^-1*a*b^5*a*b^-4*a>");
      texts.push_back("<a, b | a^2, b^-7*a*b^-6*a*b^3*a*b^-3*a*b*a*b^-1*a*b^-3*a*b^-4*a>");
      break;
    case PairCase::unclassified:
      throw StructuralError("no prediction for an unclassified pair");
  }
  std::vector<FpPresentation> out;
  for (const auto& t : texts) out.push_back(parse_fp_presentation(t));
  return out;
}

FpPresentation predicted_presentation(const PairClassification& c) {
  return predicted_presentations(c).front();
}

OrderClass conjecture_order_class(unsigned a, unsigned b, std::optional<unsigned> n) {
  const PairClassification c = classify_pair(a, b, n);
  if (c.kind != PairCase::conjectural)
    throw StructuralError("pair {" + std::to_string(a) + ", " + std::to_string(b) +
                          "} is " + case_name(c.kind) + ", not conjectural");
  if (n && *n != 4) throw StructuralError("no prediction when n = " + std::to_string(*n));
  return {5 * c.k + 9, 4 * c.k + 3};
}

bool golod_shafarevich_infinite(unsigned long long d, unsigned long long r) {
  return BigInt(4) * r <= BigInt(d) * d;
}

Rational hausdorff_ratio(unsigned level, unsigned order_exponent) {
  if (level == 0) throw StructuralError("levels start at 1");
  const BigInt full = (BigInt(1) << level) - 1;
  return Rational(BigInt(order_exponent), full);
}

std::vector<Rational> hausdorff_ratios(const std::vector<unsigned>& order_exponents) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < order_exponents.size(); ++i)
    out.push_back(hausdorff_ratio(static_cast<unsigned>(i + 1), order_exponents[i]));
  return out;
}

}  // namespace pgg
