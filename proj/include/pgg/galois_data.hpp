#ifndef PGG_GALOIS_DATA_HPP
#define PGG_GALOIS_DATA_HPP

// Arithmetic of ramification sets S = {p, q}: Legendre symbols, the known
// families of 2-groups G_S, predicted orders, and two numeric screens.

#include "pgg/pcover.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>
#include <vector>

namespace pgg {

using Rational = boost::multiprecision::cpp_rational;

// a^((q-1)/2) mod q as -1, 0 or 1; q must be an odd prime.
int legendre(long long a, long long q);
// Whether a is a 4th power modulo the odd prime q (a coprime to q).
bool is_fourth_power(long long a, long long q);
// Largest k with 2^k dividing n (n > 0).
unsigned two_adic_valuation(unsigned long long n);

enum class PairCase { semidihedral, modular, wreath_quartic, wreath_square, conjectural, unclassified };

std::string case_name(PairCase c);

struct PairClassification {
  PairCase kind = PairCase::unclassified;
  unsigned p = 0, q = 0;  // roles after reordering; inputs in given order when unclassified
  unsigned k = 0;
  std::optional<unsigned> order_exponent;
  std::optional<unsigned> p_class;
  // 2-adic exponent n of the [2, 2^n] index-2 abelianization, when supplied.
  std::optional<unsigned> n;

  bool operator==(const PairClassification& o) const = default;
};

// Classifies S = {a, b}; symmetric in a and b. Errors on equal inputs or
// inputs that are not odd primes.
PairClassification classify_pair(unsigned a, unsigned b, std::optional<unsigned> n = {});

// The group predicted for a classified pair, as a finite presentation on a
// (complex conjugation) and b (inertia at q). Errors when none is known.
std::vector<FpPresentation> predicted_presentations(const PairClassification& c);
FpPresentation predicted_presentation(const PairClassification& c);

struct OrderClass {
  unsigned order_exponent;
  unsigned p_class;
  bool operator==(const OrderClass& o) const = default;
};
// (5k + 9, 4k + 3) for the conjectural family; errors for other pairs and
// when n is known and differs from 4.
OrderClass conjecture_order_class(unsigned a, unsigned b, std::optional<unsigned> n = {});

// A finite p-group on d generators needs more than d^2/4 relations.
bool golod_shafarevich_infinite(unsigned long long d, unsigned long long r);

// e_n / (2^n - 1) for levels n = 1, 2, ...
std::vector<Rational> hausdorff_ratios(const std::vector<unsigned>& order_exponents);
Rational hausdorff_ratio(unsigned level, unsigned order_exponent);

}  // namespace pgg

#endif  // PGG_GALOIS_DATA_HPP
