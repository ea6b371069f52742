#ifndef PGG_TESTS_ORACLE_HPP
#define PGG_TESTS_ORACLE_HPP

// Brute-force reference computations on small groups held as Cayley tables.

#include "pgg/pcgroup.hpp"

#include <set>
#include <vector>

namespace oracle {

struct Table {
  std::vector<std::vector<int>> mul;
  int identity = 0;

  int order() const { return static_cast<int>(mul.size()); }
  int inv(int x) const;
  int element_order(int x) const;
  int pow(int x, long long n) const;
  int conj(int x, int y) const { return mul[mul[inv(y)][x]][y]; }  // y^-1 x y
};

using Perm = std::vector<int>;

Table from_permutations(const std::vector<Perm>& gens);
// Elements enumerated as all exponent vectors; index = mixed-radix code.
Table from_pc(const pgg::PcPresentation& g);
int pc_index(const pgg::PcPresentation& g, const pgg::PcElement& x);

bool isomorphic(const Table& a, const Table& b);
bool associative(const Table& t);

using Set = std::set<int>;
Set generated(const Table& t, const std::vector<int>& gens);
std::vector<Set> conjugacy_classes(const Table& t);
Set centralizer(const Table& t, int x);
// All subgroups of the given order.
std::vector<Set> subgroups_of_order(const Table& t, int order);
// Orders of the cyclic factors of H/[H,H], descending exponents of p.
std::vector<unsigned> abelianization_type(const Table& t, const Set& h, unsigned p);
// Frattini rank and p-class by brute force.
int frattini_rank(const Table& t, unsigned p);

}  // namespace oracle

#endif
