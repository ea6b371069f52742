#include "oracle.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <queue>
#include <stdexcept>

namespace oracle {

int Table::inv(int x) const {
  for (int y = 0; y < order(); ++y)
    if (mul[x][y] == identity) return y;
  throw std::logic_error("no inverse");
}

int Table::element_order(int x) const {
  int k = 1, y = x;
  while (y != identity) {
    y = mul[y][x];
    ++k;
  }
  return k;
}

int Table::pow(int x, long long n) const {
  const int o = element_order(x);
  n %= o;
  if (n < 0) n += o;
  int y = identity;
  for (long long k = 0; k < n; ++k) y = mul[y][x];
  return y;
}

Table from_permutations(const std::vector<Perm>& gens) {
  const std::size_t deg = gens.at(0).size();
  Perm id(deg);
  for (std::size_t i = 0; i < deg; ++i) id[i] = static_cast<int>(i);
  std::map<Perm, int> index{{id, 0}};
  std::vector<Perm> elems{id};
  auto compose = [&](const Perm& a, const Perm& b) {  // a then b
    Perm c(deg);
    for (std::size_t i = 0; i < deg; ++i) c[i] = b[a[i]];
    return c;
  };
  for (std::size_t k = 0; k < elems.size(); ++k)
    for (const Perm& g : gens) {
      Perm c = compose(elems[k], g);
      if (!index.count(c)) {
        index[c] = static_cast<int>(elems.size());
        elems.push_back(c);
      }
    }
  Table t;
  t.mul.assign(elems.size(), std::vector<int>(elems.size()));
  for (std::size_t a = 0; a < elems.size(); ++a)
    for (std::size_t b = 0; b < elems.size(); ++b)
      t.mul[a][b] = index.at(compose(elems[a], elems[b]));
  return t;
}

int pc_index(const pgg::PcPresentation& g, const pgg::PcElement& x) {
  int code = 0;
  for (std::size_t k = 0; k < g.size(); ++k) code = code * static_cast<int>(g.prime()) + x[k];
  return code;
}

Table from_pc(const pgg::PcPresentation& g) {
  int total = 1;
  for (std::size_t k = 0; k < g.size(); ++k) total *= static_cast<int>(g.prime());
  std::vector<pgg::PcElement> elems;
  for (int code = 0; code < total; ++code) {
    pgg::PcElement x(g.size());
    int c = code;
    for (std::size_t k = g.size(); k-- > 0;) {
      x[k] = static_cast<std::uint8_t>(c % static_cast<int>(g.prime()));
      c /= static_cast<int>(g.prime());
    }
    elems.push_back(x);
  }
  Table t;
  t.mul.assign(total, std::vector<int>(total));
  for (int a = 0; a < total; ++a)
    for (int b = 0; b < total; ++b) t.mul[a][b] = pc_index(g, g.multiply(elems[a], elems[b]));
  return t;
}

bool associative(const Table& t) {
  const int n = t.order();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        if (t.mul[t.mul[a][b]][c] != t.mul[a][t.mul[b][c]]) return false;
  return true;
}

Set generated(const Table& t, const std::vector<int>& gens) {
  Set s{t.identity};
  std::vector<int> todo{t.identity};
  while (!todo.empty()) {
    const int x = todo.back();
    todo.pop_back();
    for (int g : gens) {
      const int y = t.mul[x][g];
      if (s.insert(y).second) todo.push_back(y);
    }
  }
  return s;
}

bool isomorphic(const Table& a, const Table& b) {
  if (a.order() != b.order()) return false;
  const int n = a.order();
  std::vector<int> by_order(n);
  for (int x = 0; x < n; ++x) by_order[x] = x;
  std::sort(by_order.begin(), by_order.end(),
            [&](int x, int y) { return a.element_order(x) > a.element_order(y); });
  std::vector<int> gens;
  Set span{a.identity};
  for (int x : by_order)
    if (!span.count(x)) {
      gens.push_back(x);
      span = generated(a, gens);
    }
  std::vector<int> aorder(n), border(n);
  for (int x = 0; x < n; ++x) {
    aorder[x] = a.element_order(x);
    border[x] = b.element_order(x);
  }
  std::vector<int> images(gens.size());
  std::function<bool(std::size_t)> search = [&](std::size_t k) -> bool {
    if (k == gens.size()) {
      std::vector<int> map(n, -1);
      map[a.identity] = b.identity;
      std::vector<int> todo{a.identity};
      while (!todo.empty()) {
        const int x = todo.back();
        todo.pop_back();
        for (std::size_t g = 0; g < gens.size(); ++g) {
          const int y = a.mul[x][gens[g]];
          const int fy = b.mul[map[x]][images[g]];
          if (map[y] == -1) {
            map[y] = fy;
            todo.push_back(y);
          } else if (map[y] != fy) {
            return false;
          }
        }
      }
      std::vector<bool> hit(n, false);
      for (int x = 0; x < n; ++x) {
        if (hit[map[x]]) return false;
        hit[map[x]] = true;
      }
      return true;
    }
    for (int y = 0; y < n; ++y) {
      if (border[y] != aorder[gens[k]]) continue;
      images[k] = y;
      if (search(k + 1)) return true;
    }
    return false;
  };
  return search(0);
}

std::vector<Set> conjugacy_classes(const Table& t) {
  std::vector<bool> seen(t.order(), false);
  std::vector<Set> out;
  for (int x = 0; x < t.order(); ++x) {
    if (seen[x]) continue;
    Set cls;
    for (int y = 0; y < t.order(); ++y) cls.insert(t.conj(x, y));
    for (int z : cls) seen[z] = true;
    out.push_back(cls);
  }
  return out;
}

Set centralizer(const Table& t, int x) {
  Set c;
  for (int y = 0; y < t.order(); ++y)
    if (t.mul[x][y] == t.mul[y][x]) c.insert(y);
  return c;
}

std::vector<Set> subgroups_of_order(const Table& t, int order) {
  std::set<Set> all;
  std::vector<Set> cyclic;
  for (int x = 0; x < t.order(); ++x) {
    Set c = generated(t, {x});
    if (all.insert(c).second) cyclic.push_back(c);
  }
  std::vector<Set> frontier(all.begin(), all.end());
  while (!frontier.empty()) {
    std::vector<Set> next;
    for (const Set& a : frontier)
      for (const Set& c : cyclic) {
        if (std::includes(a.begin(), a.end(), c.begin(), c.end())) continue;
        std::vector<int> gens(a.begin(), a.end());
        gens.insert(gens.end(), c.begin(), c.end());
        Set j = generated(t, gens);
        if (static_cast<int>(j.size()) > order) continue;
        if (all.insert(j).second) next.push_back(j);
      }
    frontier = std::move(next);
  }
  std::vector<Set> out;
  for (const Set& s : all)
    if (static_cast<int>(s.size()) == order) out.push_back(s);
  return out;
}

std::vector<unsigned> abelianization_type(const Table& t, const Set& h, unsigned p) {
  std::vector<int> comms;
  for (int x : h)
    for (int y : h) comms.push_back(t.mul[t.inv(x)][t.conj(x, y)]);
  const Set d = generated(t, comms);
  // |{hD : (hD)^(p^k) = D}| for k = 0, 1, ...
  std::vector<int> log_omega;
  for (int k = 0;; ++k) {
    long long pk = 1;
    for (int i = 0; i < k; ++i) pk *= p;
    int count = 0;
    for (int x : h)
      if (d.count(t.pow(x, pk))) ++count;
    int q = count / static_cast<int>(d.size()), e = 0;
    while (q > 1) {
      q /= static_cast<int>(p);
      ++e;
    }
    log_omega.push_back(e);
    if (count == static_cast<int>(h.size())) break;
  }
  // number of factors with exponent >= k is log_omega[k] - log_omega[k-1]
  std::vector<unsigned> exps;
  for (std::size_t k = log_omega.size() - 1; k >= 1; --k) {
    const int at_least_k = log_omega[k] - log_omega[k - 1];
    const int at_least_k1 = k + 1 < log_omega.size() ? log_omega[k + 1] - log_omega[k] : 0;
    for (int r = 0; r < at_least_k - at_least_k1; ++r) exps.push_back(static_cast<unsigned>(k));
  }
  return exps;
}

int frattini_rank(const Table& t, unsigned p) {
  std::vector<int> gens;
  for (int x = 0; x < t.order(); ++x) {
    gens.push_back(t.pow(x, p));
    for (int y = 0; y < t.order(); ++y) gens.push_back(t.mul[t.inv(x)][t.conj(x, y)]);
  }
  int q = t.order() / static_cast<int>(generated(t, gens).size()), r = 0;
  while (q > 1) {
    q /= static_cast<int>(p);
    ++r;
  }
  return r;
}

}  // namespace oracle
