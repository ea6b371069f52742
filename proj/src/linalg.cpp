#include "pgg/linalg.hpp"

#include "pgg/error.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace pgg {

bool is_prime(unsigned long long n) {
  if (n < 2) return false;
  for (unsigned long long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

unsigned fp_inverse(unsigned a, unsigned p) {
  a %= p;
  if (a == 0) throw StructuralError("inverse of zero in F_" + std::to_string(p));
  unsigned result = 1, base = a, e = p - 2;
  while (e) {
    if (e & 1u) result = result * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return result;
}

FpMatrix::FpMatrix(unsigned p, std::size_t rows, std::size_t cols)
    : p_(p), rows_(rows), cols_(cols), words_((cols + 63) / 64) {
  if (p < 2 || p > 251 || !is_prime(p)) throw StructuralError("unsupported prime " + std::to_string(p));
  if (p == 2)
    bits_.assign(rows * words_, 0);
  else
    bytes_.assign(rows * cols, 0);
}

FpMatrix FpMatrix::identity(unsigned p, std::size_t n) {
  FpMatrix m(p, n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

FpMatrix FpMatrix::from_rows(unsigned p, std::size_t cols, const std::vector<FpVector>& rows) {
  FpMatrix m(p, 0, cols);
  for (const auto& r : rows) m.append_row(r);
  return m;
}

void FpMatrix::set(std::size_t r, std::size_t c, unsigned v) {
  v %= p_;
  if (p_ == 2) {
    std::uint64_t& w = bits_[r * words_ + c / 64];
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    w = v ? (w | bit) : (w & ~bit);
  } else {
    bytes_[r * cols_ + c] = static_cast<std::uint8_t>(v);
  }
}

void FpMatrix::add_row_multiple(std::size_t dst, std::size_t src, unsigned factor) {
  add_row_multiple_from(dst, *this, src, factor);
}

void FpMatrix::add_row_multiple_from(std::size_t dst, const FpMatrix& other, std::size_t src,
                                     unsigned factor) {
  factor %= p_;
  if (factor == 0) return;
  if (p_ == 2) {
    std::uint64_t* d = &bits_[dst * words_];
    const std::uint64_t* s = &other.bits_[src * words_];
    for (std::size_t w = 0; w < words_; ++w) d[w] ^= s[w];
    return;
  }
  std::uint8_t* d = &bytes_[dst * cols_];
  const std::uint8_t* s = &other.bytes_[src * cols_];
  for (std::size_t c = 0; c < cols_; ++c)
    if (s[c]) d[c] = static_cast<std::uint8_t>((d[c] + factor * s[c]) % p_);
}

void FpMatrix::scale_row(std::size_t r, unsigned factor) {
  factor %= p_;
  if (p_ == 2) {
    if (factor == 0) std::fill_n(&bits_[r * words_], words_, 0);
    return;
  }
  for (std::size_t c = 0; c < cols_; ++c)
    bytes_[r * cols_ + c] = static_cast<std::uint8_t>(bytes_[r * cols_ + c] * factor % p_);
}

void FpMatrix::swap_rows(std::size_t a, std::size_t b) {
  if (a == b) return;
  if (p_ == 2)
    std::swap_ranges(&bits_[a * words_], &bits_[a * words_] + words_, &bits_[b * words_]);
  else
    std::swap_ranges(&bytes_[a * cols_], &bytes_[a * cols_] + cols_, &bytes_[b * cols_]);
}

bool FpMatrix::row_is_zero(std::size_t r) const { return leading_column(r) == cols_; }

std::size_t FpMatrix::leading_column(std::size_t r) const {
  if (p_ == 2) {
    for (std::size_t w = 0; w < words_; ++w) {
      const std::uint64_t x = bits_[r * words_ + w];
      if (x) return w * 64 + static_cast<std::size_t>(__builtin_ctzll(x));
    }
    return cols_;
  }
  for (std::size_t c = 0; c < cols_; ++c)
    if (bytes_[r * cols_ + c]) return c;
  return cols_;
}

void FpMatrix::append_row(const FpVector& v) {
  if (v.size() != cols_) throw StructuralError("row length mismatch");
  if (p_ == 2) {
    bits_.resize(bits_.size() + words_, 0);
  } else {
    bytes_.resize(bytes_.size() + cols_, 0);
  }
  ++rows_;
  for (std::size_t c = 0; c < cols_; ++c)
    if (v[c] % p_) set(rows_ - 1, c, v[c]);
}

void FpMatrix::append_row_from(const FpMatrix& other, std::size_t r) {
  if (other.cols_ != cols_ || other.p_ != p_) throw StructuralError("row shape mismatch");
  if (p_ == 2)
    bits_.insert(bits_.end(), &other.bits_[r * words_], &other.bits_[r * words_] + words_);
  else
    bytes_.insert(bytes_.end(), &other.bytes_[r * cols_], &other.bytes_[r * cols_] + cols_);
  ++rows_;
}

void FpMatrix::truncate_rows(std::size_t n) {
  if (n >= rows_) return;
  rows_ = n;
  if (p_ == 2)
    bits_.resize(rows_ * words_);
  else
    bytes_.resize(rows_ * cols_);
}

FpVector FpMatrix::row(std::size_t r) const {
  FpVector v(cols_);
  for (std::size_t c = 0; c < cols_; ++c) v[c] = static_cast<std::uint8_t>(at(r, c));
  return v;
}

FpMatrix FpMatrix::operator*(const FpMatrix& rhs) const {
  if (cols_ != rhs.rows_ || p_ != rhs.p_) throw StructuralError("matrix product shape mismatch");
  FpMatrix out(p_, rows_, rhs.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const unsigned a = at(r, k);
      if (a) out.add_row_multiple_from(r, rhs, k, a);
    }
  return out;
}

FpVector FpMatrix::apply_row(const FpVector& v) const {
  FpMatrix row(p_, 0, rows_);
  row.append_row(v);
  return (row * *this).row(0);
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix t(p_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c)
      if (unsigned v = at(r, c)) t.set(c, r, v);
  return t;
}

bool FpMatrix::operator<(const FpMatrix& o) const {
  if (rows_ != o.rows_) return rows_ < o.rows_;
  if (cols_ != o.cols_) return cols_ < o.cols_;
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) {
      const unsigned a = at(r, c), b = o.at(r, c);
      if (a != b) return a < b;
    }
  return false;
}

std::string FpMatrix::bytes() const {
  std::string s;
  if (p_ == 2) {
    s.resize(bits_.size() * sizeof(std::uint64_t));
    std::copy_n(reinterpret_cast<const char*>(bits_.data()), s.size(), s.data());
  } else {
    s.assign(bytes_.begin(), bytes_.end());
  }
  return s;
}

Echelon rref(FpMatrix m) {
  const unsigned p = m.prime();
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t sel = row;
    while (sel < m.rows() && m.at(sel, col) == 0) ++sel;
    if (sel == m.rows()) continue;
    m.swap_rows(sel, row);
    m.scale_row(row, fp_inverse(m.at(row, col), p));
    for (std::size_t r = 0; r < m.rows(); ++r)
      if (r != row)
        if (unsigned v = m.at(r, col)) m.add_row_multiple(r, row, p - v);
    pivots.push_back(col);
    ++row;
  }
  return {std::move(m), std::move(pivots)};
}

std::size_t rank(const FpMatrix& m) { return rref(m).pivots.size(); }

FpMatrix matrix_inverse(const FpMatrix& a) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw StructuralError("inverse of a non-square matrix");
  const unsigned p = a.prime();
  FpMatrix aug(p, n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug.set(r, c, a.at(r, c));
    aug.set(r, n + r, 1);
  }
  const Echelon e = rref(std::move(aug));
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1)
    throw StructuralError("matrix is singular");
  FpMatrix inv(p, n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv.set(r, c, e.matrix.at(r, n + c));
  return inv;
}

Subspace::Subspace(unsigned p, std::size_t ambient) : basis_(p, 0, ambient) {}

Subspace Subspace::spanned_by(const FpMatrix& rows) {
  Echelon e = rref(rows);
  Subspace s;
  s.basis_ = std::move(e.matrix);
  s.basis_.truncate_rows(e.pivots.size());
  s.pivots_ = std::move(e.pivots);
  return s;
}

Subspace Subspace::whole(unsigned p, std::size_t ambient) {
  return coordinate(p, ambient, 0, ambient);
}

Subspace Subspace::coordinate(unsigned p, std::size_t ambient, std::size_t first,
                              std::size_t count) {
  Subspace s(p, ambient);
  for (std::size_t i = 0; i < count; ++i) {
    FpVector v(ambient, 0);
    v[first + i] = 1;
    s.basis_.append_row(v);
    s.pivots_.push_back(first + i);
  }
  return s;
}

FpVector Subspace::reduce(FpVector v) const {
  const unsigned p = prime();
  for (std::size_t r = 0; r < pivots_.size(); ++r) {
    const unsigned c = v[pivots_[r]] % p;
    if (!c) continue;
    for (std::size_t k = pivots_[r]; k < v.size(); ++k)
      if (unsigned b = basis_.at(r, k)) v[k] = static_cast<std::uint8_t>((v[k] + (p - c) * b) % p);
  }
  return v;
}

bool Subspace::contains(const FpVector& v) const {
  if (v.size() != ambient_dim()) throw StructuralError("ambient dimension mismatch");
  const FpVector r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](std::uint8_t x) { return x == 0; });
}

bool Subspace::contains(const Subspace& s) const {
  check_compatible(s);
  for (std::size_t r = 0; r < s.dim(); ++r)
    if (!contains(s.basis_.row(r))) return false;
  return true;
}

void Subspace::check_compatible(const Subspace& o) const {
  if (o.ambient_dim() != ambient_dim() || o.prime() != prime())
    throw StructuralError("subspace ambient mismatch");
}

Subspace Subspace::sum(const Subspace& o) const {
  check_compatible(o);
  FpMatrix m = basis_;
  for (std::size_t r = 0; r < o.dim(); ++r) m.append_row_from(o.basis_, r);
  return spanned_by(m);
}

Subspace Subspace::intersection(const Subspace& o) const {
  check_compatible(o);
  // Zassenhaus: rows [a | a] and [b | 0]; echelon rows with zero left half
  // span the intersection in their right half.
  const std::size_t n = ambient_dim();
  const unsigned p = prime();
  FpMatrix z(p, 0, 2 * n);
  for (std::size_t r = 0; r < dim(); ++r) {
    FpVector v(2 * n, 0);
    for (std::size_t c = 0; c < n; ++c) v[c] = v[n + c] = static_cast<std::uint8_t>(basis_.at(r, c));
    z.append_row(v);
  }
  for (std::size_t r = 0; r < o.dim(); ++r) {
    FpVector v(2 * n, 0);
    for (std::size_t c = 0; c < n; ++c) v[c] = static_cast<std::uint8_t>(o.basis_.at(r, c));
    z.append_row(v);
  }
  Echelon e = rref(z);
  FpMatrix rows(p, 0, n);
  for (std::size_t r = 0; r < e.pivots.size(); ++r) {
    if (e.pivots[r] < n) continue;
    FpVector v(n);
    for (std::size_t c = 0; c < n; ++c) v[c] = static_cast<std::uint8_t>(e.matrix.at(r, n + c));
    rows.append_row(v);
  }
  return spanned_by(rows);
}

Subspace Subspace::image(const FpMatrix& a) const { return spanned_by(basis_ * a); }

namespace {

// Calls emit(matrix) for every reduced echelon matrix with the given pivots.
template <class Emit>
void for_each_echelon(unsigned p, std::size_t ambient, const std::vector<std::size_t>& pivots,
                      Emit&& emit) {
  std::vector<bool> is_pivot(ambient, false);
  for (std::size_t c : pivots) is_pivot[c] = true;
  std::vector<std::pair<std::size_t, std::size_t>> free;
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t c = pivots[r] + 1; c < ambient; ++c)
      if (!is_pivot[c]) free.emplace_back(r, c);
  FpMatrix m(p, pivots.size(), ambient);
  for (std::size_t r = 0; r < pivots.size(); ++r) m.set(r, pivots[r], 1);
  std::vector<unsigned> digits(free.size(), 0);
  while (true) {
    emit(m);
    std::size_t i = 0;
    while (i < digits.size()) {
      digits[i] = (digits[i] + 1) % p;
      m.set(free[i].first, free[i].second, digits[i]);
      if (digits[i] != 0) break;
      ++i;
    }
    if (i == digits.size()) return;
  }
}

template <class Visit>
void for_each_combination(std::size_t n, std::size_t k, Visit&& visit) {
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  if (k > n) return;
  while (true) {
    visit(c);
    std::size_t i = k;
    while (i > 0 && c[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++c[i - 1];
    for (std::size_t j = i; j < k; ++j) c[j] = c[j - 1] + 1;
  }
}

}  // namespace

std::vector<Subspace> enumerate_subspaces(unsigned p, std::size_t ambient, std::size_t dim) {
  std::vector<Subspace> out;
  if (dim > ambient) return out;
  for_each_combination(ambient, dim, [&](const std::vector<std::size_t>& piv) {
    for_each_echelon(p, ambient, piv, [&](const FpMatrix& m) { out.push_back(Subspace::spanned_by(m)); });
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Subspace> enumerate_supplements(std::size_t ambient, const Subspace& nucleus,
                                            std::size_t codim) {
  if (codim == 0) throw StructuralError("supplement codimension must be positive");
  if (nucleus.ambient_dim() != ambient) throw StructuralError("nucleus ambient mismatch");
  std::vector<Subspace> out;
  if (codim > nucleus.dim()) return out;
  const Subspace full = Subspace::whole(nucleus.prime(), ambient);
  for (Subspace& u : enumerate_subspaces(nucleus.prime(), ambient, ambient - codim))
    if (u.sum(nucleus) == full) out.push_back(std::move(u));
  return out;
}

unsigned long long count_tail_supplements(unsigned p, std::size_t ambient,
                                          std::size_t nucleus_dim, std::size_t codim) {
  if (codim == 0 || codim > nucleus_dim || nucleus_dim > ambient) return 0;
  // Gaussian binomial [nucleus_dim choose codim]_p times p^(codim*(ambient-nucleus_dim)).
  const long double cap = static_cast<long double>(std::numeric_limits<unsigned long long>::max());
  long double num = 1, den = 1;
  for (std::size_t i = 0; i < codim; ++i) {
    num *= std::pow(static_cast<long double>(p), static_cast<long double>(nucleus_dim - i)) - 1;
    den *= std::pow(static_cast<long double>(p), static_cast<long double>(i + 1)) - 1;
  }
  long double total = num / den *
                      std::pow(static_cast<long double>(p),
                               static_cast<long double>(codim * (ambient - nucleus_dim)));
  if (total >= cap) return std::numeric_limits<unsigned long long>::max();
  return static_cast<unsigned long long>(total + 0.5L);
}

void IntMatrix::append_row(const std::vector<BigInt>& row) {
  if (rows_ == 0 && cols_ == 0) cols_ = row.size();
  if (row.size() != cols_) throw StructuralError("integer row length mismatch");
  a_.insert(a_.end(), row.begin(), row.end());
  ++rows_;
}

std::vector<BigInt> smith_normal_form(IntMatrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  const std::size_t n = std::min(rows, cols);
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a != b)
      for (std::size_t c = 0; c < cols; ++c) std::swap(m(a, c), m(b, c));
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a != b)
      for (std::size_t r = 0; r < rows; ++r) std::swap(m(r, a), m(r, b));
  };
  for (std::size_t t = 0; t < n; ++t) {
    while (true) {
      // Smallest nonzero magnitude in the trailing block becomes the pivot.
      bool found = false;
      std::size_t pr = t, pc = t;
      BigInt best;
      for (std::size_t r = t; r < rows; ++r)
        for (std::size_t c = t; c < cols; ++c) {
          if (m(r, c) == 0) continue;
          BigInt a = abs(m(r, c));
          if (!found || a < best) {
            best = a;
            pr = r;
            pc = c;
            found = true;
          }
        }
      if (!found) {
        std::vector<BigInt> d(n);
        for (std::size_t i = 0; i < n; ++i) d[i] = abs(m(i, i));
        return d;
      }
      swap_rows(t, pr);
      swap_cols(t, pc);
      bool clean = true;
      for (std::size_t r = t + 1; r < rows; ++r) {
        if (m(r, t) == 0) continue;
        const BigInt q = m(r, t) / m(t, t);
        for (std::size_t c = t; c < cols; ++c) m(r, c) -= q * m(t, c);
        if (m(r, t) != 0) clean = false;
      }
      for (std::size_t c = t + 1; c < cols; ++c) {
        if (m(t, c) == 0) continue;
        const BigInt q = m(t, c) / m(t, t);
        for (std::size_t r = t; r < rows; ++r) m(r, c) -= q * m(r, t);
        if (m(t, c) != 0) clean = false;
      }
      if (!clean) continue;
      // Enforce divisibility of the remaining block by the pivot.
      bool divides = true;
      for (std::size_t r = t + 1; r < rows && divides; ++r)
        for (std::size_t c = t + 1; c < cols; ++c)
          if (m(r, c) % m(t, t) != 0) {
            for (std::size_t k = t; k < cols; ++k) m(t, k) += m(r, k);
            divides = false;
            break;
          }
      if (divides) break;
    }
  }
  std::vector<BigInt> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = abs(m(i, i));
  return d;
}

std::vector<BigInt> cokernel_invariants(const IntMatrix& m) {
  std::vector<BigInt> d = smith_normal_form(m);
  std::vector<BigInt> out;
  std::vector<BigInt> zeros;
  for (auto& x : d) (x == 0 ? zeros : out).push_back(x);
  for (std::size_t i = d.size(); i < m.cols(); ++i) zeros.push_back(0);
  out.insert(out.end(), zeros.begin(), zeros.end());
  return out;
}

}  // namespace pgg
