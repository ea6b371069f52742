#ifndef PGG_LINALG_HPP
#define PGG_LINALG_HPP

// Exact linear algebra over prime fields F_p and integer Smith normal form.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace pgg {

using FpVector = std::vector<std::uint8_t>;
using BigInt = boost::multiprecision::cpp_int;

bool is_prime(unsigned long long n);
unsigned fp_inverse(unsigned a, unsigned p);

// Dense matrix over F_p. Rows over F_2 are bit-packed into 64-bit words;
// other primes store one residue per byte.
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(unsigned p, std::size_t rows, std::size_t cols);

  static FpMatrix identity(unsigned p, std::size_t n);
  static FpMatrix from_rows(unsigned p, std::size_t cols, const std::vector<FpVector>& rows);

  unsigned prime() const { return p_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  unsigned at(std::size_t r, std::size_t c) const {
    if (p_ == 2) return static_cast<unsigned>((bits_[r * words_ + c / 64] >> (c % 64)) & 1u);
    return bytes_[r * cols_ + c];
  }
  void set(std::size_t r, std::size_t c, unsigned v);

  // row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, unsigned factor);
  // row[dst] += factor * other.row[src]
  void add_row_multiple_from(std::size_t dst, const FpMatrix& other, std::size_t src,
                             unsigned factor);
  void scale_row(std::size_t r, unsigned factor);
  void swap_rows(std::size_t a, std::size_t b);
  bool row_is_zero(std::size_t r) const;
  // First nonzero column of row r, or cols() for a zero row.
  std::size_t leading_column(std::size_t r) const;

  void append_row(const FpVector& v);
  void append_row_from(const FpMatrix& other, std::size_t r);
  void truncate_rows(std::size_t n);

  FpVector row(std::size_t r) const;
  FpMatrix operator*(const FpMatrix& rhs) const;
  FpVector apply_row(const FpVector& v) const;  // v * this
  FpMatrix transpose() const;

  bool operator==(const FpMatrix& o) const = default;
  // Lexicographic on row-major entries; dimensions compared first.
  bool operator<(const FpMatrix& o) const;

  std::string bytes() const;

 private:
  unsigned p_ = 2;
  std::size_t rows_ = 0, cols_ = 0, words_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint8_t> bytes_;
};

struct Echelon {
  FpMatrix matrix;                  // same shape as the input, zero rows last
  std::vector<std::size_t> pivots;  // pivot column of each nonzero row
};

// Reduced row-echelon form; unique for a given row space.
Echelon rref(FpMatrix m);
std::size_t rank(const FpMatrix& m);
// Inverse of a square matrix; throws StructuralError when singular.
FpMatrix matrix_inverse(const FpMatrix& a);

// A subspace of F_p^n held by its reduced echelon basis. Equal subspaces have
// bit-identical bases, so key() is a canonical identifier.
class Subspace {
 public:
  Subspace() = default;
  Subspace(unsigned p, std::size_t ambient);  // zero subspace

  static Subspace spanned_by(const FpMatrix& rows);
  static Subspace whole(unsigned p, std::size_t ambient);
  // Span of the coordinate vectors e_first .. e_{first+count-1}.
  static Subspace coordinate(unsigned p, std::size_t ambient, std::size_t first,
                             std::size_t count);

  unsigned prime() const { return basis_.prime(); }
  std::size_t ambient_dim() const { return basis_.cols(); }
  std::size_t dim() const { return basis_.rows(); }
  std::size_t codim() const { return ambient_dim() - dim(); }
  const FpMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  // Residual of v after clearing every pivot coordinate; zero iff v is inside.
  FpVector reduce(FpVector v) const;
  bool contains(const FpVector& v) const;
  bool contains(const Subspace& s) const;

  Subspace sum(const Subspace& o) const;
  Subspace intersection(const Subspace& o) const;
  // Image under v -> v * a.
  Subspace image(const FpMatrix& a) const;

  std::string key() const { return basis_.bytes(); }
  bool operator==(const Subspace& o) const { return basis_ == o.basis_; }
  bool operator<(const Subspace& o) const { return basis_ < o.basis_; }

 private:
  void check_compatible(const Subspace& o) const;
  FpMatrix basis_;
  std::vector<std::size_t> pivots_;
};

// All subspaces of F_p^ambient of the given dimension, ordered by canonical basis.
std::vector<Subspace> enumerate_subspaces(unsigned p, std::size_t ambient, std::size_t dim);

// Subspaces U of codimension `codim` with U + nucleus = whole space, each once,
// ordered by canonical basis. Empty when codim > dim(nucleus).
std::vector<Subspace> enumerate_supplements(std::size_t ambient, const Subspace& nucleus,
                                            std::size_t codim);

// Number of such supplements when the nucleus is the span of the last
// `nucleus_dim` coordinates (saturating at UINT64_MAX).
unsigned long long count_tail_supplements(unsigned p, std::size_t ambient,
                                          std::size_t nucleus_dim, std::size_t codim);

class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  BigInt& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  const BigInt& operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  void append_row(const std::vector<BigInt>& row);

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<BigInt> a_;
};

// Diagonal of the Smith normal form: min(rows, cols) nonnegative entries with
// d_1 | d_2 | ... (zeros last).
std::vector<BigInt> smith_normal_form(IntMatrix m);

// Invariants of Z^cols / rowspace: one entry per column, in divisibility order,
// where 0 denotes a free factor and 1 a trivial one.
std::vector<BigInt> cokernel_invariants(const IntMatrix& m);

}  // namespace pgg

#endif  // PGG_LINALG_HPP
