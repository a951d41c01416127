#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace qwp {

// Dense integer matrix with arbitrary-precision entries, row-major.
class IntegerMatrix {
public:
  IntegerMatrix() = default;
  IntegerMatrix(std::size_t rows, std::size_t cols) : r_(rows), c_(cols), a_(rows * cols) {}
  IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);
  static IntegerMatrix identity(std::size_t n);

  std::size_t rows() const { return r_; }
  std::size_t cols() const { return c_; }
  mpz_class& operator()(std::size_t i, std::size_t j) { return a_[i * c_ + j]; }
  const mpz_class& operator()(std::size_t i, std::size_t j) const { return a_[i * c_ + j]; }

  IntegerMatrix operator*(const IntegerMatrix& o) const;
  IntegerMatrix transpose() const;
  bool is_zero() const;
  friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b) {
    return a.r_ == b.r_ && a.c_ == b.c_ && a.a_ == b.a_;
  }

  void swap_rows(std::size_t i, std::size_t j);
  void swap_cols(std::size_t i, std::size_t j);
  // row i += f * row j
  void add_row(std::size_t i, std::size_t j, const mpz_class& f);
  void add_col(std::size_t i, std::size_t j, const mpz_class& f);
  void negate_row(std::size_t i);

  // determinant by fraction-free elimination (square matrices)
  mpz_class determinant() const;
  std::string str() const;

private:
  std::size_t r_ = 0, c_ = 0;
  std::vector<mpz_class> a_;
};

struct SnfResult {
  IntegerMatrix d, u, v;  // u * a * v = d
  std::vector<mpz_class> divisors;  // nonzero diagonal entries, d_i | d_{i+1}
  std::size_t rank() const { return divisors.size(); }
};

// Full decomposition with transforms.  Pivots on the entry of least absolute value.
SnfResult smith_normal_form(const IntegerMatrix& a);

// Nonzero invariant factors only.  Eliminates on unit pivots sparsely first, then
// finishes the remaining block densely; suited to large sparse boundary matrices.
std::vector<mpz_class> elementary_divisors(const IntegerMatrix& a);

// Sparse column-major input for the same computation without building a dense matrix.
struct SparseIntMatrix {
  std::size_t rows = 0, cols = 0;
  std::vector<std::vector<std::pair<std::size_t, long>>> columns;  // (row, value)
  IntegerMatrix dense() const;
};
std::vector<mpz_class> elementary_divisors(const SparseIntMatrix& a);

}  // namespace qwp
