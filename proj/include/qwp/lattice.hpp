#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include <boost/rational.hpp>

namespace qwp {

// Algorithms are written for any dimension up to kMaxDim; only d=2 data ships.
inline constexpr int kMaxDim = 3;

using Rational = boost::rational<std::int64_t>;

// Integer vector in the basis of unit translation vectors.
struct LatticeVector {
  std::array<std::int64_t, kMaxDim> c{};
  int dim = 0;

  LatticeVector() = default;
  explicit LatticeVector(int d) : dim(d) {}
  LatticeVector(std::initializer_list<std::int64_t> xs);

  static LatticeVector unit(int d, int i) {
    LatticeVector v(d);
    v.c[i] = 1;
    return v;
  }

  std::int64_t& operator[](int i) { return c[i]; }
  std::int64_t operator[](int i) const { return c[i]; }

  bool is_zero() const;
  LatticeVector operator-() const;
  LatticeVector& operator+=(const LatticeVector& o);
  LatticeVector& operator-=(const LatticeVector& o);
  friend LatticeVector operator+(LatticeVector a, const LatticeVector& b) { return a += b; }
  friend LatticeVector operator-(LatticeVector a, const LatticeVector& b) { return a -= b; }
  friend LatticeVector operator*(std::int64_t s, LatticeVector a) {
    for (int i = 0; i < a.dim; ++i) a.c[i] *= s;
    return a;
  }
  // Unused trailing components are kept zero, so plain comparison is exact.
  friend bool operator==(const LatticeVector&, const LatticeVector&) = default;

  std::string str() const;
};

// d x d integer matrix acting on lattice coordinates (column vectors).
struct LatticeMatrix {
  std::array<std::array<std::int64_t, kMaxDim>, kMaxDim> m{};
  int dim = 0;

  LatticeMatrix() = default;
  explicit LatticeMatrix(int d) : dim(d) {}
  // Row-major nested initializer, e.g. {{1,0},{0,-1}}.
  LatticeMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows);

  static LatticeMatrix identity(int d);

  std::int64_t& operator()(int i, int j) { return m[i][j]; }
  std::int64_t operator()(int i, int j) const { return m[i][j]; }

  LatticeVector operator*(const LatticeVector& v) const;
  LatticeMatrix operator*(const LatticeMatrix& o) const;
  LatticeMatrix transpose() const;
  std::int64_t determinant() const;
  // Exact inverse when det = +-1.
  std::optional<LatticeMatrix> unimodular_inverse() const;
  // True when every row and column holds exactly one entry, equal to +-1.
  bool is_signed_permutation() const;

  friend bool operator==(const LatticeMatrix&, const LatticeMatrix&) = default;

  std::string str() const;
};

// Rational vector (fractional translations).
using RationalVector = std::vector<Rational>;

RationalVector to_rational(const LatticeVector& v);
RationalVector apply_matrix(const LatticeMatrix& m, const RationalVector& v);
// Returns the vector when all components are integers.
std::optional<LatticeVector> as_integral(const RationalVector& v);

std::string to_string(const Rational& r);
Rational parse_rational(const std::string& s);

// Non-negative residue modulo 2, valid for negative inputs.
inline int mod2(std::int64_t x) { return static_cast<int>(x & 1); }

// binom(t, 2) = t(t-1)/2, defined for all integers.
inline std::int64_t binom2(std::int64_t t) { return t * (t - 1) / 2; }

}  // namespace qwp
