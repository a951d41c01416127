#include "qwp/lattice.hpp"

#include <cstdlib>
#include <sstream>
#include <stdexcept>

namespace qwp {

LatticeVector::LatticeVector(std::initializer_list<std::int64_t> xs) {
  if (xs.size() > static_cast<std::size_t>(kMaxDim))
    throw std::invalid_argument("vector dimension exceeds kMaxDim");
  dim = static_cast<int>(xs.size());
  int i = 0;
  for (auto x : xs) c[i++] = x;
}

bool LatticeVector::is_zero() const {
  for (int i = 0; i < dim; ++i)
    if (c[i] != 0) return false;
  return true;
}

LatticeVector LatticeVector::operator-() const {
  LatticeVector r(dim);
  for (int i = 0; i < dim; ++i) r.c[i] = -c[i];
  return r;
}

LatticeVector& LatticeVector::operator+=(const LatticeVector& o) {
  if (o.dim != dim) throw std::invalid_argument("dimension mismatch in vector sum");
  for (int i = 0; i < dim; ++i) c[i] += o.c[i];
  return *this;
}

LatticeVector& LatticeVector::operator-=(const LatticeVector& o) {
  if (o.dim != dim) throw std::invalid_argument("dimension mismatch in vector difference");
  for (int i = 0; i < dim; ++i) c[i] -= o.c[i];
  return *this;
}

std::string LatticeVector::str() const {
  std::string s = "(";
  for (int i = 0; i < dim; ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + ")";
}

LatticeMatrix::LatticeMatrix(std::initializer_list<std::initializer_list<std::int64_t>> rows) {
  dim = static_cast<int>(rows.size());
  if (dim > kMaxDim) throw std::invalid_argument("matrix dimension exceeds kMaxDim");
  int i = 0;
  for (auto& row : rows) {
    if (static_cast<int>(row.size()) != dim) throw std::invalid_argument("matrix must be square");
    int j = 0;
    for (auto x : row) m[i][j++] = x;
    ++i;
  }
}

LatticeMatrix LatticeMatrix::identity(int d) {
  LatticeMatrix r(d);
  for (int i = 0; i < d; ++i) r.m[i][i] = 1;
  return r;
}

LatticeVector LatticeMatrix::operator*(const LatticeVector& v) const {
  if (v.dim != dim) throw std::invalid_argument("dimension mismatch in matrix-vector product");
  LatticeVector r(dim);
  for (int i = 0; i < dim; ++i) {
    std::int64_t s = 0;
    for (int j = 0; j < dim; ++j) s += m[i][j] * v.c[j];
    r.c[i] = s;
  }
  return r;
}

LatticeMatrix LatticeMatrix::operator*(const LatticeMatrix& o) const {
  if (o.dim != dim) throw std::invalid_argument("dimension mismatch in matrix product");
  LatticeMatrix r(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      std::int64_t s = 0;
      for (int k = 0; k < dim; ++k) s += m[i][k] * o.m[k][j];
      r.m[i][j] = s;
    }
  return r;
}

LatticeMatrix LatticeMatrix::transpose() const {
  LatticeMatrix r(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) r.m[i][j] = m[j][i];
  return r;
}

std::int64_t LatticeMatrix::determinant() const {
  switch (dim) {
    case 0: return 1;
    case 1: return m[0][0];
    case 2: return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    default:
      return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
             m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
             m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  }
}

std::optional<LatticeMatrix> LatticeMatrix::unimodular_inverse() const {
  std::int64_t det = determinant();
  if (det != 1 && det != -1) return std::nullopt;
  LatticeMatrix r(dim);
  if (dim == 1) {
    r.m[0][0] = det;
  } else if (dim == 2) {
    r.m[0][0] = m[1][1] * det;
    r.m[0][1] = -m[0][1] * det;
    r.m[1][0] = -m[1][0] * det;
    r.m[1][1] = m[0][0] * det;
  } else if (dim == 3) {
    // adjugate / det
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
        r.m[i][j] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) * det;
      }
  }
  return r;
}

bool LatticeMatrix::is_signed_permutation() const {
  for (int i = 0; i < dim; ++i) {
    int row_nz = 0, col_nz = 0;
    for (int j = 0; j < dim; ++j) {
      if (m[i][j] != 0) {
        if (std::llabs(m[i][j]) != 1) return false;
        ++row_nz;
      }
      if (m[j][i] != 0) ++col_nz;
    }
    if (row_nz != 1 || col_nz != 1) return false;
  }
  return true;
}

std::string LatticeMatrix::str() const {
  std::string s = "[";
  for (int i = 0; i < dim; ++i) {
    if (i) s += ",";
    s += "[";
    for (int j = 0; j < dim; ++j) {
      if (j) s += ",";
      s += std::to_string(m[i][j]);
    }
    s += "]";
  }
  return s + "]";
}

RationalVector to_rational(const LatticeVector& v) {
  RationalVector r(v.dim);
  for (int i = 0; i < v.dim; ++i) r[i] = Rational(v.c[i]);
  return r;
}

RationalVector apply_matrix(const LatticeMatrix& m, const RationalVector& v) {
  if (static_cast<int>(v.size()) != m.dim)
    throw std::invalid_argument("dimension mismatch in rational product");
  RationalVector r(v.size(), Rational(0));
  for (int i = 0; i < m.dim; ++i)
    for (int j = 0; j < m.dim; ++j) r[i] += Rational(m.m[i][j]) * v[j];
  return r;
}

std::optional<LatticeVector> as_integral(const RationalVector& v) {
  LatticeVector r(static_cast<int>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].denominator() != 1) return std::nullopt;
    r.c[i] = v[i].numerator();
  }
  return r;
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    std::size_t pos = 0;
    if (slash == std::string::npos) {
      std::int64_t n = std::stoll(s, &pos);
      if (pos != s.size()) throw std::invalid_argument(s);
      return Rational(n);
    }
    std::string a = s.substr(0, slash), b = s.substr(slash + 1);
    std::int64_t n = std::stoll(a, &pos);
    if (pos != a.size()) throw std::invalid_argument(s);
    std::int64_t d = std::stoll(b, &pos);
    if (pos != b.size() || d == 0) throw std::invalid_argument(s);
    return Rational(n, d);
  } catch (const std::logic_error&) {
    throw std::invalid_argument("not a rational number: '" + s + "'");
  }
}

}  // namespace qwp
