#include "qwp/intmatrix.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "qwp/errors.hpp"

namespace qwp {

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows) {
  r_ = rows.size();
  c_ = r_ ? rows.begin()->size() : 0;
  a_.reserve(r_ * c_);
  for (auto& row : rows) {
    if (row.size() != c_) throw ContractViolation("ragged matrix initializer");
    for (long x : row) a_.emplace_back(x);
  }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n) {
  IntegerMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

IntegerMatrix IntegerMatrix::operator*(const IntegerMatrix& o) const {
  if (c_ != o.r_) throw ContractViolation("matrix product shape mismatch");
  IntegerMatrix p(r_, o.c_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t k = 0; k < c_; ++k) {
      const mpz_class& x = (*this)(i, k);
      if (x == 0) continue;
      for (std::size_t j = 0; j < o.c_; ++j)
        if (o(k, j) != 0) p(i, j) += x * o(k, j);
    }
  return p;
}

IntegerMatrix IntegerMatrix::transpose() const {
  IntegerMatrix t(c_, r_);
  for (std::size_t i = 0; i < r_; ++i)
    for (std::size_t j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool IntegerMatrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const mpz_class& x) { return x == 0; });
}

void IntegerMatrix::swap_rows(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
}

void IntegerMatrix::swap_cols(std::size_t i, std::size_t j) {
  if (i == j) return;
  for (std::size_t k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
}

void IntegerMatrix::add_row(std::size_t i, std::size_t j, const mpz_class& f) {
  if (f == 0) return;
  for (std::size_t k = 0; k < c_; ++k)
    if ((*this)(j, k) != 0) (*this)(i, k) += f * (*this)(j, k);
}

void IntegerMatrix::add_col(std::size_t i, std::size_t j, const mpz_class& f) {
  if (f == 0) return;
  for (std::size_t k = 0; k < r_; ++k)
    if ((*this)(k, j) != 0) (*this)(k, i) += f * (*this)(k, j);
}

void IntegerMatrix::negate_row(std::size_t i) {
  for (std::size_t k = 0; k < c_; ++k) (*this)(i, k) = -(*this)(i, k);
}

mpz_class IntegerMatrix::determinant() const {
  if (r_ != c_) throw ContractViolation("determinant of a non-square matrix");
  // Bareiss
  IntegerMatrix m = *this;
  mpz_class prev = 1, sign = 1;
  for (std::size_t k = 0; k < r_; ++k) {
    std::size_t p = k;
    while (p < r_ && m(p, k) == 0) ++p;
    if (p == r_) return 0;
    if (p != k) {
      m.swap_rows(p, k);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < r_; ++i)
      for (std::size_t j = k + 1; j < r_; ++j) {
        mpz_class x = m(i, j) * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), prev.get_mpz_t());
        m(i, j) = x;
      }
    prev = m(k, k);
  }
  return sign * m(r_ - 1, r_ - 1);
}

std::string IntegerMatrix::str() const {
  std::vector<std::string> cells(a_.size());
  std::size_t w = 1;
  for (std::size_t k = 0; k < a_.size(); ++k) {
    cells[k] = a_[k].get_str();
    w = std::max(w, cells[k].size());
  }
  std::string s;
  for (std::size_t i = 0; i < r_; ++i) {
    s += "[";
    for (std::size_t j = 0; j < c_; ++j) {
      const auto& x = cells[i * c_ + j];
      s += std::string(w - x.size() + (j ? 1 : 0), ' ') + x;
    }
    s += "]\n";
  }
  return s;
}

namespace {

// Round-to-nearest quotient keeps entries small during reduction.
mpz_class near_quotient(const mpz_class& a, const mpz_class& b) {
  mpz_class q, r;
  mpz_fdiv_qr(q.get_mpz_t(), r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  // r has the sign of b, so stepping q up shrinks the remainder when |r| > |b|/2
  if (2 * abs(r) > abs(b)) q += 1;
  return q;
}

// In-place SNF of d; u and v are updated when non-null.
void snf_in_place(IntegerMatrix& d, IntegerMatrix* u, IntegerMatrix* v) {
  const std::size_t m = d.rows(), n = d.cols();
  const std::size_t lim = std::min(m, n);
  for (std::size_t t = 0; t < lim; ++t) {
    // least |entry| in the trailing block
    auto find_min = [&](bool whole, std::size_t& pi, std::size_t& pj) {
      bool found = false;
      mpz_class best;
      auto consider = [&](std::size_t i, std::size_t j) {
        const auto& x = d(i, j);
        if (x == 0) return;
        if (!found || abs(x) < best) {
          best = abs(x);
          pi = i;
          pj = j;
          found = true;
        }
      };
      if (whole) {
        for (std::size_t i = t; i < m; ++i)
          for (std::size_t j = t; j < n; ++j) consider(i, j);
      } else {
        for (std::size_t i = t; i < m; ++i) consider(i, t);
        for (std::size_t j = t + 1; j < n; ++j) consider(t, j);
      }
      return found;
    };
    std::size_t pi = 0, pj = 0;
    if (!find_min(true, pi, pj)) break;
    for (;;) {
      d.swap_rows(t, pi);
      if (u) u->swap_rows(t, pi);
      d.swap_cols(t, pj);
      if (v) v->swap_cols(t, pj);
      bool clean = true;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        mpz_class q = near_quotient(d(i, t), d(t, t));
        d.add_row(i, t, -q);
        if (u) u->add_row(i, t, -q);
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        mpz_class q = near_quotient(d(t, j), d(t, t));
        d.add_col(j, t, -q);
        if (v) v->add_col(j, t, -q);
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        find_min(false, pi, pj);
        continue;
      }
      // divisibility of the trailing block by the pivot
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(i, j) != 0 && !mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            d.add_row(t, i, 1);
            if (u) u->add_row(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
      pi = t;
      pj = t;
      find_min(false, pi, pj);
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      if (u) u->negate_row(t);
    }
  }
}

std::vector<mpz_class> diagonal_divisors(const IntegerMatrix& d) {
  std::vector<mpz_class> out;
  for (std::size_t i = 0; i < std::min(d.rows(), d.cols()); ++i)
    if (d(i, i) != 0) out.push_back(d(i, i));
  return out;
}

// Sparse unit-pivot elimination followed by dense SNF of what is left.
std::vector<mpz_class> sparse_divisors(std::size_t nrows, std::vector<std::map<std::size_t, mpz_class>> rows) {
  std::size_t units = 0;
  // column -> rows touching it
  std::map<std::size_t, std::set<std::size_t>> colrows;
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (auto& [c, x] : rows[i]) colrows[c].insert(i);
  std::vector<bool> alive(rows.size(), true);
  // rows bucketed by length for pivot choice
  std::set<std::pair<std::size_t, std::size_t>> by_len;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!rows[i].empty()) by_len.insert({rows[i].size(), i});

  for (;;) {
    // shortest row holding a unit entry, and within it the sparsest column
    std::size_t prow = rows.size(), pcol = 0;
    for (auto& [len, i] : by_len) {
      std::size_t best_fill = SIZE_MAX;
      for (auto& [c, x] : rows[i])
        if ((x == 1 || x == -1) && colrows[c].size() < best_fill) {
          best_fill = colrows[c].size();
          pcol = c;
        }
      if (best_fill != SIZE_MAX) {
        prow = i;
        break;
      }
    }
    if (prow == rows.size()) break;
    ++units;
    const mpz_class piv = rows[prow][pcol];
    auto targets = colrows[pcol];
    targets.erase(prow);
    for (std::size_t i : targets) {
      by_len.erase({rows[i].size(), i});
      mpz_class f = -rows[i][pcol] * piv;  // piv = +-1
      for (auto& [c, x] : rows[prow]) {
        auto& y = rows[i][c];
        bool was_zero = y == 0;
        y += f * x;
        if (y == 0) {
          rows[i].erase(c);
          colrows[c].erase(i);
        } else if (was_zero) {
          colrows[c].insert(i);
        }
      }
      if (!rows[i].empty()) by_len.insert({rows[i].size(), i});
    }
    // drop the pivot row; its column is now empty elsewhere
    by_len.erase({rows[prow].size(), prow});
    for (auto& [c, x] : rows[prow]) colrows[c].erase(prow);
    rows[prow].clear();
    alive[prow] = false;
  }

  // dense remainder
  std::vector<std::size_t> live_rows, live_cols;
  std::map<std::size_t, std::size_t> colidx;
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (!rows[i].empty()) {
      live_rows.push_back(i);
      for (auto& [c, x] : rows[i])
        if (!colidx.count(c)) colidx.emplace(c, 0);
    }
  std::size_t k = 0;
  for (auto& [c, idx] : colidx) idx = k++;
  IntegerMatrix rest(live_rows.size(), colidx.size());
  for (std::size_t r = 0; r < live_rows.size(); ++r)
    for (auto& [c, x] : rows[live_rows[r]]) rest(r, colidx[c]) = x;
  (void)nrows;
  snf_in_place(rest, nullptr, nullptr);
  std::vector<mpz_class> out(units, mpz_class(1));
  for (auto& x : diagonal_divisors(rest)) out.push_back(x);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

SnfResult smith_normal_form(const IntegerMatrix& a) {
  SnfResult res;
  res.d = a;
  res.u = IntegerMatrix::identity(a.rows());
  res.v = IntegerMatrix::identity(a.cols());
  snf_in_place(res.d, &res.u, &res.v);
  res.divisors = diagonal_divisors(res.d);
  return res;
}

std::vector<mpz_class> elementary_divisors(const IntegerMatrix& a) {
  std::vector<std::map<std::size_t, mpz_class>> rows(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (a(i, j) != 0) rows[i].emplace(j, a(i, j));
  return sparse_divisors(a.rows(), std::move(rows));
}

std::vector<mpz_class> elementary_divisors(const SparseIntMatrix& a) {
  std::vector<std::map<std::size_t, mpz_class>> rows(a.rows);
  for (std::size_t j = 0; j < a.cols; ++j)
    for (auto& [i, x] : a.columns[j])
      if (x != 0) rows[i][j] += x;
  for (auto& r : rows)
    for (auto it = r.begin(); it != r.end();) it = it->second == 0 ? r.erase(it) : std::next(it);
  return sparse_divisors(a.rows, std::move(rows));
}

IntegerMatrix SparseIntMatrix::dense() const {
  IntegerMatrix m(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (auto& [i, x] : columns[j]) m(i, j) += x;
  return m;
}

}  // namespace qwp
