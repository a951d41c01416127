#include "qwp/f2.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

#include "qwp/errors.hpp"

namespace qwp {

BitVector BitVector::from_string(const std::string& s) {
  BitVector v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1')
      v.set(i);
    else if (s[i] != '0')
      throw DomainError("bit string may only contain 0 and 1: '" + s + "'");
  }
  return v;
}

BitVector& BitVector::operator^=(const BitVector& o) {
  if (o.n_ != n_) throw ContractViolation("BitVector size mismatch");
  for (std::size_t k = 0; k < w_.size(); ++k) w_[k] ^= o.w_[k];
  return *this;
}

bool BitVector::is_zero() const {
  for (auto w : w_)
    if (w) return false;
  return true;
}

std::size_t BitVector::first_set() const {
  for (std::size_t k = 0; k < w_.size(); ++k)
    if (w_[k]) return k * 64 + static_cast<std::size_t>(std::countr_zero(w_[k]));
  return n_;
}

std::size_t BitVector::popcount() const {
  std::size_t c = 0;
  for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool BitVector::dot(const BitVector& o) const {
  if (o.n_ != n_) throw ContractViolation("BitVector size mismatch");
  std::uint64_t acc = 0;
  for (std::size_t k = 0; k < w_.size(); ++k) acc ^= w_[k] & o.w_[k];
  return std::popcount(acc) & 1;
}

bool BitVector::lex_less(const BitVector& o) const {
  BitVector d = *this ^ o;
  std::size_t i = d.first_set();
  if (i == n_) return false;
  return o.get(i);
}

std::string BitVector::str() const {
  std::string s(n_, '0');
  for (std::size_t i = 0; i < n_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

bool F2Subspace::insert(const BitVector& v) {
  BitVector r = reduce(v);
  std::size_t p = r.first_set();
  if (p == n_) return false;
  // keep fully reduced: clear column p from the other rows
  for (auto& row : rows_)
    if (row.get(p)) row ^= r;
  auto pos = std::lower_bound(piv_.begin(), piv_.end(), p) - piv_.begin();
  piv_.insert(piv_.begin() + pos, p);
  rows_.insert(rows_.begin() + pos, std::move(r));
  return true;
}

BitVector F2Subspace::reduce(const BitVector& v) const {
  BitVector r = v;
  for (std::size_t k = 0; k < rows_.size(); ++k)
    if (r.get(piv_[k])) r ^= rows_[k];
  return r;
}

void F2AffineSystem::add(BitVector row, bool constant, std::string label) {
  if (row.size() != unknowns.size()) throw ContractViolation("equation has wrong length");
  rows.push_back(std::move(row));
  constants.push_back(constant);
  row_labels.push_back(std::move(label));
}

void F2AffineSystem::pin(std::size_t u, bool value, std::string label) {
  BitVector r(unknowns.size());
  r.set(u);
  add(std::move(r), value, label.empty() ? "pin " + unknowns.at(u) : std::move(label));
}

F2Solution solve(const F2AffineSystem& sys) {
  const std::size_t n = sys.num_unknowns();
  // augmented rows: column n holds the constant
  std::vector<BitVector> m;
  m.reserve(sys.rows.size());
  for (std::size_t i = 0; i < sys.rows.size(); ++i) {
    BitVector r(n + 1);
    for (std::size_t k = 0; k < n; ++k)
      if (sys.rows[i].get(k)) r.set(k);
    if (sys.constants[i]) r.set(n);
    m.push_back(std::move(r));
  }
  std::vector<std::size_t> pivcol;
  std::size_t row = 0;
  for (std::size_t col = 0; col < n && row < m.size(); ++col) {
    std::size_t sel = row;
    while (sel < m.size() && !m[sel].get(col)) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[row], m[sel]);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (i != row && m[i].get(col)) m[i] ^= m[row];
    pivcol.push_back(col);
    ++row;
  }
  F2Solution out;
  out.rank = static_cast<int>(pivcol.size());
  for (std::size_t i = row; i < m.size(); ++i)
    if (m[i].get(n)) return out;  // 0 = 1
  out.feasible = true;
  out.particular = BitVector(n);
  for (std::size_t k = 0; k < pivcol.size(); ++k)
    if (m[k].get(n)) out.particular.set(pivcol[k]);
  std::vector<bool> is_piv(n, false);
  for (auto c : pivcol) is_piv[c] = true;
  for (std::size_t f = 0; f < n; ++f) {
    if (is_piv[f]) continue;
    BitVector v(n);
    v.set(f);
    for (std::size_t k = 0; k < pivcol.size(); ++k)
      if (m[k].get(f)) v.set(pivcol[k]);
    out.kernel.push_back(std::move(v));
  }
  return out;
}

}  // namespace qwp
