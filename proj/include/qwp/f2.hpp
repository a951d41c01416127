#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qwp {

// Dense vector over F2.
class BitVector {
public:
  BitVector() = default;
  explicit BitVector(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}
  static BitVector from_string(const std::string& s);  // "0110"

  std::size_t size() const { return n_; }
  bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1u; }
  void set(std::size_t i, bool v = true) {
    if (v)
      w_[i >> 6] |= std::uint64_t{1} << (i & 63);
    else
      w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
  }
  void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }
  BitVector& operator^=(const BitVector& o);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
  friend bool operator==(const BitVector&, const BitVector&) = default;
  bool is_zero() const;
  // index of the first set bit, or size() when zero
  std::size_t first_set() const;
  std::size_t popcount() const;
  bool dot(const BitVector& o) const;
  // lexicographic order with index 0 most significant
  bool lex_less(const BitVector& o) const;
  std::string str() const;

  const std::vector<std::uint64_t>& words() const { return w_; }

private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> w_;
};

// Span of vectors kept in reduced row echelon form.
class F2Subspace {
public:
  explicit F2Subspace(std::size_t n) : n_(n) {}
  std::size_t ambient() const { return n_; }
  int dimension() const { return static_cast<int>(rows_.size()); }
  // Adds v; returns false when v was already in the span.
  bool insert(const BitVector& v);
  bool contains(const BitVector& v) const { return reduce(v).is_zero(); }
  // Lexicographically minimal element of v + span.
  BitVector reduce(const BitVector& v) const;
  const std::vector<BitVector>& basis() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return piv_; }

private:
  std::size_t n_;
  std::vector<BitVector> rows_;  // sorted by pivot
  std::vector<std::size_t> piv_;
};

// coefficients . x = constant, one row per equation, over named unknowns
struct F2AffineSystem {
  std::vector<std::string> unknowns;
  std::vector<BitVector> rows;
  std::vector<bool> constants;
  std::vector<std::string> row_labels;

  std::size_t num_unknowns() const { return unknowns.size(); }
  void add(BitVector row, bool constant, std::string label = {});
  // Adds x_u = value.
  void pin(std::size_t u, bool value, std::string label = {});
};

struct F2Solution {
  bool feasible = false;
  BitVector particular;
  std::vector<BitVector> kernel;  // basis of the homogeneous solutions
  int rank = 0;
};

F2Solution solve(const F2AffineSystem& sys);

}  // namespace qwp
