#pragma once

#include <string>
#include <vector>

#include "qwp/errors.hpp"
#include "qwp/lattice.hpp"

namespace qwp {

struct PointGroupElement {
  std::string label;
  LatticeMatrix matrix;  // lattice coordinates
  RationalVector tau;    // fractional translation, components in [0,1)
};

// {t|R}; r indexes the point group of the owning group.
struct SpaceGroupElement {
  LatticeVector t;
  int r = 0;
  friend bool operator==(const SpaceGroupElement&, const SpaceGroupElement&) = default;
};

// Raw group definition, as read from a file.  Not yet checked.
struct WallpaperGroupData {
  std::string name;
  int dimension = 2;
  std::vector<PointGroupElement> point_group;
  std::vector<std::string> generators;
};

// Lists every violated invariant; empty means valid.
std::vector<std::string> validate(const WallpaperGroupData& data);

// Validated group with derived multiplication, inverse and omega tables.
class WallpaperGroup {
public:
  // Throws CorruptGroupData listing all problems found by validate().
  explicit WallpaperGroup(WallpaperGroupData data);

  const WallpaperGroupData& data() const { return data_; }
  const std::string& name() const { return data_.name; }
  int dim() const { return data_.dimension; }
  int order() const { return static_cast<int>(data_.point_group.size()); }
  const PointGroupElement& element(int r) const { return data_.point_group[r]; }
  const LatticeMatrix& matrix(int r) const { return data_.point_group[r].matrix; }
  const LatticeMatrix& inverse_matrix(int r) const { return inv_matrix_[r]; }
  const std::string& label(int r) const { return data_.point_group[r].label; }

  int identity() const { return identity_; }
  int index_of(const std::string& label) const;  // throws DomainError
  int product(int r1, int r2) const { return product_[r1][r2]; }
  int inverse(int r) const { return inverse_[r]; }
  const LatticeVector& omega(int r1, int r2) const { return omega_[r1][r2]; }
  std::vector<int> generator_indices() const;

  // True when omega vanishes identically.
  bool omega_vanishes() const;

private:
  WallpaperGroupData data_;
  int identity_ = 0;
  std::vector<std::vector<int>> product_;
  std::vector<int> inverse_;
  std::vector<LatticeMatrix> inv_matrix_;
  std::vector<std::vector<LatticeVector>> omega_;
};

// {t1 + R1 t2 + omega(R1,R2) | R1 R2}
SpaceGroupElement multiply(const WallpaperGroup& g, const SpaceGroupElement& a,
                           const SpaceGroupElement& b);
// {-R^-1 t - R^-1 omega(R,R^-1) | R^-1}
SpaceGroupElement inverse(const WallpaperGroup& g, const SpaceGroupElement& a);
LatticeVector omega(const WallpaperGroup& g, const std::string& r1, const std::string& r2);

// Same group seen from an origin moved by s: tau(R) -> tau(R) + (R - 1)s mod 1.
WallpaperGroupData shift_origin(const WallpaperGroupData& data, const RationalVector& s);

}  // namespace qwp
