#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qwp/groupcore.hpp"
#include "qwp/intmatrix.hpp"

namespace qwp {

// free_rank copies of Z plus Z_{d_1} + ... with d_i | d_{i+1}, all d_i >= 2
struct AbelianGroup {
  std::int64_t free_rank = 0;
  std::vector<std::int64_t> torsion;

  // Accepts any list of finite cyclic orders and rewrites it as invariant factors.
  static AbelianGroup from_orders(std::int64_t free_rank, const std::vector<std::int64_t>& orders);
  bool is_trivial() const { return free_rank == 0 && torsion.empty(); }
  std::string str() const;  // "0", "Z", "Z^2 + Z2"
  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

enum class Coefficient { Z2, U1 };
Coefficient parse_coefficient(const std::string& s);  // "z2" | "u1"
std::string to_string(Coefficient c);

// For Z2 the value is Z2^k (torsion holds k copies of 2, u1_rank = 0); for U(1) the
// free part is carried symbolically as u1_rank copies of U(1).
struct CoefficientGroup {
  Coefficient tag = Coefficient::Z2;
  std::int64_t u1_rank = 0;
  std::vector<std::int64_t> torsion;

  std::int64_t z2_dimension() const;  // number of Z2 summands
  std::string str() const;            // "0", "U(1)", "Z2^2", "U(1) + Z2"
  friend bool operator==(const CoefficientGroup&, const CoefficientGroup&) = default;
};

// H^n(X,A) = Hom(H_n, A) + Ext(H_{n-1}, A)
CoefficientGroup cohomology_from_uct(const AbelianGroup& h_n, const AbelianGroup& h_n_minus_1, Coefficient coeff);

struct ChainComplex {
  std::vector<std::size_t> ranks;      // degrees 0..top
  std::vector<IntegerMatrix> boundary;  // boundary[n]: C_n -> C_{n-1}; boundary[0] is 0 x ranks[0]
  std::vector<std::vector<std::string>> basis_labels;  // optional, per degree

  int top_degree() const { return static_cast<int>(ranks.size()) - 1; }
  // shape problems and nonzero compositions
  std::vector<std::string> validate() const;
};

// H_n = ker d_n / im d_{n+1}; the complex is taken to be zero above its top degree.
AbelianGroup homology(const ChainComplex& c, int n);

// ---- equivariant cell complexes

// cell k -> sign[k] * cell image[k]
struct SignedPermutation {
  std::vector<int> image;
  std::vector<int> sign;

  static SignedPermutation identity(std::size_t n);
  std::size_t size() const { return image.size(); }
  // (this o inner)(k) = this(inner(k))
  SignedPermutation after(const SignedPermutation& inner) const;
  bool valid() const;
  friend bool operator==(const SignedPermutation&, const SignedPermutation&) = default;
};

struct EquivariantComplex {
  std::string group;                                           // labels refer to this group's point group
  std::vector<std::vector<std::string>> cells;                 // per degree
  std::vector<std::map<std::string, SignedPermutation>> action;  // per degree, generator label -> action
  std::vector<IntegerMatrix> boundary;                         // boundary[k]: C_k -> C_{k-1}
  std::optional<std::int64_t> orbit_euler_characteristic;

  int top_degree() const { return static_cast<int>(cells.size()) - 1; }
};

// Action of every point-group element, [degree][element], generated from the generators.
// Throws DomainError when generator actions are missing or do not define a representation.
std::vector<std::vector<SignedPermutation>> expand_action(const EquivariantComplex& ec, const WallpaperGroup& g);

// Coinvariant Euler characteristic: orbits whose stabilizer never reverses orientation.
std::int64_t coinvariant_euler_characteristic(const EquivariantComplex& ec, const WallpaperGroup& g);

std::vector<std::string> validate_equivariant_complex(const EquivariantComplex& ec, const WallpaperGroup& g);
std::vector<std::string> validate_equivariant_complex(const EquivariantComplex& ec);  // shipped group

// Relabels cells by per-degree permutations: new cell j is old cell perm[j].
EquivariantComplex permute_cells(const EquivariantComplex& ec, const std::vector<std::vector<int>>& perm);

// Cubical (all matrices signed permutations) or triangulated cells on an N x N grid of
// the unit cell; N = 0 picks the least N with N tau integral.
EquivariantComplex torus_cell_complex(const WallpaperGroup& g, int n = 0);

// Euler characteristic of the orbit space T^2/P for the 17 standard names.
std::optional<std::int64_t> orbit_space_euler_characteristic(const std::string& group);

// ---- free resolutions of the point group

struct GroupRingTerm {
  std::size_t row;  // basis element of the lower degree
  int element;      // point-group index g
  std::int64_t coeff;
};

struct Resolution {
  std::string group;
  int order = 1;
  int max_degree = 0;
  std::string kind;  // "trivial", "cyclic", "bar"
  std::vector<std::size_t> ranks;  // free ZP rank per degree
  // boundary[i][k]: d(b_{i,k}) = sum coeff * element * b_{i-1,row}
  std::vector<std::vector<std::vector<GroupRingTerm>>> boundary;
  int verified_through = -1;  // degrees 0..verified_through have been checked exact
};

struct ResolutionOptions {
  // exactness is checked at a degree only while its Z-matrix has at most this many columns
  std::size_t exactness_column_limit = 6000;
};

Resolution build_resolution(const WallpaperGroup& g, int max_degree, const ResolutionOptions& opt = {});
// Z-basis h*b_k has index k*|P| + h.
SparseIntMatrix resolution_matrix(const Resolution& res, const WallpaperGroup& g, int i);

// TC_p = sum_{i+j=p} F_i (x)_{ZP} C_j.  Basis: i descending, then resolution generator,
// then cell; basis element (i,k,x) stands for (-1)^{ceil(i/2)} b_{i,k} (x) x.
ChainComplex borel_total_complex(const Resolution& res, const EquivariantComplex& ec, const WallpaperGroup& g,
                                 int max_degree);

// Equivariant complex shipped for the group, or nullopt.
std::optional<EquivariantComplex> shipped_complex(const std::string& group);

// Homology H_0..H_max_n of the space group.
std::vector<AbelianGroup> group_homology_range(const WallpaperGroup& g, const EquivariantComplex& ec, int max_n);
AbelianGroup group_homology(const WallpaperGroup& g, int n);  // uses the shipped complex
AbelianGroup group_homology(const WallpaperGroup& g, const EquivariantComplex& ec, int n);
CoefficientGroup group_cohomology(const WallpaperGroup& g, const EquivariantComplex& ec, int n, Coefficient coeff);

// ---- complex files

EquivariantComplex parse_complex_json(const std::string& text, const std::string& source = "<input>");
std::string complex_to_json(const EquivariantComplex& ec);
EquivariantComplex load_complex_file(const std::string& path);

}  // namespace qwp
