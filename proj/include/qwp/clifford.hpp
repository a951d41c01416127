#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qwp {

struct SymmetryCase {
  int s_t = 1;  // T^2
  int s_p = 1;  // P^2
  int q_x = 0;  // g({t|P}) = (-1)^(q.t)
  int q_y = 0;
  std::string str() const;
  friend bool operator==(const SymmetryCase&, const SymmetryCase&) = default;
};
// Throws DomainError on values outside {+-1} x {+-1} x {0,1} x {0,1}.
void check_case(const SymmetryCase& c);
std::vector<SymmetryCase> all_symmetry_cases();  // 16 cases

// n generators squaring to -1, m to +1
struct CliffordSignature {
  int n = 0;
  int m = 0;
  friend bool operator==(const CliffordSignature&, const CliffordSignature&) = default;
};

CliffordSignature signature(const SymmetryCase& c);

enum class DivisionAlgebra { Real, Complex, Quaternion };
struct CliffordAlgebraType {
  DivisionAlgebra field;
  bool split;                // direct sum of two simple algebras
  int matrix_size;           // k in M_k(field)
  int real_irrep_dimension;  // real dimension of an irreducible module
};
CliffordAlgebraType clifford_algebra_type(const CliffordSignature& sig);

// Complex band degeneracy D = real irreducible dimension / 2, at least 1.
int irrep_dim(const CliffordSignature& sig);

// U K^c I^s with U constant; K complex conjugation, I momentum inversion.  The
// momentum prefactor exp(i (a k_x + b k_y) / 2) is kept as half_phase = {a, b}.
struct SymbolicOperator {
  Eigen::MatrixXcd u;
  bool antiunitary = false;
  bool inverts_momentum = false;
  std::array<int, 2> half_phase{0, 0};

  std::size_t dimension() const { return static_cast<std::size_t>(u.rows()); }
  // product without the momentum prefactors (renormalized operators)
  SymbolicOperator operator*(const SymbolicOperator& o) const;
  SymbolicOperator inverse() const;  // of the renormalized operator
  SymbolicOperator renormalized() const;  // drops half_phase
  static SymbolicOperator scalar(std::size_t dim, std::complex<double> z);
};

struct OperatorRep {
  std::size_t dimension = 0;
  SymbolicOperator l_x, l_y, p, t;
  std::string description;
};

// Shipped constructions: the 2-band reps for the twofold cases with s_t = +1, and
// the 4-band rep for s_t = s_p = +1, q = (1,1).  Others throw DomainError.
OperatorRep build_standard_rep(const SymmetryCase& c);
bool has_shipped_construction(const SymmetryCase& c);

struct RelationCheck {
  std::string relation;
  bool pass = false;
  double residual = 0;  // max |entry| of the difference; infinity on flag mismatch
};
struct AlgebraReport {
  std::vector<RelationCheck> checks;
  bool all_pass() const;
};

AlgebraReport check_algebra(const OperatorRep& rep, const SymmetryCase& c, double tolerance = 0.0);

// Conjugates every operator by w, keeping the relations: U -> w U w^-1 for unitary,
// U -> w U w^T for antiunitary operators.
OperatorRep conjugate(const OperatorRep& rep, const Eigen::MatrixXcd& w);

enum class Direction { X, Y };
struct WindingResult {
  std::int64_t winding = 0;
  double raw = 0;  // accumulated det phase / 2 pi
};
// Phase winding of det L(k) as k runs once around the Brillouin zone.
// Throws GridTooCoarse when the discretization cannot resolve it.
WindingResult winding_number(const SymbolicOperator& l, Direction d, int grid_points);
WindingResult winding_number(const OperatorRep& rep, Direction d, int grid_points);

struct DegeneracyOptions {
  int samples = 20;
  std::uint64_t seed = 1;
  bool symmetrize = true;
  double relative_tolerance = 1e-9;
  int max_reseeds = 8;
};
struct DegeneracyReport {
  int samples = 0;
  int expected = 0;  // irrep_dim
  int min_multiplicity = 0;
  int max_multiplicity = 0;
  bool multiples_of_expected = false;
  std::size_t symmetrizer_size = 0;
  int reseeds = 0;
};
// Random Hermitian matrices averaged over the momentum-preserving symmetry words
// (renormalized translations and PT); eigenvalue multiplicities are then clustered.
DegeneracyReport degeneracy_check(const SymmetryCase& c, const DegeneracyOptions& opt = {});
DegeneracyReport degeneracy_check(const OperatorRep& rep, int expected, const DegeneracyOptions& opt = {});

// Finite group generated by the given operators (unitary or antiunitary).
std::vector<SymbolicOperator> generate_group(const std::vector<SymbolicOperator>& gens, std::size_t limit = 4096);

}  // namespace qwp
