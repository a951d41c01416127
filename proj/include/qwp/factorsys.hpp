#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qwp/f2.hpp"
#include "qwp/groupcore.hpp"

namespace qwp {

// All factor-system data is stored as F2 exponents: value = (-1)^bit.

// sigma(t1,t2) = (-1)^{t1^T A t2}, A strictly lower triangular.
struct TranslationFactor {
  int dim = 0;
  std::vector<std::vector<std::uint8_t>> a;  // a[i][j], nonzero only for i > j

  explicit TranslationFactor(int d = 0) : dim(d), a(d, std::vector<std::uint8_t>(d, 0)) {}
  int exponent(const LatticeVector& t1, const LatticeVector& t2) const;
  bool is_canonical() const;
};

// g(t,R) = (-1)^{sum_{i>j} b_ij t_i t_j + sum_i b_ii binom(t_i,2) + q.t}
struct GFactor {
  int dim = 0;
  std::vector<std::vector<std::vector<std::uint8_t>>> b;  // b[R][i][j], i >= j
  std::vector<std::vector<std::uint8_t>> q;               // q[R][i]

  GFactor() = default;
  GFactor(int d, int order);
  int exponent(const LatticeVector& t, int r) const;
};

struct AlphaFactor {
  std::vector<std::vector<std::uint8_t>> table;  // table[R1][R2]
  explicit AlphaFactor(int order = 0) : table(order, std::vector<std::uint8_t>(order, 0)) {}
};

struct FactorSystem {
  std::shared_ptr<const WallpaperGroup> group;
  TranslationFactor sigma;
  GFactor g;
  AlphaFactor alpha;

  explicit FactorSystem(std::shared_ptr<const WallpaperGroup> grp);  // the trivial system
};

// Positions of the unknowns: A (i>j, row-major), then b[R] (i>=j, row-major) for
// every R, then q[R] for every R, then alpha[R1][R2] row-major.
class UnknownLayout {
public:
  UnknownLayout(int dim, int order);
  int dim() const { return d_; }
  int order() const { return n_; }
  std::size_t size() const { return size_; }
  std::size_t a(int i, int j) const;  // i > j
  std::size_t b(int r, int i, int j) const;  // i >= j
  std::size_t q(int r, int i) const;
  std::size_t alpha(int r1, int r2) const;
  std::size_t a_begin() const { return 0; }
  std::size_t b_begin() const { return b0_; }
  std::size_t q_begin() const { return q0_; }
  std::size_t alpha_begin() const { return al0_; }
  std::vector<std::string> names(const WallpaperGroup& g) const;

private:
  int d_, n_;
  std::size_t b0_, q0_, al0_, size_;
  int nb_;
};

BitVector to_bits(const FactorSystem& fs);
FactorSystem from_bits(std::shared_ptr<const WallpaperGroup> g, const BitVector& x);

// Exponent of nu(g1,g2) = sigma(t1,R1t2) sigma(t1+R1t2, w) g^-1(R1t2,R1) alpha(R1,R2).
int nu_exponent(const FactorSystem& fs, const SpaceGroupElement& g1, const SpaceGroupElement& g2);
// +1 or -1
int evaluate(const FactorSystem& fs, const SpaceGroupElement& g1, const SpaceGroupElement& g2);

struct CocycleViolation {
  SpaceGroupElement g1, g2, g3;
};

struct CocycleReport {
  std::int64_t triples_checked = 0;
  std::optional<CocycleViolation> first_violation;
  bool ok() const { return !first_violation; }
};

// Exhaustive check of nu(g1,g2) nu(g1g2,g3) = nu(g1,g2g3) nu(g2,g3) over all point-group
// parts and all |t_i| <= radius.
CocycleReport check_cocycle(const FactorSystem& fs, int radius);
// Same check for many systems of one group at once (64 per pass).
std::vector<CocycleReport> check_cocycle(const std::vector<FactorSystem>& systems, int radius);

F2AffineSystem assemble_consistency_system(const WallpaperGroup& g);

// Basis of coboundary vectors in the unknown coordinates (kappa . t and phi generators).
std::vector<BitVector> coboundary_space(const WallpaperGroup& g);
// Coboundary of psi(t) = kappa.t and phi (phi[E] ignored), as a vector in unknown coordinates.
BitVector coboundary_vector(const WallpaperGroup& g, const std::vector<std::uint8_t>& kappa,
                            const std::vector<std::uint8_t>& phi);

// Rank of the solution space projected onto the b and q coordinates.
int g_part_dimension(const WallpaperGroup& g, const std::vector<BitVector>& solutions);

struct ClassificationResult {
  std::string group;
  int h2_dimension = 0;
  int solution_dimension = 0;
  int coboundary_dimension = 0;
  int g_part_dimension = 0;
  bool flux_forced_trivial = false;
  std::vector<FactorSystem> representatives;  // trivial class first, then lexicographic
};

struct ClassifyOptions {
  int verify_radius = 1;  // 0 skips the cocycle re-check of representatives
  bool representatives = true;
};

ClassificationResult classify(std::shared_ptr<const WallpaperGroup> g, const ClassifyOptions& opt = {});

struct EquivalenceWitness {
  std::vector<std::uint8_t> kappa;  // psi(t) = (-1)^{kappa.t}
  std::vector<std::uint8_t> phi;    // phi[R], phi[E] = 0
};

// Follows the four-step check: compare sigma, find kappa with matching g, then solve for phi.
// The witness maps fs1 onto fs2.
std::optional<EquivalenceWitness> are_equivalent(const FactorSystem& fs1, const FactorSystem& fs2);

FactorSystem apply_coboundary(const FactorSystem& fs, const EquivalenceWitness& w);

// (-1)^{t1^T (A + A^T) t2}
int wilson_loop(const TranslationFactor& sigma, const LatticeVector& t1, const LatticeVector& t2);

struct PointGroupRestriction {
  AlphaFactor alpha;
  bool is_factor_system = false;
};
PointGroupRestriction restrict_to_point_group(const FactorSystem& fs);

// Serialization helpers shared by the CLI and Python bindings.
std::string sigma_bits(const FactorSystem& fs);
std::string alpha_bits(const FactorSystem& fs);
std::string b_bits(const FactorSystem& fs, int r);
std::string q_bits(const FactorSystem& fs, int r);

}  // namespace qwp
