#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include <Eigen/QR>

#include "qwp/clifford.hpp"
#include "qwp/errors.hpp"

using namespace qwp;
using cd = std::complex<double>;

namespace {

struct TableColumn {
  int stsp, qx, qy, n, m, d;
};
// s_t s_p, q_x, q_y -> C^{n,m}, D
const TableColumn kTable2[] = {{+1, 0, 0, 2, 2, 2}, {+1, 1, 0, 1, 3, 2}, {+1, 0, 1, 1, 3, 2}, {+1, 1, 1, 0, 4, 4},
                               {-1, 0, 0, 4, 0, 4}, {-1, 1, 0, 3, 1, 4}, {-1, 0, 1, 3, 1, 4}, {-1, 1, 1, 2, 2, 2}};

std::vector<SymmetryCase> shipped_cases() {
  std::vector<SymmetryCase> out;
  for (const auto& c : all_symmetry_cases())
    if (has_shipped_construction(c)) out.push_back(c);
  return out;
}

Eigen::MatrixXcd haar_unitary(std::size_t n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Eigen::MatrixXcd z(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) z(i, j) = cd(g(rng), g(rng));
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(z);
  Eigen::MatrixXcd q = qr.householderQ();
  Eigen::MatrixXcd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t i = 0; i < n; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return q;
}

// random permutation with random fourth-root-of-unity phases
Eigen::MatrixXcd monomial_unitary(std::size_t n, std::mt19937_64& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  const cd phases[] = {1.0, cd(0, 1), -1.0, cd(0, -1)};
  Eigen::MatrixXcd w = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t i = 0; i < n; ++i) w(i, p[i]) = phases[rng() % 4];
  return w;
}

}  // namespace

TEST_CASE("signature and D reproduce the Clifford table") {
  for (const auto& col : kTable2)
    for (int st : {1, -1}) {
      SymmetryCase c{st, st * col.stsp, col.qx, col.qy};
      CAPTURE(c.str());
      auto sig = signature(c);
      CHECK(sig.n == col.n);
      CHECK(sig.m == col.m);
      CHECK(irrep_dim(sig) == col.d);
    }
  for (const auto& c : all_symmetry_cases()) {
    auto sig = signature(c);
    CHECK(sig.n + sig.m == 4);
  }
  CHECK(all_symmetry_cases().size() == 16);
  CHECK(irrep_dim({0, 0}) == 1);
}

TEST_CASE("algebra type depends only on (m - n) mod 8") {
  std::map<int, std::pair<DivisionAlgebra, bool>> seen;
  for (int n = 0; n <= 8; ++n)
    for (int m = 0; m <= 8; ++m) {
      auto t = clifford_algebra_type({n, m});
      const int key = ((m - n) % 8 + 8) % 8;
      auto [it, fresh] = seen.try_emplace(key, t.field, t.split);
      CHECK(it->second.first == t.field);
      CHECK(it->second.second == t.split);
      // dim_R C^{n,m} = 2^(n+m) = (1 or 2 blocks) * k^2 * dim_R(field)
      const long field_dim = t.field == DivisionAlgebra::Real ? 1 : t.field == DivisionAlgebra::Complex ? 2 : 4;
      CHECK((t.split ? 2 : 1) * long(t.matrix_size) * t.matrix_size * field_dim == (1L << (n + m)));
      CHECK(t.real_irrep_dimension == t.matrix_size * field_dim);
    }
  CHECK(seen.size() == 8);
  // known small cases: C^{1,0} = C, C^{0,1} = R + R, C^{2,0} = H
  CHECK(clifford_algebra_type({1, 0}).field == DivisionAlgebra::Complex);
  CHECK(clifford_algebra_type({0, 1}).split);
  CHECK(clifford_algebra_type({2, 0}).field == DivisionAlgebra::Quaternion);
}

TEST_CASE("shipped constructions") {
  auto cases = shipped_cases();
  CHECK(cases.size() == 5);
  for (const auto& c : cases) {
    CAPTURE(c.str());
    auto rep = build_standard_rep(c);
    CHECK(rep.dimension == static_cast<std::size_t>(irrep_dim(signature(c))));
    auto report = check_algebra(rep, c);
    for (const auto& r : report.checks) {
      CAPTURE(r.relation);
      CHECK(r.pass);
      CHECK(r.residual == 0.0);
    }
  }
  auto four = build_standard_rep({1, 1, 1, 1});
  CHECK(four.dimension == 4);
  CHECK(four.p.inverts_momentum);
  CHECK(four.t.antiunitary);
  CHECK(four.l_x.half_phase == std::array<int, 2>{1, 0});
}

TEST_CASE("unsupported cases name the signature and D") {
  try {
    build_standard_rep({-1, 1, 0, 0});
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    std::string msg = e.what();
    CHECK(msg.find("no shipped construction") != std::string::npos);
    CHECK(msg.find("(4,0)") != std::string::npos);
    CHECK(msg.find("D = 4") != std::string::npos);
  }
  CHECK_THROWS_AS(check_case({2, 1, 0, 0}), DomainError);
}

TEST_CASE("negative control: identity operators") {
  OperatorRep rep = build_standard_rep({1, 1, 0, 0});
  rep.p.u = Eigen::MatrixXcd::Identity(2, 2);
  rep.l_x.u = rep.l_y.u = Eigen::MatrixXcd::Identity(2, 2);
  auto report = check_algebra(rep, {1, -1, 0, 0});
  CHECK(!report.all_pass());
  bool p2_failed = false;
  for (const auto& r : report.checks)
    if (r.relation == "P^2 = s_p") p2_failed = !r.pass && r.residual == doctest::Approx(2.0);
  CHECK(p2_failed);
}

TEST_CASE("relations survive unitary conjugation") {
  std::mt19937_64 rng(12);
  for (const auto& c : shipped_cases()) {
    CAPTURE(c.str());
    auto rep = build_standard_rep(c);
    for (int k = 0; k < 10; ++k) {
      auto exact = check_algebra(conjugate(rep, monomial_unitary(rep.dimension, rng)), c);
      for (const auto& r : exact.checks) CHECK(r.residual == 0.0);
      auto haar = check_algebra(conjugate(rep, haar_unitary(rep.dimension, rng)), c, 1e-12);
      CHECK(haar.all_pass());
    }
  }
}

TEST_CASE("winding numbers") {
  for (const auto& c : shipped_cases()) {
    auto rep = build_standard_rep(c);
    if (rep.dimension != 2) continue;
    for (int grid : {16, 64, 256}) {
      CHECK(winding_number(rep, Direction::X, grid).winding == 1);
      CHECK(winding_number(rep, Direction::Y, grid).winding == 1);
    }
  }
  SymbolicOperator sx;
  sx.u = Eigen::MatrixXcd::Zero(2, 2);
  sx.u(0, 1) = sx.u(1, 0) = 1.0;
  sx.half_phase = {1, 0};
  CHECK(winding_number(sx, Direction::X, 100).winding == 1);

  SymbolicOperator constant = SymbolicOperator::scalar(2, cd(0, 1));
  CHECK(winding_number(constant, Direction::X, 16).winding == 0);

  SymbolicOperator full = SymbolicOperator::scalar(2, 1.0);
  full.half_phase = {2, 0};
  CHECK(winding_number(full, Direction::X, 64).winding == 2);
  CHECK(winding_number(full, Direction::Y, 64).winding == 0);

  // the 4-band rep is two copies of the 2-band pinor, so det winds twice
  auto four = build_standard_rep({1, 1, 1, 1});
  for (int grid : {16, 64, 256}) CHECK(winding_number(four, Direction::X, grid).winding == 2);

  CHECK_THROWS_AS(winding_number(sx, Direction::X, 4), DomainError);
  SymbolicOperator fast = SymbolicOperator::scalar(4, 1.0);
  fast.half_phase = {12, 0};  // det winds 24 times, far beyond what 16 points resolve
  CHECK_THROWS_AS(winding_number(fast, Direction::X, 16), GridTooCoarse);
}

TEST_CASE("degeneracy of symmetrized random Hamiltonians") {
  DegeneracyOptions opt;
  opt.samples = 20;
  auto four = degeneracy_check({1, 1, 1, 1}, opt);
  CHECK(four.min_multiplicity == 4);
  CHECK(four.multiples_of_expected);
  CHECK(four.samples == 20);
  for (const auto& c : shipped_cases()) {
    if (irrep_dim(signature(c)) != 2) continue;
    auto r = degeneracy_check(c, opt);
    CHECK(r.min_multiplicity == 2);
    CHECK(r.multiples_of_expected);
  }
  opt.symmetrize = false;
  auto control = degeneracy_check({1, 1, 1, 1}, opt);
  CHECK(control.min_multiplicity == 1);
  CHECK(!control.multiples_of_expected);
}

TEST_CASE("degeneracy check is deterministic in the seed") {
  DegeneracyOptions opt;
  opt.samples = 5;
  opt.seed = 42;
  auto a = degeneracy_check({1, 1, 1, 1}, opt), b = degeneracy_check({1, 1, 1, 1}, opt);
  CHECK(a.min_multiplicity == b.min_multiplicity);
  CHECK(a.max_multiplicity == b.max_multiplicity);
  CHECK(a.reseeds == b.reseeds);
}

TEST_CASE("symbolic composition") {
  auto rep = build_standard_rep({1, 1, 1, 1});
  auto t = rep.t.renormalized();
  auto tt = t * t;
  CHECK(!tt.antiunitary);
  CHECK(!tt.inverts_momentum);
  auto pt = rep.p.renormalized() * t;
  CHECK(pt.antiunitary);
  CHECK(!pt.inverts_momentum);
  auto inv = pt * pt.inverse();
  CHECK((inv.u - Eigen::MatrixXcd::Identity(4, 4)).norm() == 0.0);
  CHECK(generate_group({rep.l_x, rep.l_y}).size() == 8);  // {+-1, +-Lx, +-Ly, +-LxLy}
}
