#include "qwp/clifford.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "qwp/errors.hpp"

namespace qwp {

using cd = std::complex<double>;
using Eigen::MatrixXcd;

std::string SymmetryCase::str() const {
  auto pm = [](int s) { return s > 0 ? std::string("+1") : std::string("-1"); };
  return "(s_t=" + pm(s_t) + ", s_p=" + pm(s_p) + ", q=(" + std::to_string(q_x) + "," + std::to_string(q_y) + "))";
}

void check_case(const SymmetryCase& c) {
  if ((c.s_t != 1 && c.s_t != -1) || (c.s_p != 1 && c.s_p != -1))
    throw DomainError("s_t and s_p must be +1 or -1");
  if ((c.q_x != 0 && c.q_x != 1) || (c.q_y != 0 && c.q_y != 1)) throw DomainError("q_x and q_y must be 0 or 1");
}

std::vector<SymmetryCase> all_symmetry_cases() {
  std::vector<SymmetryCase> out;
  for (int st : {1, -1})
    for (int sp : {1, -1})
      for (int qy : {0, 1})
        for (int qx : {0, 1}) out.push_back({st, sp, qx, qy});
  return out;
}

CliffordSignature signature(const SymmetryCase& c) {
  check_case(c);
  CliffordSignature s;
  // PT and iPT square to s_p s_t; i^(1-q) L squares to (-1)^(1-q)
  int neg = (c.s_p * c.s_t < 0 ? 2 : 0) + (c.q_x == 0) + (c.q_y == 0);
  s.n = neg;
  s.m = 4 - neg;
  return s;
}

CliffordAlgebraType clifford_algebra_type(const CliffordSignature& sig) {
  if (sig.n < 0 || sig.m < 0) throw DomainError("signature counts must be non-negative");
  const int total = sig.n + sig.m;
  if (total > 60) throw DomainError("signature too large");
  const int r = ((sig.m - sig.n) % 8 + 8) % 8;
  auto pow2 = [](int e) { return 1 << e; };
  CliffordAlgebraType t{};
  switch (r) {
    case 0:
    case 2:
      t = {DivisionAlgebra::Real, false, pow2(total / 2), 0};
      t.real_irrep_dimension = t.matrix_size;
      break;
    case 1:
      t = {DivisionAlgebra::Real, true, pow2((total - 1) / 2), 0};
      t.real_irrep_dimension = t.matrix_size;
      break;
    case 3:
    case 7:
      t = {DivisionAlgebra::Complex, false, pow2((total - 1) / 2), 0};
      t.real_irrep_dimension = 2 * t.matrix_size;
      break;
    case 4:
    case 6:
      t = {DivisionAlgebra::Quaternion, false, pow2((total - 2) / 2), 0};
      t.real_irrep_dimension = 4 * t.matrix_size;
      break;
    default:
      t = {DivisionAlgebra::Quaternion, true, pow2((total - 3) / 2), 0};
      t.real_irrep_dimension = 4 * t.matrix_size;
      break;
  }
  return t;
}

int irrep_dim(const CliffordSignature& sig) {
  int real = clifford_algebra_type(sig).real_irrep_dimension;
  return std::max(1, (real + 1) / 2);
}

// ---- symbolic operators

SymbolicOperator SymbolicOperator::operator*(const SymbolicOperator& o) const {
  if (o.dimension() != dimension()) throw ContractViolation("operator dimensions differ");
  SymbolicOperator r;
  r.u = u * (antiunitary ? MatrixXcd(o.u.conjugate()) : o.u);
  r.antiunitary = antiunitary != o.antiunitary;
  r.inverts_momentum = inverts_momentum != o.inverts_momentum;
  return r;
}

SymbolicOperator SymbolicOperator::inverse() const {
  SymbolicOperator r = renormalized();
  r.u = antiunitary ? MatrixXcd(u.transpose()) : MatrixXcd(u.adjoint());
  return r;
}

SymbolicOperator SymbolicOperator::renormalized() const {
  SymbolicOperator r = *this;
  r.half_phase = {0, 0};
  return r;
}

SymbolicOperator SymbolicOperator::scalar(std::size_t dim, cd z) {
  SymbolicOperator r;
  r.u = MatrixXcd::Identity(dim, dim) * z;
  return r;
}

namespace {

const cd I(0, 1);

MatrixXcd pauli(int k) {
  MatrixXcd m(2, 2);
  switch (k) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -I, I, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

MatrixXcd kron(const MatrixXcd& a, const MatrixXcd& b) {
  MatrixXcd r(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) r.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return r;
}

SymbolicOperator op(MatrixXcd u, bool anti, bool inv, std::array<int, 2> ph = {0, 0}) {
  SymbolicOperator o;
  o.u = std::move(u);
  o.antiunitary = anti;
  o.inverts_momentum = inv;
  o.half_phase = ph;
  return o;
}

double distance(const SymbolicOperator& a, const SymbolicOperator& b) {
  if (a.antiunitary != b.antiunitary || a.inverts_momentum != b.inverts_momentum || a.dimension() != b.dimension())
    return std::numeric_limits<double>::infinity();
  return (a.u - b.u).cwiseAbs().maxCoeff();
}

SymbolicOperator scaled(const SymbolicOperator& a, cd z) {
  SymbolicOperator r = a;
  r.u *= z;
  return r;
}

}  // namespace

bool has_shipped_construction(const SymmetryCase& c) {
  check_case(c);
  if (c.s_t != 1) return false;
  int d = irrep_dim(signature(c));
  return d == 2 || (c.s_p == 1 && c.q_x == 1 && c.q_y == 1);
}

OperatorRep build_standard_rep(const SymmetryCase& c) {
  check_case(c);
  const int d = irrep_dim(signature(c));
  if (!has_shipped_construction(c))
    throw DomainError("no shipped construction for " + c.str() + " (signature (" + std::to_string(signature(c).n) +
                      "," + std::to_string(signature(c).m) + "), D = " + std::to_string(d) + ")");
  OperatorRep rep;
  if (d == 4) {
    rep.dimension = 4;
    rep.l_x = op(kron(pauli(1), pauli(0)), false, false, {1, 0});
    rep.l_y = op(kron(pauli(3), pauli(0)), false, false, {0, 1});
    rep.p = op(kron(pauli(2), pauli(2)), false, true);
    rep.t = op(MatrixXcd::Identity(4, 4), true, true);
    rep.description = "L_x = e^{ik_x/2} s1 x t0, L_y = e^{ik_y/2} s3 x t0, P = s2 x t2 I, T = K I";
    return rep;
  }
  rep.dimension = 2;
  rep.l_x = op(pauli(1), false, false, {1, 0});
  rep.l_y = op(pauli(2), false, false, {0, 1});
  rep.t = op(pauli(1), true, true);
  std::string pdesc;
  if (c.s_p == -1) {
    rep.p = op(I * pauli(3), false, true);
    pdesc = "i s_z I";
  } else if (c.q_x == 1) {
    rep.p = op(pauli(2), false, true);
    pdesc = "s_y I";
  } else if (c.q_y == 1) {
    rep.p = op(pauli(1), false, true);
    pdesc = "s_x I";
  } else {
    rep.p = op(pauli(0), false, true);
    pdesc = "I";
  }
  rep.description = "L_x = e^{ik_x/2} s_x, L_y = e^{ik_y/2} s_y, P = " + pdesc + ", T = s_x K I";
  return rep;
}

bool AlgebraReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const RelationCheck& r) { return r.pass; });
}

AlgebraReport check_algebra(const OperatorRep& rep, const SymmetryCase& c, double tolerance) {
  check_case(c);
  const std::size_t n = rep.dimension;
  const auto x = rep.l_x.renormalized(), y = rep.l_y.renormalized();
  const auto p = rep.p.renormalized(), t = rep.t.renormalized();
  const auto one = SymbolicOperator::scalar(n, 1.0);
  const auto i = SymbolicOperator::scalar(n, I);
  AlgebraReport r;
  auto add = [&](std::string rel, const SymbolicOperator& lhs, const SymbolicOperator& rhs) {
    double d = distance(lhs, rhs);
    r.checks.push_back({std::move(rel), d <= tolerance, d});
  };
  add("{Lx,Ly} = 0", x * y, scaled(y * x, -1.0));
  add("Lx^2 = 1", x * x, one);
  add("Ly^2 = 1", y * y, one);
  add("P^2 = s_p", p * p, scaled(one, c.s_p));
  add("T^2 = s_t", t * t, scaled(one, c.s_t));
  add("[T,P] = 0", t * p, p * t);
  add("[T,Lx] = 0", t * x, x * t);
  add("[T,Ly] = 0", t * y, y * t);
  add("{i,T} = 0", i * t, scaled(t * i, -1.0));
  add("Lx P = (-1)^q_x P Lx", x * p, scaled(p * x, c.q_x ? -1.0 : 1.0));
  add("Ly P = (-1)^q_y P Ly", y * p, scaled(p * y, c.q_y ? -1.0 : 1.0));
  bool flags = t.antiunitary && !p.antiunitary && !x.antiunitary && !y.antiunitary;
  r.checks.push_back({"only T is antiunitary", flags, flags ? 0.0 : std::numeric_limits<double>::infinity()});
  return r;
}

OperatorRep conjugate(const OperatorRep& rep, const MatrixXcd& w) {
  OperatorRep r = rep;
  const MatrixXcd wi = w.adjoint();
  for (SymbolicOperator* o : {&r.l_x, &r.l_y, &r.p, &r.t})
    o->u = o->antiunitary ? MatrixXcd(w * o->u * w.transpose()) : MatrixXcd(w * o->u * wi);
  return r;
}

// ---- winding numbers

WindingResult winding_number(const SymbolicOperator& l, Direction d, int grid_points) {
  if (grid_points < 8) throw DomainError("winding grid needs at least 8 points, got " + std::to_string(grid_points));
  const int a = l.half_phase[d == Direction::X ? 0 : 1];
  const double two_pi = 2 * std::numbers::pi;
  auto det_at = [&](double k) {
    MatrixXcd m = std::exp(I * (0.5 * a * k)) * l.u;
    return m.determinant();
  };
  double total = 0;
  cd prev = det_at(0);
  if (std::abs(prev) < 1e-12) throw DomainError("operator is singular");
  for (int j = 1; j <= grid_points; ++j) {
    cd cur = det_at(two_pi * j / grid_points);
    double step = std::arg(cur / prev);
    if (std::abs(step) > std::numbers::pi / 2)
      throw GridTooCoarse("phase step " + std::to_string(step) + " exceeds pi/2 at grid " + std::to_string(grid_points));
    total += step;
    prev = cur;
  }
  WindingResult r;
  r.raw = total / two_pi;
  r.winding = std::llround(r.raw);
  if (std::abs(total - two_pi * static_cast<double>(r.winding)) > 0.1)
    throw GridTooCoarse("accumulated phase " + std::to_string(total) + " is not a multiple of 2 pi");
  return r;
}

WindingResult winding_number(const OperatorRep& rep, Direction d, int grid_points) {
  return winding_number(d == Direction::X ? rep.l_x : rep.l_y, d, grid_points);
}

// ---- degeneracy

std::vector<SymbolicOperator> generate_group(const std::vector<SymbolicOperator>& gens, std::size_t limit) {
  if (gens.empty()) return {};
  std::vector<SymbolicOperator> out{SymbolicOperator::scalar(gens[0].dimension(), 1.0)};
  auto known = [&](const SymbolicOperator& s) {
    return std::any_of(out.begin(), out.end(), [&](const SymbolicOperator& o) { return distance(o, s) < 1e-9; });
  };
  for (std::size_t k = 0; k < out.size(); ++k)
    for (const auto& g : gens) {
      SymbolicOperator s = out[k] * g.renormalized();
      if (!known(s)) {
        if (out.size() >= limit) throw DomainError("symmetry group exceeds " + std::to_string(limit) + " elements");
        out.push_back(std::move(s));
      }
    }
  return out;
}

namespace {

std::vector<int> multiplicities(const Eigen::VectorXd& ev, double tol, bool& ambiguous) {
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  std::vector<int> out{1};
  ambiguous = false;
  for (Eigen::Index k = 1; k < ev.size(); ++k) {
    double gap = (ev[k] - ev[k - 1]) / scale;
    if (gap < tol) {
      ++out.back();
    } else {
      if (gap < 1e4 * tol) ambiguous = true;
      out.push_back(1);
    }
  }
  return out;
}

}  // namespace

DegeneracyReport degeneracy_check(const OperatorRep& rep, int expected, const DegeneracyOptions& opt) {
  if (opt.samples < 1) throw DomainError("degeneracy check needs at least one sample");
  const auto n = static_cast<Eigen::Index>(rep.dimension);
  // words that fix a generic momentum: translations and PT
  std::vector<SymbolicOperator> sym{SymbolicOperator::scalar(rep.dimension, 1.0)};
  if (opt.symmetrize) sym = generate_group({rep.l_x, rep.l_y, rep.p.renormalized() * rep.t.renormalized()});
  DegeneracyReport r;
  r.expected = expected;
  r.symmetrizer_size = sym.size();
  r.min_multiplicity = std::numeric_limits<int>::max();
  r.multiples_of_expected = true;
  std::mt19937_64 rng(opt.seed);
  std::normal_distribution<double> gauss;
  for (int s = 0; s < opt.samples; ++s) {
    for (int attempt = 0;; ++attempt) {
      MatrixXcd h(n, n);
      for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) h(i, j) = cd(gauss(rng), gauss(rng));
      h = (h + h.adjoint()).eval();
      MatrixXcd acc = MatrixXcd::Zero(n, n);
      for (const auto& g : sym) {
        const MatrixXcd& hh = g.antiunitary ? MatrixXcd(h.conjugate()) : h;
        acc += g.u * hh * g.u.adjoint();
      }
      acc /= static_cast<double>(sym.size());
      acc = (0.5 * (acc + acc.adjoint())).eval();
      Eigen::SelfAdjointEigenSolver<MatrixXcd> es(acc, Eigen::EigenvaluesOnly);
      bool ambiguous = false;
      auto mult = multiplicities(es.eigenvalues(), opt.relative_tolerance, ambiguous);
      if (ambiguous && attempt < opt.max_reseeds) {
        ++r.reseeds;
        continue;
      }
      for (int m : mult) {
        r.min_multiplicity = std::min(r.min_multiplicity, m);
        r.max_multiplicity = std::max(r.max_multiplicity, m);
        if (expected <= 0 || m % expected != 0) r.multiples_of_expected = false;
      }
      break;
    }
    ++r.samples;
  }
  return r;
}

DegeneracyReport degeneracy_check(const SymmetryCase& c, const DegeneracyOptions& opt) {
  return degeneracy_check(build_standard_rep(c), irrep_dim(signature(c)), opt);
}

}  // namespace qwp
