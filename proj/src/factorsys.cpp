#include "qwp/factorsys.hpp"

#include <algorithm>
#include <array>

namespace qwp {

namespace {

template <class F>
void sigma_terms(const UnknownLayout& L, const LatticeVector& u, const LatticeVector& v, F&& toggle) {
  for (int i = 1; i < L.dim(); ++i)
    for (int j = 0; j < i; ++j)
      if (mod2(u[i]) & mod2(v[j])) toggle(L.a(i, j));
}

template <class F>
void g_terms(const UnknownLayout& L, int r, const LatticeVector& t, F&& toggle) {
  for (int i = 0; i < L.dim(); ++i) {
    for (int j = 0; j < i; ++j)
      if (mod2(t[i]) & mod2(t[j])) toggle(L.b(r, i, j));
    if (mod2(binom2(t[i]))) toggle(L.b(r, i, i));
    if (mod2(t[i])) toggle(L.q(r, i));
  }
}

// Unknowns with odd coefficient in the exponent of nu(g1,g2).
template <class F>
void nu_terms(const WallpaperGroup& G, const UnknownLayout& L, const SpaceGroupElement& g1,
              const SpaceGroupElement& g2, F&& toggle) {
  LatticeVector u = G.matrix(g1.r) * g2.t;
  const LatticeVector& w = G.omega(g1.r, g2.r);
  sigma_terms(L, g1.t, u, toggle);
  sigma_terms(L, g1.t + u, w, toggle);
  g_terms(L, g1.r, u, toggle);
  toggle(L.alpha(g1.r, g2.r));
}

// (R^-T + 1) kappa mod 2
std::vector<std::uint8_t> q_shift(const WallpaperGroup& G, int r, const std::vector<std::uint8_t>& kappa) {
  const int d = G.dim();
  const auto& ri = G.inverse_matrix(r);
  std::vector<std::uint8_t> out(d);
  for (int i = 0; i < d; ++i) {
    std::int64_t s = kappa[i];
    for (int k = 0; k < d; ++k) s += ri(k, i) * kappa[k];
    out[i] = static_cast<std::uint8_t>(mod2(s));
  }
  return out;
}

int kappa_dot(const std::vector<std::uint8_t>& kappa, const LatticeVector& w) {
  std::int64_t s = 0;
  for (int i = 0; i < w.dim; ++i) s += kappa[i] * w[i];
  return mod2(s);
}

std::vector<SpaceGroupElement> ball(const WallpaperGroup& G, int radius) {
  const int d = G.dim();
  std::vector<SpaceGroupElement> out;
  const int side = 2 * radius + 1;
  int cells = 1;
  for (int i = 0; i < d; ++i) cells *= side;
  for (int r = 0; r < G.order(); ++r)
    for (int c = 0; c < cells; ++c) {
      LatticeVector t(d);
      int x = c;
      for (int i = 0; i < d; ++i) {
        t[i] = x % side - radius;
        x /= side;
      }
      out.push_back({t, r});
    }
  return out;
}

}  // namespace

// ---- forms

int TranslationFactor::exponent(const LatticeVector& t1, const LatticeVector& t2) const {
  int e = 0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      if (a[i][j]) e ^= mod2(t1[i]) & mod2(t2[j]);
  return e;
}

bool TranslationFactor::is_canonical() const {
  for (int i = 0; i < dim; ++i)
    for (int j = i; j < dim; ++j)
      if (a[i][j]) return false;
  return true;
}

GFactor::GFactor(int d, int order)
    : dim(d),
      b(order, std::vector<std::vector<std::uint8_t>>(d, std::vector<std::uint8_t>(d, 0))),
      q(order, std::vector<std::uint8_t>(d, 0)) {}

int GFactor::exponent(const LatticeVector& t, int r) const {
  int e = 0;
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < i; ++j)
      if (b[r][i][j]) e ^= mod2(t[i]) & mod2(t[j]);
    if (b[r][i][i]) e ^= mod2(binom2(t[i]));
    if (q[r][i]) e ^= mod2(t[i]);
  }
  return e;
}

FactorSystem::FactorSystem(std::shared_ptr<const WallpaperGroup> grp)
    : group(std::move(grp)),
      sigma(group->dim()),
      g(group->dim(), group->order()),
      alpha(group->order()) {}

// ---- layout

UnknownLayout::UnknownLayout(int dim, int order) : d_(dim), n_(order) {
  nb_ = d_ * (d_ + 1) / 2;
  b0_ = static_cast<std::size_t>(d_ * (d_ - 1) / 2);
  q0_ = b0_ + static_cast<std::size_t>(n_ * nb_);
  al0_ = q0_ + static_cast<std::size_t>(n_ * d_);
  size_ = al0_ + static_cast<std::size_t>(n_ * n_);
}

std::size_t UnknownLayout::a(int i, int j) const { return static_cast<std::size_t>(i * (i - 1) / 2 + j); }
std::size_t UnknownLayout::b(int r, int i, int j) const {
  return b0_ + static_cast<std::size_t>(r * nb_ + i * (i + 1) / 2 + j);
}
std::size_t UnknownLayout::q(int r, int i) const { return q0_ + static_cast<std::size_t>(r * d_ + i); }
std::size_t UnknownLayout::alpha(int r1, int r2) const {
  return al0_ + static_cast<std::size_t>(r1 * n_ + r2);
}

std::vector<std::string> UnknownLayout::names(const WallpaperGroup& g) const {
  std::vector<std::string> out(size_);
  auto ij = [](int i, int j) { return "[" + std::to_string(i) + "," + std::to_string(j) + "]"; };
  for (int i = 1; i < d_; ++i)
    for (int j = 0; j < i; ++j) out[a(i, j)] = "A" + ij(i, j);
  for (int r = 0; r < n_; ++r) {
    for (int i = 0; i < d_; ++i) {
      for (int j = 0; j <= i; ++j) out[b(r, i, j)] = "b[" + g.label(r) + "]" + ij(i, j);
      out[q(r, i)] = "q[" + g.label(r) + "][" + std::to_string(i) + "]";
    }
    for (int s = 0; s < n_; ++s) out[alpha(r, s)] = "alpha[" + g.label(r) + "," + g.label(s) + "]";
  }
  return out;
}

BitVector to_bits(const FactorSystem& fs) {
  const auto& G = *fs.group;
  UnknownLayout L(G.dim(), G.order());
  BitVector x(L.size());
  for (int i = 1; i < G.dim(); ++i)
    for (int j = 0; j < i; ++j) x.set(L.a(i, j), fs.sigma.a[i][j]);
  for (int r = 0; r < G.order(); ++r) {
    for (int i = 0; i < G.dim(); ++i) {
      for (int j = 0; j <= i; ++j) x.set(L.b(r, i, j), fs.g.b[r][i][j]);
      x.set(L.q(r, i), fs.g.q[r][i]);
    }
    for (int s = 0; s < G.order(); ++s) x.set(L.alpha(r, s), fs.alpha.table[r][s]);
  }
  return x;
}

FactorSystem from_bits(std::shared_ptr<const WallpaperGroup> g, const BitVector& x) {
  FactorSystem fs(std::move(g));
  const auto& G = *fs.group;
  UnknownLayout L(G.dim(), G.order());
  if (x.size() != L.size()) throw ContractViolation("from_bits: vector length does not match the layout");
  for (int i = 1; i < G.dim(); ++i)
    for (int j = 0; j < i; ++j) fs.sigma.a[i][j] = x.get(L.a(i, j));
  for (int r = 0; r < G.order(); ++r) {
    for (int i = 0; i < G.dim(); ++i) {
      for (int j = 0; j <= i; ++j) fs.g.b[r][i][j] = x.get(L.b(r, i, j));
      fs.g.q[r][i] = x.get(L.q(r, i));
    }
    for (int s = 0; s < G.order(); ++s) fs.alpha.table[r][s] = x.get(L.alpha(r, s));
  }
  return fs;
}

// ---- evaluation

int nu_exponent(const FactorSystem& fs, const SpaceGroupElement& g1, const SpaceGroupElement& g2) {
  const auto& G = *fs.group;
  LatticeVector u = G.matrix(g1.r) * g2.t;
  const LatticeVector& w = G.omega(g1.r, g2.r);
  return fs.sigma.exponent(g1.t, u) ^ fs.sigma.exponent(g1.t + u, w) ^ fs.g.exponent(u, g1.r) ^
         fs.alpha.table[g1.r][g2.r];
}

int evaluate(const FactorSystem& fs, const SpaceGroupElement& g1, const SpaceGroupElement& g2) {
  return nu_exponent(fs, g1, g2) ? -1 : 1;
}

std::vector<CocycleReport> check_cocycle(const std::vector<FactorSystem>& systems, int radius) {
  if (radius < 1) throw ContractViolation("check_cocycle: radius must be >= 1");
  std::vector<CocycleReport> out(systems.size());
  if (systems.empty()) return out;
  const auto grp = systems.front().group;
  for (const auto& fs : systems)
    if (fs.group->name() != grp->name()) throw ContractViolation("check_cocycle: mixed groups");
  const WallpaperGroup& G = *grp;
  UnknownLayout L(G.dim(), G.order());
  const auto elems = ball(G, radius);
  const std::size_t m = elems.size();

  for (std::size_t base = 0; base < systems.size(); base += 64) {
    const std::size_t lanes = std::min<std::size_t>(64, systems.size() - base);
    // bit k of lane[u] = unknown u of system base+k
    std::vector<std::uint64_t> lane(L.size(), 0);
    for (std::size_t k = 0; k < lanes; ++k) {
      BitVector x = to_bits(systems[base + k]);
      for (std::size_t u = 0; u < L.size(); ++u)
        if (x.get(u)) lane[u] |= std::uint64_t{1} << k;
    }
    auto nu_mask = [&](const SpaceGroupElement& a, const SpaceGroupElement& b) {
      std::uint64_t acc = 0;
      nu_terms(G, L, a, b, [&](std::size_t u) { acc ^= lane[u]; });
      return acc;
    };
    // nu(g2,g3) and g2 g3 for elements inside the ball
    std::vector<std::uint64_t> nu_tab(m * m);
    std::vector<SpaceGroupElement> prod_tab(m * m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) {
        nu_tab[i * m + j] = nu_mask(elems[i], elems[j]);
        prod_tab[i * m + j] = multiply(G, elems[i], elems[j]);
      }
    const std::uint64_t all = lanes == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << lanes) - 1;
    std::uint64_t bad = 0;
    std::int64_t count = 0;
    for (std::size_t i = 0; i < m && bad != all; ++i)
      for (std::size_t j = 0; j < m && bad != all; ++j) {
        const std::uint64_t n12 = nu_tab[i * m + j];
        const SpaceGroupElement& g12 = prod_tab[i * m + j];
        for (std::size_t k = 0; k < m; ++k) {
          std::uint64_t defect = n12 ^ nu_tab[j * m + k] ^ nu_mask(g12, elems[k]) ^
                                 nu_mask(elems[i], prod_tab[j * m + k]);
          ++count;
          defect &= ~bad;
          if (!defect) continue;
          for (std::size_t l = 0; l < lanes; ++l)
            if ((defect >> l) & 1) {
              out[base + l].first_violation = CocycleViolation{elems[i], elems[j], elems[k]};
              out[base + l].triples_checked = count;
            }
          bad |= defect;
        }
      }
    for (std::size_t l = 0; l < lanes; ++l)
      if (!((bad >> l) & 1)) out[base + l].triples_checked = count;
  }
  return out;
}

CocycleReport check_cocycle(const FactorSystem& fs, int radius) {
  return check_cocycle(std::vector<FactorSystem>{fs}, radius).front();
}

// ---- consistency equations

F2AffineSystem assemble_consistency_system(const WallpaperGroup& G) {
  const int d = G.dim(), n = G.order();
  UnknownLayout L(d, n);
  F2AffineSystem sys;
  sys.unknowns = L.names(G);
  auto fresh = [&] { return BitVector(L.size()); };

  // Compatible flux: R^-T A R^-1 + A equals the second difference of g's exponent.
  for (int r = 0; r < n; ++r) {
    const auto& ri = G.inverse_matrix(r);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) {
        BitVector row = fresh();
        for (int k = 1; k < d; ++k)
          for (int l = 0; l < k; ++l)
            if (mod2(ri(k, i) * ri(l, j))) row.flip(L.a(k, l));
        if (i > j) row.flip(L.a(i, j));
        row.flip(L.b(r, std::max(i, j), std::min(i, j)));
        sys.add(std::move(row), false,
                "flux " + G.label(r) + " (" + std::to_string(i) + "," + std::to_string(j) + ")");
      }
  }

  // Twisted covariance of g on {e_i} u {2e_i} u {e_i+e_j}; these points fix a
  // degree-two integer-valued form modulo 2.
  std::vector<LatticeVector> span;
  for (int i = 0; i < d; ++i) {
    span.push_back(LatticeVector::unit(d, i));
    span.push_back(2 * LatticeVector::unit(d, i));
    for (int j = 0; j < i; ++j) span.push_back(LatticeVector::unit(d, i) + LatticeVector::unit(d, j));
  }
  for (int r1 = 0; r1 < n; ++r1)
    for (int r2 = 0; r2 < n; ++r2) {
      const LatticeVector& w = G.omega(r1, r2);
      for (const auto& t : span) {
        BitVector row = fresh();
        auto toggle = [&](std::size_t u) { row.flip(u); };
        g_terms(L, G.product(r1, r2), t, toggle);
        g_terms(L, r1, t, toggle);
        g_terms(L, r2, G.inverse_matrix(r1) * t, toggle);
        // sigma(w,t) sigma(t,w)
        sigma_terms(L, w, t, toggle);
        sigma_terms(L, t, w, toggle);
        sys.add(std::move(row), false, "covariance " + G.label(r1) + "," + G.label(r2) + " t=" + t.str());
      }
    }

  // Twisted cocycle equation for alpha.
  for (int r1 = 0; r1 < n; ++r1)
    for (int r2 = 0; r2 < n; ++r2)
      for (int r3 = 0; r3 < n; ++r3) {
        BitVector row = fresh();
        auto toggle = [&](std::size_t u) { row.flip(u); };
        const int r12 = G.product(r1, r2), r23 = G.product(r2, r3);
        toggle(L.alpha(r1, r2));
        toggle(L.alpha(r12, r3));
        toggle(L.alpha(r1, r23));
        toggle(L.alpha(r2, r3));
        LatticeVector rw = G.matrix(r1) * G.omega(r2, r3);
        g_terms(L, r1, rw, toggle);
        sigma_terms(L, rw, G.omega(r1, r23), toggle);
        sigma_terms(L, G.omega(r1, r2), G.omega(r12, r3), toggle);
        sys.add(std::move(row), false, "alpha " + G.label(r1) + "," + G.label(r2) + "," + G.label(r3));
      }

  // alpha(E,R) = alpha(R,E) = 0
  const int e = G.identity();
  for (int r = 0; r < n; ++r) {
    sys.pin(L.alpha(e, r), false, "normalization alpha[E," + G.label(r) + "]");
    if (r != e) sys.pin(L.alpha(r, e), false, "normalization alpha[" + G.label(r) + ",E]");
  }
  return sys;
}

// ---- equivalence

BitVector coboundary_vector(const WallpaperGroup& G, const std::vector<std::uint8_t>& kappa,
                            const std::vector<std::uint8_t>& phi) {
  const int d = G.dim(), n = G.order();
  if (static_cast<int>(kappa.size()) != d || static_cast<int>(phi.size()) != n)
    throw ContractViolation("coboundary_vector: kappa or phi has the wrong length");
  UnknownLayout L(d, n);
  BitVector v(L.size());
  auto ph = [&](int r) { return r == G.identity() ? 0 : phi[r] & 1; };
  for (int r = 0; r < n; ++r) {
    auto dq = q_shift(G, r, kappa);
    for (int i = 0; i < d; ++i)
      if (dq[i]) v.flip(L.q(r, i));
    for (int s = 0; s < n; ++s)
      if (kappa_dot(kappa, G.omega(r, s)) ^ ph(G.product(r, s)) ^ ph(r) ^ ph(s)) v.flip(L.alpha(r, s));
  }
  return v;
}

std::vector<BitVector> coboundary_space(const WallpaperGroup& G) {
  const int d = G.dim(), n = G.order();
  std::vector<BitVector> out;
  std::vector<std::uint8_t> zero_phi(n, 0);
  for (int i = 0; i < d; ++i) {
    std::vector<std::uint8_t> kappa(d, 0);
    kappa[i] = 1;
    out.push_back(coboundary_vector(G, kappa, zero_phi));
  }
  for (int r = 0; r < n; ++r) {
    if (r == G.identity()) continue;
    std::vector<std::uint8_t> phi(n, 0);
    phi[r] = 1;
    out.push_back(coboundary_vector(G, std::vector<std::uint8_t>(d, 0), phi));
  }
  return out;
}

int g_part_dimension(const WallpaperGroup& G, const std::vector<BitVector>& solutions) {
  UnknownLayout L(G.dim(), G.order());
  const std::size_t lo = L.b_begin(), hi = L.alpha_begin();
  F2Subspace s(hi - lo);
  for (const auto& v : solutions) {
    BitVector p(hi - lo);
    for (std::size_t u = lo; u < hi; ++u)
      if (v.get(u)) p.set(u - lo);
    s.insert(p);
  }
  return s.dimension();
}

ClassificationResult classify(std::shared_ptr<const WallpaperGroup> grp, const ClassifyOptions& opt) {
  const WallpaperGroup& G = *grp;
  UnknownLayout L(G.dim(), G.order());
  auto sys = assemble_consistency_system(G);
  auto sol = solve(sys);
  if (!sol.feasible) throw InvariantViolation("consistency system infeasible for " + G.name());

  ClassificationResult res;
  res.group = G.name();
  F2Subspace Z(L.size());
  for (const auto& k : sol.kernel) Z.insert(k);
  F2Subspace B(L.size());
  for (const auto& c : coboundary_space(G)) {
    if (!Z.contains(c)) throw InvariantViolation("coboundary outside the solution space for " + G.name());
    B.insert(c);
  }
  res.solution_dimension = Z.dimension();
  res.coboundary_dimension = B.dimension();
  res.g_part_dimension = g_part_dimension(G, sol.kernel);
  res.flux_forced_trivial = std::all_of(sol.kernel.begin(), sol.kernel.end(), [&](const BitVector& k) {
    for (std::size_t u = L.a_begin(); u < L.b_begin(); ++u)
      if (k.get(u)) return false;
    return true;
  });

  // classes of Z/B: extend B to Z and keep the new basis vectors
  std::vector<BitVector> gens;
  F2Subspace ext = B;
  for (const auto& z : Z.basis())
    if (ext.insert(z)) gens.push_back(z);
  res.h2_dimension = static_cast<int>(gens.size());
  if (res.h2_dimension != res.solution_dimension - res.coboundary_dimension)
    throw InvariantViolation("quotient dimension mismatch for " + G.name());

  if (!opt.representatives) return res;
  // every class is listed only while that stays small; otherwise the generators
  std::vector<BitVector> leaders;
  if (res.h2_dimension <= 16) {
    for (std::uint32_t mask = 0; mask < (1u << res.h2_dimension); ++mask) {
      BitVector v(L.size());
      for (int k = 0; k < res.h2_dimension; ++k)
        if ((mask >> k) & 1) v ^= gens[k];
      leaders.push_back(B.reduce(v));
    }
  } else {
    leaders.push_back(BitVector(L.size()));
    for (const auto& gv : gens) leaders.push_back(B.reduce(gv));
  }
  std::sort(leaders.begin(), leaders.end(), [](const BitVector& a, const BitVector& b) { return a.lex_less(b); });
  for (const auto& v : leaders) res.representatives.push_back(from_bits(grp, v));

  if (opt.verify_radius > 0) {
    auto reports = check_cocycle(res.representatives, opt.verify_radius);
    for (std::size_t k = 0; k < reports.size(); ++k)
      if (!reports[k].ok())
        throw InvariantViolation("representative " + std::to_string(k) + " of " + G.name() +
                                 " fails the cocycle check");
  }
  return res;
}

std::optional<EquivalenceWitness> are_equivalent(const FactorSystem& fs1, const FactorSystem& fs2) {
  const WallpaperGroup& G = *fs1.group;
  if (fs2.group->name() != G.name()) throw ContractViolation("are_equivalent: different groups");
  if (!fs1.sigma.is_canonical() || !fs2.sigma.is_canonical())
    throw ContractViolation("are_equivalent: sigma must be in canonical lower-triangular form");
  const int d = G.dim(), n = G.order();

  // step 1: Wilson loops, i.e. the canonical A
  if (fs1.sigma.a != fs2.sigma.a) return std::nullopt;
  for (int r = 0; r < n; ++r)
    if (fs1.g.b[r] != fs2.g.b[r]) return std::nullopt;

  // step 2: psi(t) = (-1)^{kappa.t}, kappa ranges over the 2^d inversion-invariant momenta
  for (std::uint32_t km = 0; km < (1u << d); ++km) {
    std::vector<std::uint8_t> kappa(d);
    for (int i = 0; i < d; ++i) kappa[i] = (km >> i) & 1;
    bool match = true;
    for (int r = 0; r < n && match; ++r) {
      auto dq = q_shift(G, r, kappa);
      for (int i = 0; i < d; ++i)
        if ((fs1.g.q[r][i] ^ dq[i]) != fs2.g.q[r][i]) match = false;
    }
    if (!match) continue;

    // step 3: remaining alpha difference must be d(phi)
    F2AffineSystem sys;
    for (int r = 0; r < n; ++r) sys.unknowns.push_back("phi[" + G.label(r) + "]");
    for (int r1 = 0; r1 < n; ++r1)
      for (int r2 = 0; r2 < n; ++r2) {
        BitVector row(n);
        for (int r : {G.product(r1, r2), r1, r2}) row.flip(r);
        bool rhs = fs1.alpha.table[r1][r2] ^ kappa_dot(kappa, G.omega(r1, r2)) ^ fs2.alpha.table[r1][r2];
        sys.add(std::move(row), rhs);
      }
    sys.pin(G.identity(), false);
    auto sol = solve(sys);
    if (!sol.feasible) continue;
    EquivalenceWitness w;
    w.kappa = kappa;
    w.phi.resize(n);
    for (int r = 0; r < n; ++r) w.phi[r] = sol.particular.get(r);
    return w;
  }
  return std::nullopt;
}

FactorSystem apply_coboundary(const FactorSystem& fs, const EquivalenceWitness& w) {
  BitVector x = to_bits(fs) ^ coboundary_vector(*fs.group, w.kappa, w.phi);
  FactorSystem out = from_bits(fs.group, x);
  out.sigma = fs.sigma;  // psi is linear, sigma unchanged
  return out;
}

int wilson_loop(const TranslationFactor& sigma, const LatticeVector& t1, const LatticeVector& t2) {
  if (t1.dim != sigma.dim || t2.dim != sigma.dim) throw ContractViolation("wilson_loop: dimension mismatch");
  return (sigma.exponent(t1, t2) ^ sigma.exponent(t2, t1)) ? -1 : 1;
}

PointGroupRestriction restrict_to_point_group(const FactorSystem& fs) {
  const WallpaperGroup& G = *fs.group;
  PointGroupRestriction out{fs.alpha, true};
  const auto& a = fs.alpha.table;
  const int n = G.order();
  for (int r1 = 0; r1 < n && out.is_factor_system; ++r1)
    for (int r2 = 0; r2 < n && out.is_factor_system; ++r2)
      for (int r3 = 0; r3 < n; ++r3)
        if (a[r1][r2] ^ a[G.product(r1, r2)][r3] ^ a[r1][G.product(r2, r3)] ^ a[r2][r3]) {
          out.is_factor_system = false;
          break;
        }
  return out;
}

std::string sigma_bits(const FactorSystem& fs) {
  std::string s;
  for (int i = 1; i < fs.sigma.dim; ++i)
    for (int j = 0; j < i; ++j) s += fs.sigma.a[i][j] ? '1' : '0';
  return s;
}

std::string alpha_bits(const FactorSystem& fs) {
  std::string s;
  for (const auto& row : fs.alpha.table)
    for (auto v : row) s += v ? '1' : '0';
  return s;
}

std::string b_bits(const FactorSystem& fs, int r) {
  std::string s;
  for (int i = 0; i < fs.g.dim; ++i)
    for (int j = 0; j <= i; ++j) s += fs.g.b[r][i][j] ? '1' : '0';
  return s;
}

std::string q_bits(const FactorSystem& fs, int r) {
  std::string s;
  for (int i = 0; i < fs.g.dim; ++i) s += fs.g.q[r][i] ? '1' : '0';
  return s;
}

}  // namespace qwp
