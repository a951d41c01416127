#include <algorithm>
#include <array>
#include <map>
#include <numeric>

#include "qwp/group_io.hpp"
#include "qwp/homology.hpp"

namespace qwp {

SignedPermutation SignedPermutation::identity(std::size_t n) {
  SignedPermutation p;
  p.image.resize(n);
  std::iota(p.image.begin(), p.image.end(), 0);
  p.sign.assign(n, 1);
  return p;
}

SignedPermutation SignedPermutation::after(const SignedPermutation& inner) const {
  if (inner.size() != size()) throw ContractViolation("composing signed permutations of different sizes");
  SignedPermutation r;
  r.image.resize(size());
  r.sign.resize(size());
  for (std::size_t k = 0; k < size(); ++k) {
    int mid = inner.image[k];
    r.image[k] = image[mid];
    r.sign[k] = inner.sign[k] * sign[mid];
  }
  return r;
}

bool SignedPermutation::valid() const {
  if (sign.size() != image.size()) return false;
  std::vector<bool> hit(image.size(), false);
  for (std::size_t k = 0; k < image.size(); ++k) {
    int x = image[k];
    if (x < 0 || static_cast<std::size_t>(x) >= image.size() || hit[x]) return false;
    if (sign[k] != 1 && sign[k] != -1) return false;
    hit[x] = true;
  }
  return true;
}

std::vector<std::vector<SignedPermutation>> expand_action(const EquivariantComplex& ec, const WallpaperGroup& g) {
  const int n = g.order();
  const auto gens = g.generator_indices();
  std::vector<std::vector<SignedPermutation>> out(ec.cells.size());
  for (std::size_t d = 0; d < ec.cells.size(); ++d) {
    const std::size_t nc = ec.cells[d].size();
    std::vector<SignedPermutation> gen_act;
    for (int s : gens) {
      auto it = ec.action[d].find(g.label(s));
      if (it == ec.action[d].end())
        throw DomainError("degree " + std::to_string(d) + ": no action given for generator '" + g.label(s) + "'");
      if (it->second.size() != nc || !it->second.valid())
        throw DomainError("degree " + std::to_string(d) + ": action of '" + g.label(s) +
                          "' is not a signed permutation of the cells");
      gen_act.push_back(it->second);
    }
    for (const auto& [lbl, perm] : ec.action[d]) {
      bool is_gen = false;
      for (int s : gens) is_gen |= g.label(s) == lbl;
      if (!is_gen)
        throw DomainError("degree " + std::to_string(d) + ": action given for '" + lbl +
                          "', which is not a generator of " + g.name());
    }
    std::vector<SignedPermutation> act(n);
    std::vector<bool> known(n, false);
    act[g.identity()] = SignedPermutation::identity(nc);
    known[g.identity()] = true;
    std::vector<int> frontier{g.identity()};
    while (!frontier.empty()) {
      int h = frontier.back();
      frontier.pop_back();
      for (std::size_t a = 0; a < gens.size(); ++a) {
        int hs = g.product(h, gens[a]);
        SignedPermutation p = act[h].after(gen_act[a]);
        if (!known[hs]) {
          act[hs] = std::move(p);
          known[hs] = true;
          frontier.push_back(hs);
        }
      }
    }
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        if (!(act[a].after(act[b]) == act[g.product(a, b)]))
          throw DomainError("degree " + std::to_string(d) + ": generator actions do not define a representation (" +
                            g.label(a) + "*" + g.label(b) + ")");
    out[d] = std::move(act);
  }
  return out;
}

std::int64_t coinvariant_euler_characteristic(const EquivariantComplex& ec, const WallpaperGroup& g) {
  const auto act = expand_action(ec, g);
  std::int64_t chi = 0;
  for (std::size_t d = 0; d < ec.cells.size(); ++d) {
    const std::size_t nc = ec.cells[d].size();
    std::vector<bool> seen(nc, false);
    std::int64_t count = 0;
    for (std::size_t x = 0; x < nc; ++x) {
      if (seen[x]) continue;
      bool reversed = false;
      for (const auto& p : act[d]) {
        seen[p.image[x]] = true;
        if (p.image[x] == static_cast<int>(x) && p.sign[x] < 0) reversed = true;
      }
      if (!reversed) ++count;
    }
    chi += d % 2 ? -count : count;
  }
  return chi;
}

std::vector<std::string> validate_equivariant_complex(const EquivariantComplex& ec, const WallpaperGroup& g) {
  std::vector<std::string> out;
  if (ec.group != g.name()) out.push_back("complex is for group '" + ec.group + "', not '" + g.name() + "'");
  if (ec.cells.empty()) {
    out.push_back("complex has no degrees");
    return out;
  }
  if (ec.action.size() != ec.cells.size() || ec.boundary.size() != ec.cells.size()) {
    out.push_back("cells, action and boundary disagree on the number of degrees");
    return out;
  }
  bool shapes = true;
  for (std::size_t d = 0; d < ec.cells.size(); ++d) {
    std::size_t rows = d == 0 ? 0 : ec.cells[d - 1].size();
    if (ec.boundary[d].rows() != rows || ec.boundary[d].cols() != ec.cells[d].size()) {
      out.push_back("degree " + std::to_string(d) + ": boundary is " + std::to_string(ec.boundary[d].rows()) + "x" +
                    std::to_string(ec.boundary[d].cols()) + ", expected " + std::to_string(rows) + "x" +
                    std::to_string(ec.cells[d].size()));
      shapes = false;
    }
  }
  if (!shapes) return out;

  for (std::size_t d = 2; d < ec.cells.size(); ++d)
    if (!(ec.boundary[d - 1] * ec.boundary[d]).is_zero())
      out.push_back("boundary " + std::to_string(d - 1) + " o boundary " + std::to_string(d) + " is nonzero");

  std::vector<std::vector<SignedPermutation>> act;
  try {
    act = expand_action(ec, g);
  } catch (const DomainError& e) {
    out.push_back(e.what());
    return out;
  }

  // d R = R d for the generators
  for (int s : g.generator_indices())
    for (std::size_t d = 1; d < ec.cells.size(); ++d) {
      const auto& hi = act[d][s];
      const auto& lo = act[d - 1][s];
      const auto& bd = ec.boundary[d];
      for (std::size_t x = 0; x < ec.cells[d].size(); ++x) {
        std::vector<mpz_class> lhs(bd.rows()), rhs(bd.rows());
        for (std::size_t y = 0; y < bd.rows(); ++y) {
          lhs[y] = hi.sign[x] * bd(y, hi.image[x]);
          if (sgn(bd(y, x)) != 0) rhs[lo.image[y]] += lo.sign[y] * bd(y, x);
        }
        if (lhs != rhs) {
          out.push_back("degree " + std::to_string(d) + ": boundary does not commute with '" + g.label(s) +
                        "' on cell '" + ec.cells[d][x] + "'");
          break;
        }
      }
    }

  if (ec.orbit_euler_characteristic) {
    std::int64_t chi = coinvariant_euler_characteristic(ec, g);
    if (chi != *ec.orbit_euler_characteristic)
      out.push_back("coinvariant Euler characteristic " + std::to_string(chi) + " differs from the expected " +
                    std::to_string(*ec.orbit_euler_characteristic));
  }
  return out;
}

std::vector<std::string> validate_equivariant_complex(const EquivariantComplex& ec) {
  return validate_equivariant_complex(ec, *shipped_group(ec.group));
}

EquivariantComplex permute_cells(const EquivariantComplex& ec, const std::vector<std::vector<int>>& perm) {
  if (perm.size() != ec.cells.size()) throw ContractViolation("permute_cells: one permutation per degree required");
  std::vector<std::vector<int>> inv(perm.size());
  for (std::size_t d = 0; d < perm.size(); ++d) {
    const std::size_t nc = ec.cells[d].size();
    SignedPermutation check{perm[d], std::vector<int>(perm[d].size(), 1)};
    if (perm[d].size() != nc || !check.valid()) throw ContractViolation("permute_cells: not a permutation");
    inv[d].resize(nc);
    for (std::size_t j = 0; j < nc; ++j) inv[d][perm[d][j]] = static_cast<int>(j);
  }
  EquivariantComplex out = ec;
  for (std::size_t d = 0; d < perm.size(); ++d) {
    const std::size_t nc = ec.cells[d].size();
    for (std::size_t j = 0; j < nc; ++j) out.cells[d][j] = ec.cells[d][perm[d][j]];
    for (auto& [lbl, p] : out.action[d]) {
      const auto& old = ec.action[d].at(lbl);
      for (std::size_t j = 0; j < nc; ++j) {
        p.image[j] = inv[d][old.image[perm[d][j]]];
        p.sign[j] = old.sign[perm[d][j]];
      }
    }
    if (d > 0)
      for (std::size_t a = 0; a < out.boundary[d].rows(); ++a)
        for (std::size_t b = 0; b < nc; ++b) out.boundary[d](a, b) = ec.boundary[d](perm[d - 1][a], perm[d][b]);
  }
  return out;
}

std::optional<std::int64_t> orbit_space_euler_characteristic(const std::string& group) {
  // torus 0, sphere 2, annulus / Klein bottle / Moebius band 0, disk and projective plane 1
  static const std::map<std::string, std::int64_t> chi = {
      {"p1", 0},  {"p2", 2},  {"pm", 0},  {"pg", 0},  {"cm", 0},   {"pmm", 1},  {"pmg", 1}, {"pgg", 1}, {"cmm", 1},
      {"p4", 2},  {"p4m", 1}, {"p4g", 1}, {"p3", 2},  {"p3m1", 1}, {"p31m", 1}, {"p6", 2},  {"p6m", 1}};
  auto it = chi.find(group);
  if (it == chi.end()) return std::nullopt;
  return it->second;
}

// ---- torus cell structures

namespace {

using P2 = std::array<std::int64_t, 2>;

std::int64_t mod(std::int64_t a, std::int64_t n) { return ((a % n) + n) % n; }

struct Grid {
  int n;
  bool cubical;
  std::vector<P2> dirs;
  std::vector<std::vector<P2>> shapes;  // face corner offsets, anchored at the origin
  std::vector<std::string> face_names;

  std::size_t pt(P2 p) const { return static_cast<std::size_t>(mod(p[1], n) * n + mod(p[0], n)); }
  std::size_t np() const { return static_cast<std::size_t>(n) * n; }
  std::string at(std::size_t idx) const {
    return "(" + std::to_string(idx % n) + "," + std::to_string(idx / n) + ")";
  }
};

P2 add(P2 a, P2 b) { return {a[0] + b[0], a[1] + b[1]}; }
P2 mul(const LatticeMatrix& m, P2 p) {
  return {m.m[0][0] * p[0] + m.m[0][1] * p[1], m.m[1][0] * p[0] + m.m[1][1] * p[1]};
}

}  // namespace

EquivariantComplex torus_cell_complex(const WallpaperGroup& g, int n) {
  if (g.dim() != 2) throw DomainError("torus cell structures are generated for two-dimensional groups only");
  if (n == 0) {
    n = 1;
    for (int r = 0; r < g.order(); ++r)
      for (const auto& x : g.element(r).tau) n = std::lcm(n, static_cast<int>(x.denominator()));
  }
  if (n < 1) throw ContractViolation("torus_cell_complex: grid size must be positive");
  for (int r = 0; r < g.order(); ++r)
    for (const auto& x : g.element(r).tau)
      if ((x * Rational(n)).denominator() != 1)
        throw DomainError("grid size " + std::to_string(n) + " does not resolve the fractional translations of " +
                          g.name());

  Grid gr;
  gr.n = n;
  gr.cubical = true;
  for (int r = 0; r < g.order(); ++r) gr.cubical &= g.matrix(r).is_signed_permutation();
  std::vector<std::string> dir_names;
  if (gr.cubical) {
    gr.dirs = {P2{1, 0}, P2{0, 1}};
    dir_names = {"e1", "e2"};
    gr.shapes = {{P2{0, 0}, P2{1, 0}, P2{0, 1}, P2{1, 1}}};
    gr.face_names = {"sq"};
  } else {
    gr.dirs = {P2{1, 0}, P2{0, 1}, P2{1, 1}};
    dir_names = {"e1", "e2", "e12"};
    gr.shapes = {{P2{0, 0}, P2{1, 0}, P2{1, 1}}, {P2{0, 0}, P2{0, 1}, P2{1, 1}}};
    gr.face_names = {"up", "dn"};
  }
  for (auto& s : gr.shapes) std::sort(s.begin(), s.end());
  const std::size_t np = gr.np();
  const std::size_t ndir = gr.dirs.size(), nshape = gr.shapes.size();

  EquivariantComplex ec;
  ec.group = g.name();
  ec.cells.resize(3);
  for (std::size_t i = 0; i < np; ++i) ec.cells[0].push_back("v" + gr.at(i));
  for (std::size_t d = 0; d < ndir; ++d)
    for (std::size_t i = 0; i < np; ++i) ec.cells[1].push_back(dir_names[d] + gr.at(i));
  for (std::size_t s = 0; s < nshape; ++s)
    for (std::size_t i = 0; i < np; ++i) ec.cells[2].push_back(gr.face_names[s] + gr.at(i));

  auto point_of = [&](std::size_t idx) { return P2{static_cast<std::int64_t>(idx % n), static_cast<std::int64_t>(idx / n)}; };
  auto edge = [&](P2 p, std::size_t d) { return d * np + gr.pt(p); };

  ec.boundary.resize(3);
  ec.boundary[0] = IntegerMatrix(0, np);
  ec.boundary[1] = IntegerMatrix(np, ndir * np);
  for (std::size_t d = 0; d < ndir; ++d)
    for (std::size_t i = 0; i < np; ++i) {
      P2 p = point_of(i);
      ec.boundary[1](gr.pt(add(p, gr.dirs[d])), d * np + i) += 1;
      ec.boundary[1](gr.pt(p), d * np + i) -= 1;
    }
  ec.boundary[2] = IntegerMatrix(ndir * np, nshape * np);
  const P2 e1{1, 0}, e2{0, 1};
  for (std::size_t i = 0; i < np; ++i) {
    P2 p = point_of(i);
    auto& b = ec.boundary[2];
    if (gr.cubical) {
      b(edge(p, 0), i) += 1;
      b(edge(add(p, e1), 1), i) += 1;
      b(edge(add(p, e2), 0), i) -= 1;
      b(edge(p, 1), i) -= 1;
    } else {
      b(edge(p, 0), i) += 1;  // up: p -> p+e1 -> p+e1+e2 -> p
      b(edge(add(p, e1), 1), i) += 1;
      b(edge(p, 2), i) -= 1;
      b(edge(p, 2), np + i) += 1;  // dn: p -> p+e1+e2 -> p+e2 -> p
      b(edge(add(p, e2), 0), np + i) -= 1;
      b(edge(p, 1), np + i) -= 1;
    }
  }

  ec.action.resize(3);
  for (int s : g.generator_indices()) {
    const LatticeMatrix& R = g.matrix(s);
    P2 shift{(g.element(s).tau[0] * Rational(n)).numerator(), (g.element(s).tau[1] * Rational(n)).numerator()};
    auto image = [&](P2 p) { return add(mul(R, p), shift); };
    const int det = static_cast<int>(R.determinant());

    SignedPermutation v, e, f;
    for (std::size_t i = 0; i < np; ++i) {
      v.image.push_back(static_cast<int>(gr.pt(image(point_of(i)))));
      v.sign.push_back(1);
    }
    for (std::size_t d = 0; d < ndir; ++d)
      for (std::size_t i = 0; i < np; ++i) {
        P2 q = image(point_of(i));
        P2 rd = mul(R, gr.dirs[d]);
        auto fwd = std::find(gr.dirs.begin(), gr.dirs.end(), rd);
        auto bwd = std::find(gr.dirs.begin(), gr.dirs.end(), P2{-rd[0], -rd[1]});
        if (fwd != gr.dirs.end()) {
          e.image.push_back(static_cast<int>(edge(q, fwd - gr.dirs.begin())));
          e.sign.push_back(1);
        } else if (bwd != gr.dirs.end()) {
          e.image.push_back(static_cast<int>(edge(add(q, rd), bwd - gr.dirs.begin())));
          e.sign.push_back(-1);
        } else {
          throw InvariantViolation("operation " + g.label(s) + " does not preserve the edge directions");
        }
      }
    for (std::size_t sh = 0; sh < nshape; ++sh)
      for (std::size_t i = 0; i < np; ++i) {
        std::vector<P2> corners;
        for (const auto& o : gr.shapes[sh]) corners.push_back(image(add(point_of(i), o)));
        P2 base{corners[0][0], corners[0][1]};
        for (const auto& c : corners) base = {std::min(base[0], c[0]), std::min(base[1], c[1])};
        std::vector<P2> offs;
        for (const auto& c : corners) offs.push_back({c[0] - base[0], c[1] - base[1]});
        std::sort(offs.begin(), offs.end());
        auto it = std::find(gr.shapes.begin(), gr.shapes.end(), offs);
        if (it == gr.shapes.end())
          throw InvariantViolation("operation " + g.label(s) + " does not map faces onto faces");
        f.image.push_back(static_cast<int>(static_cast<std::size_t>(it - gr.shapes.begin()) * np + gr.pt(base)));
        f.sign.push_back(det);
      }
    ec.action[0][g.label(s)] = v;
    ec.action[1][g.label(s)] = e;
    ec.action[2][g.label(s)] = f;
  }
  ec.orbit_euler_characteristic = orbit_space_euler_characteristic(g.name());
  return ec;
}

}  // namespace qwp
