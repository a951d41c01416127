#include "qwp/groupcore.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace qwp {

namespace {

int find_matrix(const std::vector<PointGroupElement>& pg, const LatticeMatrix& m) {
  for (std::size_t i = 0; i < pg.size(); ++i)
    if (pg[i].matrix == m) return static_cast<int>(i);
  return -1;
}

// tau(R1) + R1 tau(R2) - tau(R1R2), still rational
RationalVector raw_omega(const PointGroupElement& a, const PointGroupElement& b,
                         const PointGroupElement& ab) {
  RationalVector w = apply_matrix(a.matrix, b.tau);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += a.tau[i] - ab.tau[i];
  return w;
}

std::string vec_str(const RationalVector& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += to_string(v[i]);
  }
  return s + ")";
}

}  // namespace

std::vector<std::string> validate(const WallpaperGroupData& data) {
  std::vector<std::string> out;
  const int d = data.dimension;
  const auto& pg = data.point_group;
  if (data.name.empty()) out.push_back("group name is empty");
  if (d < 1 || d > kMaxDim) {
    out.push_back("dimension " + std::to_string(d) + " outside 1.." + std::to_string(kMaxDim));
    return out;
  }
  if (pg.empty()) {
    out.push_back("point group has no elements");
    return out;
  }

  bool shapes_ok = true;
  std::set<std::string> labels;
  for (const auto& e : pg) {
    const std::string who = "element '" + e.label + "': ";
    if (!labels.insert(e.label).second) out.push_back(who + "duplicate label");
    if (e.matrix.dim != d || static_cast<int>(e.tau.size()) != d) {
      out.push_back(who + "matrix or tau has wrong dimension");
      shapes_ok = false;
      continue;
    }
    std::int64_t det = e.matrix.determinant();
    if (det != 1 && det != -1)
      out.push_back(who + "determinant " + std::to_string(det) + " is not +-1");
    for (const auto& x : e.tau) {
      if (x < Rational(0) || x >= Rational(1))
        out.push_back(who + "tau component " + to_string(x) + " outside [0,1)");
    }
  }
  if (!shapes_ok) return out;

  for (std::size_t i = 0; i < pg.size(); ++i)
    for (std::size_t j = i + 1; j < pg.size(); ++j)
      if (pg[i].matrix == pg[j].matrix)
        out.push_back("elements '" + pg[i].label + "' and '" + pg[j].label +
                      "' share the same matrix");

  int id = find_matrix(pg, LatticeMatrix::identity(d));
  if (id < 0) {
    out.push_back("identity matrix missing from point group");
  } else {
    for (const auto& x : pg[id].tau)
      if (x != Rational(0)) out.push_back("identity element has nonzero tau");
  }

  // closure and product table
  const int n = static_cast<int>(pg.size());
  std::vector<std::vector<int>> prod(n, std::vector<int>(n, -1));
  bool closed = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      prod[i][j] = find_matrix(pg, pg[i].matrix * pg[j].matrix);
      if (prod[i][j] < 0) {
        closed = false;
        out.push_back("not closed: " + pg[i].label + "*" + pg[j].label + " = " +
                      (pg[i].matrix * pg[j].matrix).str() + " is missing");
      }
    }
  if (!closed || id < 0) return out;
  for (int i = 0; i < n; ++i) {
    bool has_inv = false;
    for (int j = 0; j < n; ++j) has_inv |= prod[i][j] == id;
    if (!has_inv) out.push_back("element '" + pg[i].label + "' has no inverse");
  }

  // omega integrality and the cocycle identity
  std::vector<std::vector<LatticeVector>> om(n, std::vector<LatticeVector>(n));
  bool integral = true;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      RationalVector w = raw_omega(pg[i], pg[j], pg[prod[i][j]]);
      auto iw = as_integral(w);
      if (!iw) {
        integral = false;
        out.push_back("omega(" + pg[i].label + "," + pg[j].label + ") = " + vec_str(w) +
                      " is not a lattice vector");
      } else {
        om[i][j] = *iw;
      }
    }
  if (integral) {
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c) {
          LatticeVector lhs = pg[a].matrix * om[b][c] + om[a][prod[b][c]];
          LatticeVector rhs = om[a][b] + om[prod[a][b]][c];
          if (!(lhs == rhs))
            out.push_back("omega cocycle identity fails at (" + pg[a].label + "," + pg[b].label +
                          "," + pg[c].label + ")");
        }
  }

  // generators exist and generate
  std::vector<int> gens;
  for (const auto& gl : data.generators) {
    auto it = std::find_if(pg.begin(), pg.end(), [&](auto& e) { return e.label == gl; });
    if (it == pg.end())
      out.push_back("generator '" + gl + "' is not an element");
    else
      gens.push_back(static_cast<int>(it - pg.begin()));
  }
  std::set<int> reached{id};
  std::vector<int> frontier{id};
  while (!frontier.empty()) {
    int x = frontier.back();
    frontier.pop_back();
    for (int gidx : gens) {
      int y = prod[x][gidx];
      if (reached.insert(y).second) frontier.push_back(y);
    }
  }
  if (static_cast<int>(reached.size()) != n)
    out.push_back("generators reach " + std::to_string(reached.size()) + " of " +
                  std::to_string(n) + " elements");
  return out;
}

WallpaperGroup::WallpaperGroup(WallpaperGroupData data) : data_(std::move(data)) {
  auto problems = validate(data_);
  if (!problems.empty()) throw CorruptGroupData(problems);
  const auto& pg = data_.point_group;
  const int n = order();
  identity_ = find_matrix(pg, LatticeMatrix::identity(dim()));
  product_.assign(n, std::vector<int>(n));
  inverse_.assign(n, -1);
  omega_.assign(n, std::vector<LatticeVector>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      product_[i][j] = find_matrix(pg, pg[i].matrix * pg[j].matrix);
      if (product_[i][j] == identity_) inverse_[i] = j;
      omega_[i][j] = *as_integral(raw_omega(pg[i], pg[j], pg[product_[i][j]]));
    }
  for (int i = 0; i < n; ++i) inv_matrix_.push_back(*pg[i].matrix.unimodular_inverse());
}

int WallpaperGroup::index_of(const std::string& label) const {
  for (int i = 0; i < order(); ++i)
    if (data_.point_group[i].label == label) return i;
  throw DomainError("group " + name() + " has no point-group element '" + label + "'");
}

std::vector<int> WallpaperGroup::generator_indices() const {
  std::vector<int> r;
  for (const auto& l : data_.generators) r.push_back(index_of(l));
  return r;
}

bool WallpaperGroup::omega_vanishes() const {
  for (const auto& row : omega_)
    for (const auto& w : row)
      if (!w.is_zero()) return false;
  return true;
}

SpaceGroupElement multiply(const WallpaperGroup& g, const SpaceGroupElement& a,
                           const SpaceGroupElement& b) {
  if (a.t.dim != g.dim() || b.t.dim != g.dim())
    throw ContractViolation("multiply: translation dimension differs from group dimension");
  if (a.r < 0 || a.r >= g.order() || b.r < 0 || b.r >= g.order())
    throw ContractViolation("multiply: point-group index out of range");
  return {a.t + g.matrix(a.r) * b.t + g.omega(a.r, b.r), g.product(a.r, b.r)};
}

SpaceGroupElement inverse(const WallpaperGroup& g, const SpaceGroupElement& a) {
  if (a.t.dim != g.dim()) throw ContractViolation("inverse: dimension mismatch");
  int ri = g.inverse(a.r);
  const auto& mi = g.inverse_matrix(a.r);
  return {-(mi * a.t) - mi * g.omega(a.r, ri), ri};
}

LatticeVector omega(const WallpaperGroup& g, const std::string& r1, const std::string& r2) {
  return g.omega(g.index_of(r1), g.index_of(r2));
}

WallpaperGroupData shift_origin(const WallpaperGroupData& data, const RationalVector& s) {
  if (static_cast<int>(s.size()) != data.dimension)
    throw ContractViolation("shift_origin: shift has wrong dimension");
  WallpaperGroupData out = data;
  for (auto& e : out.point_group) {
    RationalVector rs = apply_matrix(e.matrix, s);
    for (int i = 0; i < data.dimension; ++i) {
      Rational x = e.tau[i] + rs[i] - s[i];
      // reduce into [0,1)
      std::int64_t fl = x.numerator() / x.denominator();
      if (x.numerator() < 0 && x.numerator() % x.denominator() != 0) --fl;
      e.tau[i] = x - Rational(fl);
    }
  }
  return out;
}

}  // namespace qwp
