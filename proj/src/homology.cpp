#include "qwp/homology.hpp"

#include <algorithm>
#include <map>

#include "qwp/group_io.hpp"

namespace qwp {

// ---- abelian groups

namespace {

std::vector<std::pair<std::int64_t, int>> factorize(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> f;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) n /= p, ++e;
    if (e) f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

std::string power_sum(const std::string& base, std::int64_t count) {
  return count == 1 ? base : base + "^" + std::to_string(count);
}

std::string torsion_str(const std::vector<std::int64_t>& t) {
  std::string s;
  for (std::size_t i = 0; i < t.size();) {
    std::size_t j = i;
    while (j < t.size() && t[j] == t[i]) ++j;
    if (!s.empty()) s += " + ";
    s += power_sum("Z" + std::to_string(t[i]), static_cast<std::int64_t>(j - i));
    i = j;
  }
  return s;
}

std::int64_t to_i64(const mpz_class& x) {
  if (!x.fits_slong_p()) throw InvariantViolation("torsion coefficient exceeds 64 bits: " + x.get_str());
  return x.get_si();
}

}  // namespace

AbelianGroup AbelianGroup::from_orders(std::int64_t free_rank, const std::vector<std::int64_t>& orders) {
  if (free_rank < 0) throw ContractViolation("negative free rank");
  // prime -> prime powers, largest first
  std::map<std::int64_t, std::vector<std::int64_t>> pp;
  for (auto m : orders) {
    if (m < 1) throw ContractViolation("cyclic order must be positive, got " + std::to_string(m));
    for (auto [p, e] : factorize(m)) {
      std::int64_t q = 1;
      for (int i = 0; i < e; ++i) q *= p;
      pp[p].push_back(q);
    }
  }
  std::size_t count = 0;
  for (auto& [p, v] : pp) {
    std::sort(v.rbegin(), v.rend());
    count = std::max(count, v.size());
  }
  AbelianGroup g;
  g.free_rank = free_rank;
  for (std::size_t j = 0; j < count; ++j) {
    std::int64_t d = 1;
    for (auto& [p, v] : pp)
      if (j < v.size()) d *= v[j];
    g.torsion.push_back(d);
  }
  std::reverse(g.torsion.begin(), g.torsion.end());
  return g;
}

std::string AbelianGroup::str() const {
  std::string s;
  if (free_rank) s = power_sum("Z", free_rank);
  std::string t = torsion_str(torsion);
  if (!t.empty()) s += (s.empty() ? "" : " + ") + t;
  return s.empty() ? "0" : s;
}

Coefficient parse_coefficient(const std::string& s) {
  std::string l;
  for (char c : s) l += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  if (l == "z2") return Coefficient::Z2;
  if (l == "u1" || l == "u(1)") return Coefficient::U1;
  throw DomainError("unknown coefficient '" + s + "' (expected z2 or u1)");
}

std::string to_string(Coefficient c) { return c == Coefficient::Z2 ? "z2" : "u1"; }

std::int64_t CoefficientGroup::z2_dimension() const {
  if (tag != Coefficient::Z2) throw ContractViolation("z2_dimension on a U(1) result");
  return static_cast<std::int64_t>(torsion.size());
}

std::string CoefficientGroup::str() const {
  std::string s;
  if (u1_rank) s = power_sum("U(1)", u1_rank);
  std::string t = torsion_str(torsion);
  if (!t.empty()) s += (s.empty() ? "" : " + ") + t;
  return s.empty() ? "0" : s;
}

CoefficientGroup cohomology_from_uct(const AbelianGroup& h_n, const AbelianGroup& h_n_minus_1, Coefficient coeff) {
  CoefficientGroup out;
  out.tag = coeff;
  if (coeff == Coefficient::U1) {
    out.u1_rank = h_n.free_rank;
    out.torsion = h_n.torsion;
    return out;
  }
  std::int64_t k = h_n.free_rank;
  for (auto m : h_n.torsion) k += (m % 2 == 0);
  for (auto m : h_n_minus_1.torsion) k += (m % 2 == 0);
  out.torsion.assign(static_cast<std::size_t>(k), 2);
  return out;
}

// ---- chain complexes

namespace {

using SparseCols = std::vector<std::vector<std::pair<std::size_t, long>>>;

SparseCols sparse_columns(const IntegerMatrix& m) {
  SparseCols cols(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (sgn(m(i, j)) != 0) {
        if (!m(i, j).fits_slong_p()) throw ContractViolation("boundary entry too large");
        cols[j].emplace_back(i, m(i, j).get_si());
      }
  return cols;
}

// a * b == 0, touching only nonzero entries
bool product_vanishes(const IntegerMatrix& a, const IntegerMatrix& b) {
  SparseCols ac = sparse_columns(a), bc = sparse_columns(b);
  std::vector<long> acc(a.rows());
  for (const auto& col : bc) {
    std::fill(acc.begin(), acc.end(), 0);
    for (auto [k, v] : col)
      for (auto [i, w] : ac[k]) acc[i] += v * w;
    for (long x : acc)
      if (x) return false;
  }
  return true;
}

SparseIntMatrix to_sparse(const IntegerMatrix& m) {
  SparseIntMatrix s;
  s.rows = m.rows();
  s.cols = m.cols();
  s.columns = sparse_columns(m);
  return s;
}

AbelianGroup homology_from_divisors(std::size_t rank_n, const std::vector<mpz_class>& d_n,
                                    const std::vector<mpz_class>& d_n1) {
  AbelianGroup h;
  h.free_rank = static_cast<std::int64_t>(rank_n) - static_cast<std::int64_t>(d_n.size()) -
                static_cast<std::int64_t>(d_n1.size());
  if (h.free_rank < 0) throw InvariantViolation("negative Betti number; boundary composition is nonzero");
  std::vector<std::int64_t> orders;
  for (const auto& x : d_n1)
    if (x != 1) orders.push_back(to_i64(x));
  AbelianGroup t = AbelianGroup::from_orders(h.free_rank, orders);
  return t;
}

}  // namespace

std::vector<std::string> ChainComplex::validate() const {
  std::vector<std::string> out;
  if (boundary.size() != ranks.size()) {
    out.push_back("expected " + std::to_string(ranks.size()) + " boundary matrices, got " +
                  std::to_string(boundary.size()));
    return out;
  }
  if (!basis_labels.empty()) {
    if (basis_labels.size() != ranks.size()) out.push_back("basis label degrees do not match ranks");
    else
      for (std::size_t n = 0; n < ranks.size(); ++n)
        if (basis_labels[n].size() != ranks[n]) out.push_back("degree " + std::to_string(n) + ": label count differs from rank");
  }
  bool shapes = true;
  for (std::size_t n = 0; n < ranks.size(); ++n) {
    std::size_t want_rows = n == 0 ? 0 : ranks[n - 1];
    if (boundary[n].rows() != want_rows || boundary[n].cols() != ranks[n]) {
      out.push_back("boundary " + std::to_string(n) + " is " + std::to_string(boundary[n].rows()) + "x" +
                    std::to_string(boundary[n].cols()) + ", expected " + std::to_string(want_rows) + "x" +
                    std::to_string(ranks[n]));
      shapes = false;
    }
  }
  if (!shapes) return out;
  for (std::size_t n = 2; n < ranks.size(); ++n)
    if (!product_vanishes(boundary[n - 1], boundary[n]))
      out.push_back("boundary " + std::to_string(n - 1) + " o boundary " + std::to_string(n) + " is nonzero");
  return out;
}

AbelianGroup homology(const ChainComplex& c, int n) {
  auto problems = c.validate();
  if (!problems.empty()) {
    std::string msg = "invalid chain complex:";
    for (auto& p : problems) msg += "\n  " + p;
    throw DomainError(msg);
  }
  if (n < 0 || n > c.top_degree()) return {};
  auto d_n = elementary_divisors(to_sparse(c.boundary[n]));
  std::vector<mpz_class> d_n1;
  if (n + 1 <= c.top_degree()) d_n1 = elementary_divisors(to_sparse(c.boundary[n + 1]));
  return homology_from_divisors(c.ranks[n], d_n, d_n1);
}

// ---- resolutions

namespace {

int element_order(const WallpaperGroup& g, int r) {
  int k = 1;
  for (int x = r; x != g.identity(); x = g.product(x, r)) ++k;
  return k;
}

// bar basis in degree n: tuples over non-identity elements, encoded base (|P|-1)
struct BarIndex {
  std::vector<int> nonid;      // position -> element
  std::vector<int> pos;        // element -> position, -1 for identity
  std::size_t base;
};

BarIndex bar_index(const WallpaperGroup& g) {
  BarIndex b;
  b.pos.assign(g.order(), -1);
  for (int r = 0; r < g.order(); ++r)
    if (r != g.identity()) {
      b.pos[r] = static_cast<int>(b.nonid.size());
      b.nonid.push_back(r);
    }
  b.base = b.nonid.size();
  return b;
}

std::vector<int> decode(std::size_t code, int n, const BarIndex& b) {
  std::vector<int> t(n);
  for (int i = n - 1; i >= 0; --i) {
    t[i] = b.nonid[code % b.base];
    code /= b.base;
  }
  return t;
}

std::size_t encode(const std::vector<int>& t, const BarIndex& b) {
  std::size_t c = 0;
  for (int x : t) c = c * b.base + static_cast<std::size_t>(b.pos[x]);
  return c;
}

void add_term(std::vector<GroupRingTerm>& col, std::size_t row, int el, std::int64_t c) {
  for (auto& t : col)
    if (t.row == row && t.element == el) {
      t.coeff += c;
      return;
    }
  col.push_back({row, el, c});
}

void drop_zero_terms(std::vector<GroupRingTerm>& col) {
  col.erase(std::remove_if(col.begin(), col.end(), [](const GroupRingTerm& t) { return t.coeff == 0; }), col.end());
}

bool all_units(const std::vector<mpz_class>& d) {
  return std::all_of(d.begin(), d.end(), [](const mpz_class& x) { return x == 1; });
}

bool sparse_product_vanishes(const SparseIntMatrix& a, const SparseIntMatrix& b) {
  std::vector<long> acc(a.rows);
  std::vector<std::size_t> touched;
  for (const auto& col : b.columns) {
    touched.clear();
    for (auto [k, v] : col)
      for (auto [i, w] : a.columns[k]) {
        acc[i] += v * w;
        touched.push_back(i);
      }
    for (auto i : touched)
      if (acc[i]) return false;
    for (auto i : touched) acc[i] = 0;
  }
  return true;
}

}  // namespace

Resolution build_resolution(const WallpaperGroup& g, int max_degree, const ResolutionOptions& opt) {
  if (max_degree < 0) throw ContractViolation("build_resolution: negative degree");
  Resolution res;
  res.group = g.name();
  res.order = g.order();
  res.max_degree = max_degree;
  res.ranks.assign(max_degree + 1, 0);
  res.boundary.assign(max_degree + 1, {});
  const int n = g.order();
  const int e = g.identity();

  if (n == 1) {
    res.kind = "trivial";
    res.ranks[0] = 1;
    res.boundary[0].resize(1);
    for (int i = 1; i <= max_degree; ++i) res.boundary[i] = {};
  } else {
    int gen = -1;
    for (int r = 0; r < n && gen < 0; ++r)
      if (element_order(g, r) == n) gen = r;
    if (gen >= 0) {
      res.kind = "cyclic";
      for (int i = 0; i <= max_degree; ++i) {
        res.ranks[i] = 1;
        res.boundary[i].assign(1, {});
        if (i == 0) continue;
        auto& col = res.boundary[i][0];
        if (i % 2 == 1) {
          col.push_back({0, e, 1});
          col.push_back({0, gen, -1});
        } else {
          for (int x = e, k = 0; k < n; ++k, x = g.product(x, gen)) col.push_back({0, x, 1});
        }
      }
    } else {
      res.kind = "bar";
      BarIndex b = bar_index(g);
      std::size_t rank = 1;
      for (int i = 0; i <= max_degree; ++i) {
        res.ranks[i] = rank;
        res.boundary[i].assign(rank, {});
        if (i > 0)
          for (std::size_t code = 0; code < rank; ++code) {
            auto t = decode(code, i, b);
            auto& col = res.boundary[i][code];
            // g1 [g2 | ... | gi]
            add_term(col, encode(std::vector<int>(t.begin() + 1, t.end()), b), t[0], 1);
            for (int k = 0; k + 1 < i; ++k) {
              int prod = g.product(t[k], t[k + 1]);
              if (prod == e) continue;
              std::vector<int> s(t.begin(), t.begin() + k);
              s.push_back(prod);
              s.insert(s.end(), t.begin() + k + 2, t.end());
              add_term(col, encode(s, b), e, (k + 1) % 2 ? -1 : 1);
            }
            add_term(col, encode(std::vector<int>(t.begin(), t.end() - 1), b), e, i % 2 ? -1 : 1);
            drop_zero_terms(col);
          }
        rank *= b.base;
      }
    }
  }

  // exactness: H_0 = Z through the augmentation, H_i = 0 above
  const std::size_t ord = static_cast<std::size_t>(n);
  std::vector<std::vector<mpz_class>> div(max_degree + 1);
  std::vector<bool> have(max_degree + 1, false);
  auto divisors = [&](int i) -> const std::vector<mpz_class>& {
    if (!have[i]) {
      div[i] = elementary_divisors(resolution_matrix(res, g, i));
      have[i] = true;
    }
    return div[i];
  };
  for (int i = 0; i < max_degree; ++i) {
    if (res.ranks[i + 1] * ord > opt.exactness_column_limit) break;
    const auto& up = divisors(i + 1);
    std::size_t lower = i == 0 ? 1 : divisors(i).size();
    if (!all_units(up) || up.size() + lower != res.ranks[i] * ord)
      throw InvariantViolation("resolution of " + g.name() + " is not exact in degree " + std::to_string(i));
    if (i == 0) {
      for (const auto& col : res.boundary[1]) {
        std::int64_t s = 0;
        for (auto& t : col) s += t.coeff;
        if (s != 0) throw InvariantViolation("resolution boundary does not map into the augmentation ideal");
      }
    } else if (!sparse_product_vanishes(resolution_matrix(res, g, i), resolution_matrix(res, g, i + 1))) {
      throw InvariantViolation("resolution boundary squares to nonzero in degree " + std::to_string(i + 1));
    }
    res.verified_through = i;
  }
  return res;
}

SparseIntMatrix resolution_matrix(const Resolution& res, const WallpaperGroup& g, int i) {
  if (i < 0 || i > res.max_degree) throw ContractViolation("resolution_matrix: degree out of range");
  const std::size_t n = static_cast<std::size_t>(g.order());
  SparseIntMatrix m;
  m.cols = res.ranks[i] * n;
  m.rows = i == 0 ? 0 : res.ranks[i - 1] * n;
  m.columns.resize(m.cols);
  if (i == 0) return m;
  for (std::size_t k = 0; k < res.ranks[i]; ++k)
    for (std::size_t h = 0; h < n; ++h) {
      auto& col = m.columns[k * n + h];
      for (const auto& t : res.boundary[i][k])
        col.emplace_back(t.row * n + static_cast<std::size_t>(g.product(static_cast<int>(h), t.element)),
                         static_cast<long>(t.coeff));
    }
  return m;
}

// ---- Borel total complex

ChainComplex borel_total_complex(const Resolution& res, const EquivariantComplex& ec, const WallpaperGroup& g,
                                 int max_degree) {
  if (res.group != g.name() || ec.group != g.name())
    throw DomainError("group mismatch: resolution for '" + res.group + "', complex for '" + ec.group +
                      "', group '" + g.name() + "'");
  if (res.max_degree < max_degree)
    throw DomainError("resolution has degree " + std::to_string(res.max_degree) + ", need " +
                      std::to_string(max_degree));
  if (max_degree < 0) throw ContractViolation("borel_total_complex: negative degree");
  const auto act = expand_action(ec, g);
  const int top_c = ec.top_degree();

  struct Block {
    int i, j;
    std::size_t offset;
  };
  // blocks[p]: (i, j) pairs with i + j = p, i descending
  std::vector<std::vector<Block>> blocks(max_degree + 1);
  ChainComplex tc;
  tc.ranks.assign(max_degree + 1, 0);
  tc.basis_labels.assign(max_degree + 1, {});
  for (int p = 0; p <= max_degree; ++p) {
    std::size_t off = 0;
    for (int i = p; i >= 0; --i) {
      int j = p - i;
      if (j > top_c) continue;
      blocks[p].push_back({i, j, off});
      for (std::size_t k = 0; k < res.ranks[i]; ++k)
        for (const auto& cell : ec.cells[j])
          tc.basis_labels[p].push_back("F" + std::to_string(i) + "[" + std::to_string(k) + "]*" + cell);
      off += res.ranks[i] * ec.cells[j].size();
    }
    tc.ranks[p] = off;
  }

  auto find_block = [&](int p, int i) -> const Block* {
    for (const auto& b : blocks[p])
      if (b.i == i) return &b;
    return nullptr;
  };

  tc.boundary.resize(max_degree + 1);
  tc.boundary[0] = IntegerMatrix(0, tc.ranks[0]);
  for (int p = 1; p <= max_degree; ++p) {
    IntegerMatrix m(tc.ranks[p - 1], tc.ranks[p]);
    for (const auto& b : blocks[p]) {
      const std::size_t nc = ec.cells[b.j].size();
      const long sgn_i = b.i % 2 ? -1 : 1;
      for (std::size_t k = 0; k < res.ranks[b.i]; ++k)
        for (std::size_t x = 0; x < nc; ++x) {
          const std::size_t col = b.offset + k * nc + x;
          // resolution part: (-1)^i c_lk(g) at (i-1, l, g^-1 x)
          if (b.i > 0) {
            const Block* lo = find_block(p - 1, b.i - 1);
            for (const auto& t : res.boundary[b.i][k]) {
              const auto& a = act[b.j][g.inverse(t.element)];
              std::size_t row = lo->offset + t.row * nc + static_cast<std::size_t>(a.image[x]);
              m(row, col) += sgn_i * t.coeff * a.sign[x];
            }
          }
          // cellular part: (-1)^i d(y, x) at (i, k, y)
          if (b.j > 0) {
            const Block* lo = find_block(p - 1, b.i);
            const auto& d = ec.boundary[b.j];
            const std::size_t ny = ec.cells[b.j - 1].size();
            for (std::size_t y = 0; y < ny; ++y)
              if (sgn(d(y, x)) != 0) m(lo->offset + k * ny + y, col) += sgn_i * d(y, x);
          }
        }
    }
    tc.boundary[p] = std::move(m);
  }
  for (int p = 2; p <= max_degree; ++p)
    if (!product_vanishes(tc.boundary[p - 1], tc.boundary[p]))
      throw InvariantViolation("total complex boundary squares to nonzero in degree " + std::to_string(p));
  return tc;
}

// ---- group homology

std::vector<AbelianGroup> group_homology_range(const WallpaperGroup& g, const EquivariantComplex& ec, int max_n) {
  if (max_n < 0) throw ContractViolation("group_homology: negative degree");
  auto problems = validate_equivariant_complex(ec, g);
  if (!problems.empty()) {
    std::string msg = "equivariant complex for " + g.name() + " is invalid:";
    for (auto& p : problems) msg += "\n  " + p;
    throw DomainError(msg);
  }
  Resolution res = build_resolution(g, max_n + 1);
  ChainComplex tc = borel_total_complex(res, ec, g, max_n + 1);
  std::vector<std::vector<mpz_class>> div(max_n + 2);
  for (int p = 0; p <= max_n + 1; ++p) div[p] = elementary_divisors(to_sparse(tc.boundary[p]));
  std::vector<AbelianGroup> out;
  for (int n = 0; n <= max_n; ++n) out.push_back(homology_from_divisors(tc.ranks[n], div[n], div[n + 1]));
  return out;
}

AbelianGroup group_homology(const WallpaperGroup& g, const EquivariantComplex& ec, int n) {
  return group_homology_range(g, ec, n).back();
}

AbelianGroup group_homology(const WallpaperGroup& g, int n) {
  auto ec = shipped_complex(g.name());
  if (!ec)
    throw DomainError("no equivariant complex available for group '" + g.name() +
                      "'; supply one as an equivariant complex file (JSON: {point_group, degrees: [{cells, "
                      "action, boundary}]}) with --complex");
  return group_homology(g, *ec, n);
}

CoefficientGroup group_cohomology(const WallpaperGroup& g, const EquivariantComplex& ec, int n, Coefficient coeff) {
  auto h = group_homology_range(g, ec, n);
  AbelianGroup below = n > 0 ? h[n - 1] : AbelianGroup{};
  return cohomology_from_uct(h[n], below, coeff);
}

}  // namespace qwp
