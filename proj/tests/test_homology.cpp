#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>

#include "qwp/errors.hpp"
#include "qwp/factorsys.hpp"
#include "qwp/group_io.hpp"
#include "qwp/homology.hpp"

using namespace qwp;

namespace {

IntegerMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c, int lo = -9, int hi = 9) {
  std::uniform_int_distribution<int> e(lo, hi);
  IntegerMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = e(rng);
  return m;
}

// gcd of all k x k minors, by brute force over row and column subsets
mpz_class determinantal_divisor(const IntegerMatrix& a, std::size_t k) {
  std::vector<int> rs(a.rows()), cs(a.cols());
  std::fill(rs.end() - static_cast<long>(k), rs.end(), 1);
  mpz_class g = 0;
  do {
    std::fill(cs.begin(), cs.end(), 0);
    std::fill(cs.end() - static_cast<long>(k), cs.end(), 1);
    do {
      IntegerMatrix sub(k, k);
      std::size_t si = 0;
      for (std::size_t i = 0; i < a.rows(); ++i) {
        if (!rs[i]) continue;
        std::size_t sj = 0;
        for (std::size_t j = 0; j < a.cols(); ++j)
          if (cs[j]) sub(si, sj++) = a(i, j);
        ++si;
      }
      mpz_class d = sub.determinant();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), d.get_mpz_t());
    } while (std::next_permutation(cs.begin(), cs.end()));
  } while (std::next_permutation(rs.begin(), rs.end()));
  return g;
}

IntegerMatrix literal(std::initializer_list<std::initializer_list<long>> rows) { return IntegerMatrix(rows); }

std::vector<long> diag_pattern(const IntegerMatrix& m) {
  std::vector<long> d;
  for (auto& x : elementary_divisors(m)) d.push_back(x.get_si());
  while (d.size() < std::min(m.rows(), m.cols())) d.push_back(0);
  return d;
}

EquivariantComplex complex_for(const std::string& n) {
  if (auto ec = shipped_complex(n)) return *ec;
  return torus_cell_complex(*shipped_group(n));
}

const std::map<std::string, std::string> kU1 = {
    {"p1", "U(1)"}, {"p2", "U(1)"}, {"pm", "Z2^2"},  {"pg", "0"},    {"cm", "Z2"},    {"pmm", "Z2^4"},
    {"pmg", "Z2"},  {"pgg", "0"},   {"cmm", "Z2^2"}, {"p4", "U(1)"}, {"p4m", "Z2^3"}, {"p4g", "Z2"},
    {"p3", "U(1)"}, {"p3m1", "Z2"}, {"p31m", "Z2"},  {"p6", "U(1)"}, {"p6m", "Z2^2"}};

}  // namespace

TEST_CASE("Smith normal form invariants on random matrices") {
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> dim(1, 8);
  for (int trial = 0; trial < 1200; ++trial) {
    const std::size_t r = dim(rng), c = dim(rng);
    // low-rank products now and then, so zero divisors and larger torsion appear
    IntegerMatrix a = trial % 4 == 0 ? random_matrix(rng, r, 2) * random_matrix(rng, 2, c) : random_matrix(rng, r, c);
    auto s = smith_normal_form(a);
    CAPTURE(a.str());
    CHECK(s.u * a * s.v == s.d);
    CHECK(abs(s.u.determinant()) == 1);
    CHECK(abs(s.v.determinant()) == 1);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (i != j) CHECK(s.d(i, j) == 0);
    for (std::size_t i = 0; i < s.divisors.size(); ++i) {
      CHECK(s.divisors[i] > 0);
      CHECK(s.d(i, i) == s.divisors[i]);
      if (i + 1 < s.divisors.size()) CHECK(s.divisors[i + 1] % s.divisors[i] == 0);
    }
    for (std::size_t i = s.divisors.size(); i < std::min(r, c); ++i) CHECK(s.d(i, i) == 0);
    CHECK(elementary_divisors(a) == s.divisors);
    SparseIntMatrix sp{r, c, {}};
    sp.columns.resize(c);
    for (std::size_t j = 0; j < c; ++j)
      for (std::size_t i = 0; i < r; ++i)
        if (a(i, j) != 0) sp.columns[j].push_back({i, a(i, j).get_si()});
    CHECK(elementary_divisors(sp) == s.divisors);
  }
}

TEST_CASE("Smith divisors match determinantal divisors") {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> dim(1, 5);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = random_matrix(rng, dim(rng), dim(rng), -6, 6);
    auto d = smith_normal_form(a).divisors;
    mpz_class prev = 1;
    for (std::size_t k = 1; k <= std::min(a.rows(), a.cols()); ++k) {
      mpz_class dk = determinantal_divisor(a, k);
      if (k <= d.size()) {
        CHECK(dk == prev * d[k - 1]);
        prev = dk;
      } else {
        CHECK(dk == 0);
      }
    }
  }
}

TEST_CASE("abelian group normal form and printing") {
  CHECK(AbelianGroup::from_orders(0, {2, 3}).torsion == std::vector<std::int64_t>{6});
  CHECK(AbelianGroup::from_orders(1, {4, 2, 1}).str() == "Z + Z2 + Z4");
  CHECK(AbelianGroup::from_orders(2, {2, 2, 2}).str() == "Z^2 + Z2^3");
  CHECK(AbelianGroup{}.str() == "0");
  CHECK(AbelianGroup::from_orders(0, {12, 18}).torsion == std::vector<std::int64_t>{6, 36});
}

TEST_CASE("universal coefficients") {
  const AbelianGroup zero, z{1, {}}, zz2 = AbelianGroup::from_orders(1, {2});
  CHECK(cohomology_from_uct(zero, zz2, Coefficient::U1).str() == "0");
  CHECK(cohomology_from_uct(zero, zz2, Coefficient::Z2).str() == "Z2");
  CHECK(cohomology_from_uct(z, AbelianGroup{2, {}}, Coefficient::U1).str() == "U(1)");
  CHECK(cohomology_from_uct(z, AbelianGroup{2, {}}, Coefficient::Z2).z2_dimension() == 1);
  CHECK(cohomology_from_uct(AbelianGroup::from_orders(0, {2, 4}), AbelianGroup::from_orders(0, {3}), Coefficient::Z2)
            .z2_dimension() == 2);
  CHECK(parse_coefficient("U(1)") == Coefficient::U1);
  CHECK_THROWS_AS(parse_coefficient("z3"), DomainError);
}

TEST_CASE("homology of small cell complexes") {
  // RP^2: one cell per degree, d1 = 0, d2 = 2
  ChainComplex rp2{{1, 1, 1}, {IntegerMatrix(0, 1), literal({{0}}), literal({{2}})}, {}};
  CHECK(rp2.validate().empty());
  CHECK(homology(rp2, 0).str() == "Z");
  CHECK(homology(rp2, 1).str() == "Z2");
  CHECK(homology(rp2, 2).str() == "0");
  ChainComplex bad{{1, 1, 1}, {IntegerMatrix(0, 1), literal({{1}}), literal({{1}})}, {}};
  CHECK(!bad.validate().empty());
  CHECK_THROWS_AS(homology(bad, 1), DomainError);
}

TEST_CASE("pg total complex reproduces the literal boundary matrices") {
  auto g = shipped_group("pg");
  auto ec = *shipped_complex("pg");
  CHECK(validate_equivariant_complex(ec, *g).empty());
  auto res = build_resolution(*g, 6);
  CHECK(res.kind == "cyclic");
  auto tc = borel_total_complex(res, ec, *g, 6);
  CHECK(tc.ranks == std::vector<std::size_t>{2, 6, 8, 8, 8, 8, 8});
  CHECK(tc.validate().empty());

  const auto d1 = literal({{-1, 1, 0, 0, -1, 1}, {1, -1, 0, 0, 1, -1}});
  const auto d2 = literal({{1, 1, 0, 0, 1, -1, 0, 0},
                           {1, 1, 0, 0, -1, 1, 0, 0},
                           {0, 0, -1, 1, 0, 0, 1, 1},
                           {0, 0, 1, -1, 0, 0, 1, 1},
                           {0, 0, 0, 0, -1, 1, 0, 0},
                           {0, 0, 0, 0, 1, -1, 0, 0}});
  const auto d_odd = literal({{-1, 1, 0, 0, -1, 1, 0, 0},
                              {1, -1, 0, 0, 1, -1, 0, 0},
                              {0, 0, 1, 1, 0, 0, -1, -1},
                              {0, 0, 1, 1, 0, 0, -1, -1},
                              {0, 0, 0, 0, 1, 1, 0, 0},
                              {0, 0, 0, 0, 1, 1, 0, 0},
                              {0, 0, 0, 0, 0, 0, -1, 1},
                              {0, 0, 0, 0, 0, 0, 1, -1}});
  const auto d_even = literal({{1, 1, 0, 0, 1, -1, 0, 0},
                               {1, 1, 0, 0, -1, 1, 0, 0},
                               {0, 0, -1, 1, 0, 0, 1, 1},
                               {0, 0, 1, -1, 0, 0, 1, 1},
                               {0, 0, 0, 0, -1, 1, 0, 0},
                               {0, 0, 0, 0, 1, -1, 0, 0},
                               {0, 0, 0, 0, 0, 0, 1, 1},
                               {0, 0, 0, 0, 0, 0, 1, 1}});
  CHECK(tc.boundary[1] == d1);
  CHECK(tc.boundary[2] == d2);
  CHECK(tc.boundary[3] == d_odd);
  CHECK(tc.boundary[4] == d_even);
  CHECK(tc.boundary[5] == d_odd);
  CHECK(tc.boundary[6] == d_even);

  CHECK(diag_pattern(d1) == std::vector<long>{1, 0});
  CHECK(diag_pattern(d2) == std::vector<long>{1, 1, 1, 2, 0, 0});
  CHECK(diag_pattern(d_odd) == std::vector<long>{1, 1, 1, 1, 0, 0, 0, 0});
  CHECK(diag_pattern(d_even) == std::vector<long>{1, 1, 1, 1, 0, 0, 0, 0});

  CHECK(homology(tc, 0).str() == "Z");
  CHECK(homology(tc, 1).str() == "Z + Z2");
  for (int n = 2; n <= 5; ++n) CHECK(homology(tc, n).is_trivial());
  CHECK(tc.basis_labels[1][0] == "F1[0]*a");
  CHECK(tc.basis_labels[1][2] == "F0[0]*l1");
}

TEST_CASE("homology is invariant under relabelling cells") {
  auto g = shipped_group("pg");
  auto ec = *shipped_complex("pg");
  const auto expected = group_homology_range(*g, ec, 3);
  std::mt19937 rng(8);
  for (int k = 0; k < 10; ++k) {
    std::vector<std::vector<int>> perm;
    for (const auto& cells : ec.cells) {
      std::vector<int> p(cells.size());
      std::iota(p.begin(), p.end(), 0);
      std::shuffle(p.begin(), p.end(), rng);
      perm.push_back(p);
    }
    auto moved = permute_cells(ec, perm);
    CHECK(validate_equivariant_complex(moved, *g).empty());
    CHECK(group_homology_range(*g, moved, 3) == expected);
  }
}

TEST_CASE("an edited pg complex is rejected") {
  auto g = shipped_group("pg");
  auto ec = *shipped_complex("pg");
  // boundary of D becomes l1 - Rl1, which no longer commutes with the glide
  ec.boundary[2](0, 0) = 1;
  ec.boundary[2](1, 0) = -1;
  auto problems = validate_equivariant_complex(ec, *g);
  CHECK(!problems.empty());
  CHECK_THROWS_AS(group_homology(*g, ec, 1), DomainError);
}

TEST_CASE("resolutions are exact") {
  for (const std::string n : {"p2", "p3", "p4", "p6", "pm", "pmm", "p3m1", "p4m"}) {
    CAPTURE(n);
    auto g = shipped_group(n);
    auto res = build_resolution(*g, 4);
    const bool cyclic = n == "p2" || n == "p3" || n == "p4" || n == "p6" || n == "pm";
    CHECK(res.kind == (cyclic ? "cyclic" : "bar"));
    CHECK(res.verified_through >= (cyclic ? 3 : 2));
  }
  auto p1 = build_resolution(*shipped_group("p1"), 3);
  CHECK(p1.kind == "trivial");
}

TEST_CASE("C4 resolution composes to zero and is exact in low degrees") {
  auto g = shipped_group("p4");
  auto res = build_resolution(*g, 6);
  for (int i = 1; i < 6; ++i) {
    auto a = resolution_matrix(res, *g, i).dense(), b = resolution_matrix(res, *g, i + 1).dense();
    CHECK((a * b).is_zero());
    // rank(d_i) + rank(d_{i+1}) = 4 and all divisors 1: exactness over Z
    auto da = elementary_divisors(a), db = elementary_divisors(b);
    CHECK(da.size() + db.size() == 4);
    for (auto& x : db) CHECK(x == 1);
  }
}

TEST_CASE("every complex satisfies d o d = 0 and validates") {
  for (const auto& n : shipped_group_names()) {
    CAPTURE(n);
    auto g = shipped_group(n);
    auto ec = complex_for(n);
    CHECK(validate_equivariant_complex(ec, *g).empty());
    auto gen = torus_cell_complex(*g);
    CHECK(validate_equivariant_complex(gen, *g).empty());
    for (std::size_t k = 2; k < gen.boundary.size(); ++k) CHECK((gen.boundary[k - 1] * gen.boundary[k]).is_zero());
    auto tc = borel_total_complex(build_resolution(*g, 3), ec, *g, 3);
    CHECK(tc.validate().empty());
  }
}

TEST_CASE("homology and the factor-system solver agree on H^2(G,Z2)") {
  for (const auto& n : shipped_group_names()) {
    CAPTURE(n);
    auto g = shipped_group(n);
    auto h = group_homology_range(*g, complex_for(n), 2);
    CHECK(h[0].str() == "Z");
    auto z2 = cohomology_from_uct(h[2], h[1], Coefficient::Z2);
    CHECK(z2.z2_dimension() == classify(g, {0, false}).h2_dimension);
    CHECK(cohomology_from_uct(h[2], h[1], Coefficient::U1).str() == kU1.at(n));
  }
}

TEST_CASE("the torus complex does not depend on the grid size") {
  for (const std::string n : {"pg", "p4g", "p3"}) {
    auto g = shipped_group(n);
    auto a = group_homology_range(*g, torus_cell_complex(*g), 2);
    auto b = group_homology_range(*g, torus_cell_complex(*g, 6), 2);
    CHECK(a == b);
  }
}

TEST_CASE("complex files round-trip and report errors") {
  for (const auto& n : shipped_group_names()) {
    auto ec = complex_for(n);
    auto back = parse_complex_json(complex_to_json(ec));
    CHECK(complex_to_json(back) == complex_to_json(ec));
  }
  CHECK_THROWS_AS(parse_complex_json("{\"point_group\": \"pg\"}", "x.json"), DomainError);
  CHECK_THROWS_AS(parse_complex_json("[", "x.json"), DomainError);
  CHECK_THROWS_AS(group_homology(*shipped_group("p6"), 1), DomainError);
}

TEST_CASE("orbit space Euler characteristics") {
  for (const auto& n : shipped_group_names()) {
    auto g = shipped_group(n);
    CHECK(coinvariant_euler_characteristic(complex_for(n), *g) == *orbit_space_euler_characteristic(n));
  }
}
