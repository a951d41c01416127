#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "qwp/errors.hpp"
#include "qwp/factorsys.hpp"
#include "qwp/group_io.hpp"
#include "qwp/groupcore.hpp"

using namespace qwp;

namespace {

const std::set<std::string> kNonsymmorphic = {"pg", "pmg", "pgg", "p4g"};

SpaceGroupElement random_element(const WallpaperGroup& g, std::mt19937& rng) {
  std::uniform_int_distribution<int> t(-3, 3), r(0, g.order() - 1);
  SpaceGroupElement e;
  e.t = LatticeVector(g.dim());
  for (int i = 0; i < g.dim(); ++i) e.t[i] = t(rng);
  e.r = r(rng);
  return e;
}

// {t|R} acting on a rational point x -> R x + t + tau(R); used to check multiply()
RationalVector act(const WallpaperGroup& g, const SpaceGroupElement& e, const RationalVector& x) {
  RationalVector y = apply_matrix(g.matrix(e.r), x);
  for (int i = 0; i < g.dim(); ++i) y[i] += Rational(e.t[i]) + g.element(e.r).tau[i];
  return y;
}

}  // namespace

TEST_CASE("all 17 shipped groups load and validate") {
  const auto& names = shipped_group_names();
  CHECK(names.size() == 17);
  for (const auto& n : names) {
    auto g = shipped_group(n);
    CHECK(g->name() == n);
    CHECK(validate(g->data()).empty());
  }
}

TEST_CASE("omega vanishes exactly for the symmorphic groups") {
  for (const auto& n : shipped_group_names()) {
    CAPTURE(n);
    CHECK(shipped_group(n)->omega_vanishes() == !kNonsymmorphic.count(n));
  }
}

TEST_CASE("pg glide squares to a unit translation") {
  auto g = shipped_group("pg");
  const int m = g->index_of("M");
  SpaceGroupElement glide{LatticeVector(2), m};
  auto sq = multiply(*g, glide, glide);
  CHECK(sq.r == g->identity());
  CHECK(sq.t == LatticeVector{1, 0});
  CHECK(omega(*g, "M", "M") == LatticeVector{1, 0});
}

TEST_CASE("multiplication agrees with the affine action on points") {
  std::mt19937 rng(7);
  const RationalVector x = {Rational(1, 7), Rational(2, 11)};
  for (const auto& n : shipped_group_names()) {
    auto g = shipped_group(n);
    CAPTURE(n);
    for (int k = 0; k < 200; ++k) {
      auto a = random_element(*g, rng), b = random_element(*g, rng);
      CHECK(act(*g, multiply(*g, a, b), x) == act(*g, a, act(*g, b, x)));
      auto c = random_element(*g, rng);
      CHECK(multiply(*g, multiply(*g, a, b), c) == multiply(*g, a, multiply(*g, b, c)));
      auto e = multiply(*g, a, inverse(*g, a));
      CHECK(e.r == g->identity());
      CHECK(e.t.is_zero());
    }
  }
}

TEST_CASE("corrupted data is reported") {
  auto data = shipped_group("pg")->data();
  data.point_group[1].tau[0] = Rational(1, 3);
  auto problems = validate(data);
  REQUIRE(!problems.empty());
  bool mentions_integral = false;
  for (const auto& p : problems)
    mentions_integral |= p.find("omega(M,M)") != std::string::npos && p.find("not a lattice vector") != std::string::npos;
  CHECK(mentions_integral);
  CHECK_THROWS_AS(WallpaperGroup{data}, CorruptGroupData);

  auto bad_closure = shipped_group("p4")->data();
  bad_closure.point_group.pop_back();
  CHECK(!validate(bad_closure).empty());
}

TEST_CASE("unknown group names list the known ones") {
  try {
    shipped_group("p7");
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    std::string msg = e.what();
    CHECK(msg.find("p7") != std::string::npos);
    CHECK(msg.find("p4g") != std::string::npos);
  }
}

TEST_CASE("malformed group files give line and field diagnostics") {
  try {
    parse_group_json("{\n  \"name\": \"x\",\n  \"dimension\": 2,\n  oops\n}", "bad.json");
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    std::string msg = e.what();
    CHECK(msg.find("bad.json") != std::string::npos);
    CHECK(msg.find("line 4") != std::string::npos);
  }
  try {
    parse_group_json(R"({"name": "x", "dimension": 2, "elements": 5, "generators": []})", "f.json");
    FAIL("expected DomainError");
  } catch (const DomainError& e) {
    CHECK(std::string(e.what()).find("elements") != std::string::npos);
  }
}

TEST_CASE("group files round-trip") {
  for (const auto& n : shipped_group_names()) {
    const auto& d = shipped_group(n)->data();
    auto back = parse_group_json(group_to_json(d));
    CHECK(group_to_json(back) == group_to_json(d));
    CHECK(back.point_group.size() == d.point_group.size());
  }
}

TEST_CASE("origin shifts keep the data valid and the classification unchanged") {
  const std::vector<RationalVector> shifts = {{Rational(1, 2), Rational(0)},
                                              {Rational(1, 4), Rational(1, 3)},
                                              {Rational(1, 6), Rational(5, 6)}};
  for (const auto& n : shipped_group_names()) {
    auto g = shipped_group(n);
    const int dim = classify(g, {0, false}).h2_dimension;
    for (const auto& s : shifts) {
      CAPTURE(n);
      auto shifted = shift_origin(g->data(), s);
      CHECK(validate(shifted).empty());
      auto sg = std::make_shared<const WallpaperGroup>(shifted);
      CHECK(classify(sg, {0, false}).h2_dimension == dim);
    }
  }
}

TEST_CASE("QWP_DATA_DIR overrides the embedded database") {
  namespace fs = std::filesystem;
  fs::path dir = fs::temp_directory_path() / "qwp_data_override";
  fs::create_directories(dir / "groups");
  auto d = shipped_group("pg")->data();
  d.name = "pg";
  d.point_group[1].tau = {Rational(0), Rational(0)};  // turns pg into pm-with-horizontal-mirror
  std::ofstream(dir / "groups" / "pg.json") << group_to_json(d);
  setenv("QWP_DATA_DIR", dir.c_str(), 1);
  auto g = shipped_group("pg");
  unsetenv("QWP_DATA_DIR");
  CHECK(g->omega_vanishes());
  CHECK(!shipped_group("pg")->omega_vanishes());
  fs::remove_all(dir);
}
