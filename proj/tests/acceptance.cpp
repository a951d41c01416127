// One PASS/FAIL line per acceptance criterion.  Exit status: 0 when everything passes.
// With --report, failures listed in kKnownFailures are still printed as FAIL but do not
// change the exit status; any other failure does.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "qwp/cli.hpp"
#include "qwp/clifford.hpp"
#include "qwp/factorsys.hpp"
#include "qwp/group_io.hpp"
#include "qwp/homology.hpp"

using namespace qwp;
using nlohmann::json;

namespace {

// Criteria whose expected values disagree with independent computation; see README.
const std::set<int> kKnownFailures = {1, 8};

struct Outcome {
  bool pass = true;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

json cli_json(std::vector<std::string> args) {
  args.insert(args.begin(), "--json");
  std::ostringstream out, err;
  if (qwp::cli::run(args, out, err) != 0) throw std::runtime_error("qwp " + args[1] + " failed: " + err.str());
  return json::parse(out.str());
}

EquivariantComplex complex_for(const std::string& n) {
  if (auto ec = shipped_complex(n)) return *ec;
  return torus_cell_complex(*shipped_group(n));
}

std::string diag_str(const IntegerMatrix& m) {
  auto d = elementary_divisors(m);
  std::string s;
  for (std::size_t i = 0; i < std::min(m.rows(), m.cols()); ++i)
    s += (i ? "," : "") + (i < d.size() ? d[i].get_str() : std::string("0"));
  return "diag(" + s + ")";
}

// 1. Z2 row of the classification table, exact, under 10 s
Outcome criterion1() {
  const std::vector<std::pair<std::string, int>> expected = {
      {"p1", 1},  {"p2", 4},   {"pm", 4},  {"pg", 1},   {"cm", 2},   {"pmm", 8},  {"pmg", 4}, {"pgg", 2}, {"cmm", 5},
      {"p4", 3},  {"p4m", 6},  {"p4g", 3}, {"p3", 1},   {"p3m1", 2}, {"p31m", 2}, {"p6", 2},  {"p6m", 2}};
  Outcome o;
  auto t0 = std::chrono::steady_clock::now();
  int matches = 0;
  std::string mismatches;
  for (const auto& [n, want] : expected) {
    int got = cli_json({"classify", "--group", n, "--coeff", "z2"})["dimension"];
    if (got == want)
      ++matches;
    else
      mismatches += " " + n + "(expected " + std::to_string(want) + ", computed " + std::to_string(got) + ")";
  }
  const double s = seconds_since(t0);
  o.pass = matches == 17 && s < 10.0;
  o.detail = std::to_string(matches) + "/17 match" + (mismatches.empty() ? "" : ";" + mismatches) +
             "; " + std::to_string(s) + " s (limit 10 s)";
  return o;
}

// 2. pg total complex, Smith forms and homology, exact, under 1 s
Outcome criterion2() {
  auto t0 = std::chrono::steady_clock::now();
  auto g = shipped_group("pg");
  auto tc = borel_total_complex(build_resolution(*g, 6), *shipped_complex("pg"), *g, 6);
  Outcome o;
  std::vector<std::string> bad;
  if (tc.ranks != std::vector<std::size_t>{2, 6, 8, 8, 8, 8, 8}) bad.push_back("ranks");
  if (diag_str(tc.boundary[1]) != "diag(1,0)") bad.push_back("Sm(d1) = " + diag_str(tc.boundary[1]));
  if (diag_str(tc.boundary[2]) != "diag(1,1,1,2,0,0)") bad.push_back("Sm(d2) = " + diag_str(tc.boundary[2]));
  for (int p = 3; p <= 6; ++p)
    if (diag_str(tc.boundary[p]) != "diag(1,1,1,1,0,0,0,0)")
      bad.push_back("Sm(d" + std::to_string(p) + ") = " + diag_str(tc.boundary[p]));
  if (homology(tc, 0).str() != "Z") bad.push_back("H0");
  if (homology(tc, 1).str() != "Z + Z2") bad.push_back("H1 = " + homology(tc, 1).str());
  for (int n = 2; n <= 5; ++n)
    if (!homology(tc, n).is_trivial()) bad.push_back("H" + std::to_string(n));
  const double s = seconds_since(t0);
  if (s >= 1.0) bad.push_back("too slow");
  o.pass = bad.empty();
  o.detail = "ranks 2,6,8,8,8,8,8; Sm(d1)=diag(1,0), Sm(d2)=diag(1,1,1,2,0,0), Sm(d3..d6)=diag(1,1,1,1,0,0,0,0); "
             "H = Z | Z+Z2 | 0 ...; " +
             std::to_string(s) + " s (limit 1 s)";
  for (const auto& b : bad) o.detail += "; mismatch: " + b;
  return o;
}

// 3. universal coefficient outputs
Outcome criterion3() {
  const std::vector<std::tuple<std::string, Coefficient, std::string>> want = {
      {"pg", Coefficient::U1, "0"},  {"pg", Coefficient::Z2, "Z2"}, {"p1", Coefficient::U1, "U(1)"},
      {"p1", Coefficient::Z2, "Z2"}, {"p2", Coefficient::U1, "U(1)"}, {"pm", Coefficient::U1, "Z2^2"},
      {"cm", Coefficient::U1, "Z2"}};
  Outcome o;
  int ok = 0;
  for (const auto& [n, c, v] : want) {
    auto g = shipped_group(n);
    auto got = group_cohomology(*g, *shipped_complex(n), 2, c).str();
    if (got == v)
      ++ok;
    else
      o.detail += n + " " + to_string(c) + ": " + got + " (expected " + v + "); ";
  }
  o.pass = ok == static_cast<int>(want.size());
  o.detail += std::to_string(ok) + "/" + std::to_string(want.size()) +
              " exact (pg U(1)=0, Z2=Z2; p1 U(1), Z2; p2 U(1); pm Z2^2; cm Z2)";
  return o;
}

// 4. homology+UCT against the factor-system solver
Outcome criterion4() {
  Outcome o;
  int ok = 0;
  for (const auto& n : shipped_group_names()) {
    auto g = shipped_group(n);
    auto h = group_homology_range(*g, complex_for(n), 2);
    const auto a = cohomology_from_uct(h[2], h[1], Coefficient::Z2).z2_dimension();
    const auto b = classify(g, {0, false}).h2_dimension;
    if (a == b)
      ++ok;
    else
      o.detail += n + ": homology " + std::to_string(a) + " vs solver " + std::to_string(b) + "; ";
  }
  o.pass = ok == 17;
  o.detail += std::to_string(ok) + "/17 groups agree (shipped complexes for 12, generated for the hexagonal 5)";
  return o;
}

// 5. flux bit pinned to 1 is infeasible for the nonsymmorphic groups
Outcome criterion5() {
  Outcome o;
  int ok = 0;
  for (const std::string n : {"pg", "pmg", "pgg", "p4g"}) {
    auto g = shipped_group(n);
    auto sys = assemble_consistency_system(*g);
    sys.pin(UnknownLayout(g->dim(), g->order()).a(1, 0), true, "flux");
    if (!solve(sys).feasible)
      ++ok;
    else
      o.detail += n + " feasible; ";
  }
  o.pass = ok == 4;
  o.detail += std::to_string(ok) + "/4 infeasible (pg, pmg, pgg, p4g)";
  return o;
}

// 6. pg nontrivial representative
Outcome criterion6() {
  Outcome o;
  auto g = shipped_group("pg");
  auto r = classify(g, {2, true});
  if (r.representatives.size() != 2) return {false, "expected 2 classes"};
  const auto& fs = r.representatives[1];
  const int m = g->index_of("M");
  long checked = 0, wrong = 0;
  for (int a1 = -4; a1 <= 4; ++a1)
    for (int b1 = -4; b1 <= 4; ++b1)
      for (int a2 = -4; a2 <= 4; ++a2)
        for (int b2 = -4; b2 <= 4; ++b2)
          for (int r2 = 0; r2 < 2; ++r2) {
            ++checked;
            int nu = evaluate(fs, {LatticeVector{a1, b1}, m}, {LatticeVector{a2, b2}, r2});
            wrong += nu != ((b2 & 1) ? -1 : 1);
          }
  auto cc = check_cocycle(fs, 2);
  bool inequivalent = !are_equivalent(fs, FactorSystem(g));
  o.pass = wrong == 0 && cc.ok() && inequivalent;
  o.detail = "nu({t1|M},{t2|R2}) = (-1)^t2_b on " + std::to_string(checked) + " pairs (" + std::to_string(wrong) +
             " wrong); cocycle radius 2: " + std::to_string(cc.triples_checked) + " triples " +
             (cc.ok() ? "ok" : "VIOLATED") + "; inequivalent to trivial: " + (inequivalent ? "yes" : "no");
  return o;
}

// 7. Clifford table
Outcome criterion7() {
  struct Col {
    int stsp, qx, qy, n, m, d;
  };
  const Col cols[] = {{+1, 0, 0, 2, 2, 2}, {+1, 1, 0, 1, 3, 2}, {+1, 0, 1, 1, 3, 2}, {+1, 1, 1, 0, 4, 4},
                      {-1, 0, 0, 4, 0, 4}, {-1, 1, 0, 3, 1, 4}, {-1, 0, 1, 3, 1, 4}, {-1, 1, 1, 2, 2, 2}};
  Outcome o;
  int ok = 0;
  for (const auto& c : cols) {
    bool col_ok = true;
    for (int st : {1, -1}) {
      SymmetryCase sc{st, st * c.stsp, c.qx, c.qy};
      auto sig = signature(sc);
      col_ok &= sig.n == c.n && sig.m == c.m && irrep_dim(sig) == c.d;
    }
    ok += col_ok;
  }
  o.pass = ok == 8;
  o.detail = std::to_string(ok) + "/8 columns (signature and D, both signs of s_t)";
  return o;
}

// 8. winding numbers of the shipped representations and controls
Outcome criterion8() {
  Outcome o;
  std::string reps;
  bool all_one = true;
  for (const auto& c : all_symmetry_cases()) {
    if (!has_shipped_construction(c)) continue;
    auto rep = build_standard_rep(c);
    std::set<std::int64_t> values;
    for (int grid : {16, 64, 256})
      for (auto d : {Direction::X, Direction::Y}) values.insert(winding_number(rep, d, grid).winding);
    std::string v;
    for (auto x : values) v += (v.empty() ? "" : ",") + std::to_string(x);
    reps += c.str() + " " + std::to_string(rep.dimension) + "-band N=" + v + "; ";
    all_one &= values == std::set<std::int64_t>{1};
  }
  auto constant = SymbolicOperator::scalar(2, 1.0);
  auto twice = SymbolicOperator::scalar(2, 1.0);
  twice.half_phase = {2, 0};
  const auto c0 = winding_number(constant, Direction::X, 64).winding;
  const auto c2 = winding_number(twice, Direction::X, 64).winding;
  o.pass = all_one && c0 == 0 && c2 == 2;
  o.detail = reps + "controls: constant " + std::to_string(c0) + ", e^{ik} I_2 " + std::to_string(c2) +
             " (expected N=1 for every shipped rep)";
  return o;
}

// 9. degeneracy, under 5 s
Outcome criterion9() {
  auto t0 = std::chrono::steady_clock::now();
  DegeneracyOptions opt;
  opt.samples = 20;
  auto four = degeneracy_check({1, 1, 1, 1}, opt);
  auto two = degeneracy_check({1, 1, 0, 0}, opt);
  const double s = seconds_since(t0);
  Outcome o;
  o.pass = four.min_multiplicity == 4 && four.multiples_of_expected && two.min_multiplicity == 2 &&
           two.multiples_of_expected && s < 5.0;
  o.detail = "4-band min multiplicity " + std::to_string(four.min_multiplicity) + ", 2-band " +
             std::to_string(two.min_multiplicity) + " over 20 samples (seed 1, relative tolerance 1e-9); " +
             std::to_string(s) + " s (limit 5 s)";
  return o;
}

// 10. property suites
Outcome criterion10() {
  Outcome o;
  std::mt19937 rng(10);
  std::uniform_int_distribution<int> dim(1, 8), e(-9, 9);
  int snf_ok = 0;
  const int trials = 1000;
  for (int k = 0; k < trials; ++k) {
    IntegerMatrix a(dim(rng), dim(rng));
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j) a(i, j) = e(rng);
    auto s = smith_normal_form(a);
    bool ok = s.u * a * s.v == s.d && abs(s.u.determinant()) == 1 && abs(s.v.determinant()) == 1;
    for (std::size_t i = 0; i + 1 < s.divisors.size(); ++i) ok &= s.divisors[i + 1] % s.divisors[i] == 0;
    for (std::size_t i = 0; i < a.rows(); ++i)
      for (std::size_t j = 0; j < a.cols(); ++j)
        ok &= (i == j && i < s.divisors.size()) ? s.d(i, j) == s.divisors[i] : s.d(i, j) == 0;
    snf_ok += ok;
  }
  int dd_ok = 0, dd_total = 0, cob_ok = 0;
  for (const auto& n : shipped_group_names()) {
    auto g = shipped_group(n);
    auto ec = complex_for(n);
    ++dd_total;
    dd_ok += validate_equivariant_complex(ec, *g).empty();
    ++dd_total;
    dd_ok += borel_total_complex(build_resolution(*g, 3), ec, *g, 3).validate().empty();
    auto sys = assemble_consistency_system(*g);
    bool in_kernel = true;
    for (const auto& c : coboundary_space(*g))
      for (const auto& row : sys.rows) in_kernel &= !row.dot(c);
    cob_ok += in_kernel;
  }
  o.pass = snf_ok == trials && dd_ok == dd_total && cob_ok == 17;
  o.detail = "SNF " + std::to_string(snf_ok) + "/" + std::to_string(trials) + "; d o d = 0 on " +
             std::to_string(dd_ok) + "/" + std::to_string(dd_total) + " complexes; coboundaries in kernel " +
             std::to_string(cob_ok) + "/17";
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  const bool report = argc > 1 && std::string(argv[1]) == "--report";
  const std::vector<std::function<Outcome()>> criteria = {criterion1, criterion2, criterion3, criterion4, criterion5,
                                                          criterion6, criterion7, criterion8, criterion9, criterion10};
  int passed = 0;
  bool unexpected = false;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const int id = static_cast<int>(i) + 1;
    passed += o.pass;
    if (!o.pass && !kKnownFailures.count(id)) unexpected = true;
    std::cout << "criterion " << id << ": " << (o.pass ? "PASS" : "FAIL") << "  " << o.detail
              << (!o.pass && kKnownFailures.count(id) ? "  [known discrepancy]" : "") << "\n";
  }
  std::cout << passed << "/" << criteria.size() << " criteria pass\n";
  if (passed == static_cast<int>(criteria.size())) return 0;
  return report && !unexpected ? 0 : 1;
}
