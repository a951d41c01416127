#include "qwp/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <future>
#include <iomanip>
#include <ostream>
#include <regex>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <openssl/evp.h>

#include "json_util.hpp"
#include "qwp/clifford.hpp"
#include "qwp/factorsys.hpp"
#include "qwp/group_io.hpp"
#include "qwp/homology.hpp"

#ifndef QWP_VERSION
#define QWP_VERSION "0.0.0"
#endif

namespace qwp::cli {

using nlohmann::json;

std::string sha256_hex(const std::string& data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1)
    throw InvariantViolation("SHA-256 computation failed");
  std::ostringstream s;
  for (unsigned int i = 0; i < len; ++i) s << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
  return s.str();
}

std::string run_record_to_json(const RunRecord& r) {
  json j;
  j["schema"] = "qwp.run/1";
  j["tool"] = "qwp";
  j["version"] = r.version;
  j["subcommand"] = r.subcommand;
  j["args"] = r.args;
  j["input_digest"] = r.input_digest;
  j["payload"] = json::parse(r.payload);
  j["duration_seconds"] = r.duration_seconds;
  return j.dump(2) + "\n";
}

RunRecord parse_run_record(const std::string& text) {
  json j = detail::parse_json(text, "run record");
  detail::FieldReader rd("run record");
  if (rd.get<std::string>(j, "schema") != "qwp.run/1") rd.fail("schema", "unsupported schema");
  RunRecord r;
  r.version = rd.get<std::string>(j, "version");
  r.subcommand = rd.get<std::string>(j, "subcommand");
  r.args = rd.get<std::vector<std::string>>(j, "args");
  r.input_digest = rd.get<std::string>(j, "input_digest");
  r.payload = rd.field(j, "payload").dump();
  r.duration_seconds = rd.get<double>(j, "duration_seconds");
  return r;
}

namespace {

// reference classification values compared by table1
struct TableEntry {
  const char* group;
  int z2;
  const char* u1;
};
constexpr TableEntry kTable1[] = {
    {"p1", 1, "U(1)"},   {"p2", 4, "U(1)"},  {"pm", 4, "Z2^2"},   {"pg", 1, "0"},      {"cm", 2, "Z2"},
    {"pmm", 8, "Z2^4"},  {"pmg", 4, "Z2"},   {"pgg", 2, "0"},     {"cmm", 5, "Z2^2"},  {"p4", 3, "U(1)"},
    {"p4m", 6, "Z2^3"},  {"p4g", 3, "Z2"},   {"p3", 1, "U(1)"},   {"p3m1", 2, "Z2"},   {"p31m", 2, "Z2"},
    {"p6", 2, "U(1)"},   {"p6m", 2, "Z2^2"}};

struct Context {
  std::vector<std::string> inputs;  // file contents feeding the digest
};

struct LoadedGroup {
  std::shared_ptr<const WallpaperGroup> group;
};

LoadedGroup load_group(const std::string& spec, Context& ctx) {
  if (spec.empty()) throw DomainError("--group is required");
  const bool is_path = spec.find('/') != std::string::npos || spec.ends_with(".json");
  if (is_path) {
    std::string text = read_text_file(spec);
    ctx.inputs.push_back(text);
    return {std::make_shared<const WallpaperGroup>(parse_group_json(text, spec))};
  }
  auto g = shipped_group(spec);
  if (auto text = data_file("groups/" + spec + ".json")) ctx.inputs.push_back(*text);
  return {g};
}

std::pair<EquivariantComplex, std::string> load_complex(const WallpaperGroup& g, const std::string& path, Context& ctx) {
  if (!path.empty()) {
    std::string text = read_text_file(path);
    ctx.inputs.push_back(text);
    return {parse_complex_json(text, path), path};
  }
  if (auto text = data_file("complexes/" + g.name() + ".json")) {
    ctx.inputs.push_back(*text);
    return {parse_complex_json(*text, "complexes/" + g.name() + ".json"), "shipped"};
  }
  throw DomainError("no equivariant complex available for group '" + g.name() +
                    "'; pass --complex <file> (JSON: {point_group, degrees: [{cells, action, boundary}]})");
}

json abelian_json(const AbelianGroup& a) {
  return {{"free_rank", a.free_rank}, {"torsion", a.torsion}, {"text", a.str()}};
}

json coefficient_json(const CoefficientGroup& c) {
  json j = {{"coeff", to_string(c.tag)}, {"text", c.str()}, {"torsion", c.torsion}, {"u1_rank", c.u1_rank}};
  if (c.tag == Coefficient::Z2) j["z2_dimension"] = c.z2_dimension();
  return j;
}

json rep_json(const FactorSystem& fs) {
  json g = json::object();
  for (int r = 0; r < fs.group->order(); ++r) g[fs.group->label(r)] = {{"b", b_bits(fs, r)}, {"q", q_bits(fs, r)}};
  return {{"sigma_bits", sigma_bits(fs)}, {"g", g}, {"alpha_bits", alpha_bits(fs)}};
}

std::vector<std::string> smith_diagonal(const IntegerMatrix& m) {
  auto d = elementary_divisors(m);
  std::vector<std::string> out;
  for (auto& x : d) out.push_back(x.get_str());
  while (out.size() < std::min(m.rows(), m.cols())) out.push_back("0");
  return out;
}

json matrix_json(const IntegerMatrix& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j).get_si());
    rows.push_back(row);
  }
  return rows;
}

std::string render_matrix(const json& rows) {
  std::size_t w = 1;
  for (const auto& r : rows)
    for (const auto& x : r) w = std::max(w, std::to_string(x.get<long>()).size());
  std::string s;
  for (const auto& r : rows) {
    s += "  [";
    for (std::size_t j = 0; j < r.size(); ++j) {
      std::string v = std::to_string(r[j].get<long>());
      s += (j ? " " : "") + std::string(w - v.size(), ' ') + v;
    }
    s += "]\n";
  }
  return s;
}

std::string join(const std::vector<std::string>& v, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + v[i];
  return s;
}

// ---- payload builders

json cmd_list_groups() {
  json groups = json::array();
  for (const auto& n : shipped_group_names()) {
    auto g = shipped_group(n);
    groups.push_back({{"name", n},
                      {"order", g->order()},
                      {"symmorphic", g->omega_vanishes()},
                      {"complex", shipped_complex(n).has_value()}});
  }
  return {{"schema", "qwp.list-groups/1"}, {"groups", groups}};
}

json homology_payload(const WallpaperGroup& g, const EquivariantComplex& ec, const std::string& source, int max_degree,
                      std::optional<Coefficient> coeff, bool matrices) {
  auto problems = validate_equivariant_complex(ec, g);
  if (!problems.empty()) throw DomainError("equivariant complex is invalid:\n  " + join(problems, "\n  "));
  Resolution res = build_resolution(g, max_degree + 1);
  ChainComplex tc = borel_total_complex(res, ec, g, max_degree + 1);
  std::vector<AbelianGroup> h;
  for (int n = 0; n <= max_degree; ++n) h.push_back(homology(tc, n));
  json hj = json::array();
  for (int n = 0; n <= max_degree; ++n) {
    json e = abelian_json(h[n]);
    e["degree"] = n;
    hj.push_back(e);
  }
  json out = {{"schema", "qwp.homology/1"},
              {"group", g.name()},
              {"resolution", res.kind},
              {"resolution_verified_through", res.verified_through},
              {"complex", source},
              {"max_degree", max_degree},
              {"ranks", tc.ranks},
              {"homology", hj}};
  if (coeff) {
    json cj = json::array();
    for (int n = 0; n <= max_degree; ++n) {
      json e = coefficient_json(cohomology_from_uct(h[n], n ? h[n - 1] : AbelianGroup{}, *coeff));
      e["degree"] = n;
      cj.push_back(e);
    }
    out["cohomology"] = cj;
  }
  if (matrices) {
    json mj = json::array();
    for (int p = 1; p <= tc.top_degree(); ++p)
      mj.push_back({{"degree", p},
                    {"rows", tc.boundary[p].rows()},
                    {"cols", tc.boundary[p].cols()},
                    {"row_basis", tc.basis_labels[p - 1]},
                    {"col_basis", tc.basis_labels[p]},
                    {"entries", matrix_json(tc.boundary[p])},
                    {"smith", smith_diagonal(tc.boundary[p])}});
    out["matrices"] = mj;
  }
  return out;
}

json cmd_classify(const WallpaperGroup& gref, std::shared_ptr<const WallpaperGroup> g, Coefficient coeff, bool reps,
                  int radius, Context& ctx, const std::string& complex_path) {
  if (coeff == Coefficient::U1) {
    auto [ec, src] = load_complex(gref, complex_path, ctx);
    auto h = group_homology_range(gref, ec, 2);
    auto c = cohomology_from_uct(h[2], h[1], Coefficient::U1);
    return {{"schema", "qwp.classify/1"}, {"group", g->name()}, {"coeff", "u1"}, {"method", "homology+uct"},
            {"complex", src},             {"value", c.str()},    {"u1_rank", c.u1_rank}, {"torsion", c.torsion}};
  }
  ClassifyOptions opt;
  opt.verify_radius = radius;
  opt.representatives = reps;
  auto r = classify(g, opt);
  json out = {{"schema", "qwp.classify/1"},
              {"group", r.group},
              {"coeff", "z2"},
              {"method", "factor-system"},
              {"dimension", r.h2_dimension},
              {"value", r.h2_dimension ? (r.h2_dimension == 1 ? std::string("Z2") : "Z2^" + std::to_string(r.h2_dimension)) : "0"},
              {"solution_dimension", r.solution_dimension},
              {"coboundary_dimension", r.coboundary_dimension},
              {"g_part_dimension", r.g_part_dimension},
              {"flux_forced_trivial", r.flux_forced_trivial},
              {"unknowns", UnknownLayout(g->dim(), g->order()).names(*g)}};
  if (reps) {
    json rj = json::array();
    for (const auto& fs : r.representatives) rj.push_back(rep_json(fs));
    out["representatives"] = rj;
  }
  return out;
}

SpaceGroupElement parse_element(const WallpaperGroup& g, const std::string& t, const std::string& label) {
  SpaceGroupElement e;
  e.t = LatticeVector(g.dim());
  std::stringstream ss(t);
  std::string part;
  int i = 0;
  while (std::getline(ss, part, ',')) {
    if (i >= g.dim()) throw DomainError("element {" + t + "|" + label + "} has too many components");
    try {
      std::size_t pos = 0;
      e.t.c[i++] = std::stoll(part, &pos);
      if (part.find_first_not_of(' ', pos) != std::string::npos) throw std::invalid_argument(part);
    } catch (const std::logic_error&) {
      throw DomainError("bad translation component '" + part + "'");
    }
  }
  if (i != g.dim()) throw DomainError("element {" + t + "|" + label + "} needs " + std::to_string(g.dim()) + " components");
  std::string l = label;
  l.erase(0, l.find_first_not_of(' '));
  l.erase(l.find_last_not_of(' ') + 1);
  e.r = g.index_of(l);
  return e;
}

std::string element_str(const WallpaperGroup& g, const SpaceGroupElement& e) {
  std::string s = "{";
  for (int i = 0; i < e.t.dim; ++i) s += (i ? "," : "") + std::to_string(e.t.c[i]);
  return s + "|" + g.label(e.r) + "}";
}

json cmd_factor_systems(std::shared_ptr<const WallpaperGroup> g, const std::vector<std::string>& pairs, int cls,
                        int radius) {
  ClassifyOptions opt;
  opt.verify_radius = radius;
  auto r = classify(g, opt);
  if (cls >= static_cast<int>(r.representatives.size()))
    throw DomainError("class index " + std::to_string(cls) + " out of range (" +
                      std::to_string(r.representatives.size()) + " representatives listed)");
  static const std::regex el(R"(\{([^|}]*)\|([^}]*)\})");
  std::vector<std::pair<SpaceGroupElement, SpaceGroupElement>> parsed;
  for (const auto& p : pairs) {
    std::vector<SpaceGroupElement> els;
    for (auto it = std::sregex_iterator(p.begin(), p.end(), el); it != std::sregex_iterator(); ++it)
      els.push_back(parse_element(*g, (*it)[1], (*it)[2]));
    if (els.size() != 2) throw DomainError("--pair expects two elements like \"{1,0|M}{0,1|E}\", got '" + p + "'");
    parsed.emplace_back(els[0], els[1]);
  }
  json classes = json::array();
  for (std::size_t k = 0; k < r.representatives.size(); ++k) {
    if (cls >= 0 && static_cast<int>(k) != cls) continue;
    const auto& fs = r.representatives[k];
    json c = rep_json(fs);
    c["index"] = k;
    c["cocycle_radius_checked"] = radius;
    json ev = json::array();
    for (const auto& [a, b] : parsed)
      ev.push_back({{"g1", element_str(*g, a)}, {"g2", element_str(*g, b)}, {"nu", evaluate(fs, a, b)}});
    c["evaluations"] = ev;
    classes.push_back(c);
  }
  return {{"schema", "qwp.factor-systems/1"},
          {"group", g->name()},
          {"dimension", r.h2_dimension},
          {"unknowns", UnknownLayout(g->dim(), g->order()).names(*g)},
          {"classes", classes}};
}

json cmd_bands(const SymmetryCase& c, bool winding, int grid, bool degeneracy, int samples, std::uint64_t seed,
               bool& unsupported) {
  auto sig = signature(c);
  json out = {{"schema", "qwp.bands/1"},
              {"case", {{"s_t", c.s_t}, {"s_p", c.s_p}, {"q_x", c.q_x}, {"q_y", c.q_y}}},
              {"signature", {sig.n, sig.m}},
              {"irrep_dim", irrep_dim(sig)}};
  if (!has_shipped_construction(c)) {
    out["construction"] = nullptr;
    out["note"] = "no shipped construction for this case";
    unsupported = winding || degeneracy;
    return out;
  }
  auto rep = build_standard_rep(c);
  auto alg = check_algebra(rep, c);
  json rel = json::array();
  for (const auto& x : alg.checks) rel.push_back({{"relation", x.relation}, {"pass", x.pass}, {"residual", x.residual}});
  out["construction"] = {{"dimension", rep.dimension}, {"description", rep.description}, {"algebra", rel}};
  if (winding) {
    auto wx = winding_number(rep, Direction::X, grid), wy = winding_number(rep, Direction::Y, grid);
    out["winding"] = {{"x", wx.winding}, {"y", wy.winding}, {"raw_x", wx.raw}, {"raw_y", wy.raw}, {"grid", grid}};
  }
  if (degeneracy) {
    DegeneracyOptions opt;
    opt.samples = samples;
    opt.seed = seed;
    auto d = degeneracy_check(rep, irrep_dim(sig), opt);
    out["degeneracy"] = {{"min_multiplicity", d.min_multiplicity},
                         {"max_multiplicity", d.max_multiplicity},
                         {"multiples_of_irrep_dim", d.multiples_of_expected},
                         {"samples", d.samples},
                         {"seed", seed},
                         {"symmetrizer_size", d.symmetrizer_size},
                         {"reseeds", d.reseeds}};
  }
  return out;
}

json cmd_validate(const std::vector<std::string>& files, const std::string& group_spec, Context& ctx, bool& failed) {
  json results = json::array();
  for (const auto& f : files) {
    std::string text = read_text_file(f);
    ctx.inputs.push_back(text);
    json doc = detail::parse_json(text, f);
    json r = {{"file", f}};
    std::vector<std::string> problems;
    if (doc.is_object() && doc.contains("degrees")) {
      r["kind"] = "complex";
      auto ec = parse_complex_json(text, f);
      std::shared_ptr<const WallpaperGroup> g =
          group_spec.empty() ? shipped_group(ec.group) : load_group(group_spec, ctx).group;
      problems = validate_equivariant_complex(ec, *g);
      if (problems.empty()) r["coinvariant_euler_characteristic"] = coinvariant_euler_characteristic(ec, *g);
    } else {
      r["kind"] = "group";
      problems = validate(parse_group_json(text, f));
    }
    r["problems"] = problems;
    r["valid"] = problems.empty();
    failed |= !problems.empty();
    results.push_back(r);
  }
  return {{"schema", "qwp.validate/1"}, {"results", results}};
}

json cmd_table1(bool want_z2, bool want_u1) {
  struct Row {
    int z2 = -1;
    std::string u1;
    bool has_complex = false;
  };
  std::vector<std::future<Row>> jobs;
  for (const auto& e : kTable1)
    jobs.push_back(std::async(std::launch::async, [name = std::string(e.group), want_z2, want_u1] {
      Row row;
      auto g = shipped_group(name);
      if (want_z2) row.z2 = classify(g, {0, false}).h2_dimension;
      if (want_u1) {
        if (auto ec = shipped_complex(name)) {
          row.has_complex = true;
          auto h = group_homology_range(*g, *ec, 2);
          row.u1 = cohomology_from_uct(h[2], h[1], Coefficient::U1).str();
        }
      }
      return row;
    }));
  json rows = json::array();
  int z2_match = 0, u1_match = 0, u1_total = 0;
  for (std::size_t k = 0; k < jobs.size(); ++k) {
    Row row = jobs[k].get();
    const auto& e = kTable1[k];
    json r = {{"group", e.group}};
    if (want_z2) {
      bool m = row.z2 == e.z2;
      z2_match += m;
      r["z2"] = {{"computed", row.z2}, {"expected", e.z2}, {"match", m}};
    }
    if (want_u1) {
      if (row.has_complex) {
        bool m = row.u1 == e.u1;
        u1_match += m;
        ++u1_total;
        r["u1"] = {{"computed", row.u1}, {"expected", e.u1}, {"match", m}};
      } else {
        r["u1"] = {{"computed", nullptr}, {"expected", e.u1}, {"match", nullptr}, {"note", "no complex data"}};
      }
    }
    rows.push_back(r);
  }
  json out = {{"schema", "qwp.table1/1"}, {"rows", rows}};
  if (want_z2) out["z2_matches"] = std::to_string(z2_match) + "/" + std::to_string(std::size(kTable1));
  if (want_u1) out["u1_matches"] = std::to_string(u1_match) + "/" + std::to_string(u1_total);
  return out;
}

// ---- human rendering

std::string render(const std::string& cmd, const json& p) {
  std::ostringstream o;
  if (cmd == "list-groups") {
    for (const auto& g : p["groups"])
      o << std::left << std::setw(6) << g["name"].get<std::string>() << " |P|=" << std::setw(4) << g["order"].get<int>()
        << (g["symmorphic"].get<bool>() ? "symmorphic   " : "nonsymmorphic") << (g["complex"].get<bool>() ? "  complex" : "")
        << "\n";
  } else if (cmd == "classify") {
    o << "group " << p["group"].get<std::string>() << "  H^2(G," << (p["coeff"] == "z2" ? "Z2" : "U(1)")
      << ") = " << p["value"].get<std::string>();
    if (p.contains("dimension")) o << "  (dimension " << p["dimension"].get<int>() << ")";
    o << "\n";
    if (p["method"] == "factor-system") {
      o << "solution space " << p["solution_dimension"].get<int>() << ", coboundaries "
        << p["coboundary_dimension"].get<int>() << ", g-part " << p["g_part_dimension"].get<int>()
        << ", flux forced trivial: " << (p["flux_forced_trivial"].get<bool>() ? "yes" : "no") << "\n";
      if (p.contains("representatives")) {
        int k = 0;
        for (const auto& r : p["representatives"]) {
          o << "  [" << k++ << "] sigma=" << r["sigma_bits"].get<std::string>()
            << " alpha=" << r["alpha_bits"].get<std::string>() << " g:";
          for (const auto& [lbl, v] : r["g"].items())
            o << " " << lbl << "(b=" << v["b"].get<std::string>() << ",q=" << v["q"].get<std::string>() << ")";
          o << "\n";
        }
      }
    } else {
      o << "computed by homology and the universal coefficient theorem (complex: " << p["complex"].get<std::string>()
        << ")\n";
    }
  } else if (cmd == "homology" || cmd == "export-matrices") {
    o << "group " << p["group"].get<std::string>() << "  resolution " << p["resolution"].get<std::string>()
      << "  complex " << p["complex"].get<std::string>() << "\n";
    o << "total complex ranks:";
    for (const auto& r : p["ranks"]) o << " " << r.get<std::size_t>();
    o << "\n";
    if (p.contains("homology"))
      for (const auto& h : p["homology"])
        o << "H_" << h["degree"].get<int>() << " = " << h["text"].get<std::string>() << "\n";
    if (p.contains("cohomology"))
      for (const auto& h : p["cohomology"])
        o << "H^" << h["degree"].get<int>() << "(G," << (h["coeff"] == "z2" ? "Z2" : "U(1)")
          << ") = " << h["text"].get<std::string>() << "\n";
    if (p.contains("matrices"))
      for (const auto& m : p["matrices"]) {
        o << "\nd" << m["degree"].get<int>() << " (" << m["rows"].get<std::size_t>() << "x" << m["cols"].get<std::size_t>()
          << ")\n";
        o << "  rows: " << join(m["row_basis"].get<std::vector<std::string>>(), " ") << "\n";
        o << "  cols: " << join(m["col_basis"].get<std::vector<std::string>>(), " ") << "\n";
        o << render_matrix(m["entries"]);
        o << "  Smith form: diag(" << join(m["smith"].get<std::vector<std::string>>(), ", ") << ")\n";
      }
  } else if (cmd == "factor-systems") {
    o << "group " << p["group"].get<std::string>() << "  H^2(G,Z2) dimension " << p["dimension"].get<int>() << "\n";
    for (const auto& c : p["classes"]) {
      o << "class " << c["index"].get<int>() << ": sigma=" << c["sigma_bits"].get<std::string>()
        << " alpha=" << c["alpha_bits"].get<std::string>() << " g:";
      for (const auto& [lbl, v] : c["g"].items())
        o << " " << lbl << "(b=" << v["b"].get<std::string>() << ",q=" << v["q"].get<std::string>() << ")";
      o << "\n";
      for (const auto& e : c["evaluations"])
        o << "  nu(" << e["g1"].get<std::string>() << ", " << e["g2"].get<std::string>()
          << ") = " << std::showpos << e["nu"].get<int>() << std::noshowpos << "\n";
    }
  } else if (cmd == "bands") {
    const auto& c = p["case"];
    o << "case s_t=" << c["s_t"].get<int>() << " s_p=" << c["s_p"].get<int>() << " q=(" << c["q_x"].get<int>() << ","
      << c["q_y"].get<int>() << ")\n";
    o << "Clifford algebra C^{" << p["signature"][0].get<int>() << "," << p["signature"][1].get<int>()
      << "}, irreducible dimension D = " << p["irrep_dim"].get<int>() << "\n";
    if (p["construction"].is_null()) {
      o << p["note"].get<std::string>() << "\n";
    } else {
      o << "representation: " << p["construction"]["description"].get<std::string>() << "\n";
      for (const auto& r : p["construction"]["algebra"])
        o << "  " << (r["pass"].get<bool>() ? "ok   " : "FAIL ") << r["relation"].get<std::string>() << "\n";
    }
    if (p.contains("winding"))
      o << "winding N_x = " << p["winding"]["x"].get<long>() << ", N_y = " << p["winding"]["y"].get<long>()
        << " (grid " << p["winding"]["grid"].get<int>() << ")\n";
    if (p.contains("degeneracy"))
      o << "degeneracy: minimal multiplicity " << p["degeneracy"]["min_multiplicity"].get<int>() << " over "
        << p["degeneracy"]["samples"].get<int>() << " samples (seed " << p["degeneracy"]["seed"].get<std::uint64_t>()
        << ")\n";
  } else if (cmd == "validate") {
    for (const auto& r : p["results"]) {
      o << r["file"].get<std::string>() << " (" << r["kind"].get<std::string>()
        << "): " << (r["valid"].get<bool>() ? "valid" : "INVALID") << "\n";
      for (const auto& x : r["problems"]) o << "  " << x.get<std::string>() << "\n";
    }
  } else if (cmd == "table1") {
    o << std::left << std::setw(6) << "G";
    bool z2 = p.contains("z2_matches"), u1 = p.contains("u1_matches");
    if (z2) o << std::setw(22) << "H^2(G,Z2)";
    if (u1) o << "H^2(G,U(1))";
    o << "\n";
    for (const auto& r : p["rows"]) {
      o << std::setw(6) << r["group"].get<std::string>();
      if (z2) {
        const auto& z = r["z2"];
        std::string cell = "Z2^" + std::to_string(z["computed"].get<int>()) + " (table " +
                           std::to_string(z["expected"].get<int>()) + ") " + (z["match"].get<bool>() ? "ok" : "FAIL");
        o << std::setw(22) << cell;
      }
      if (u1) {
        const auto& u = r["u1"];
        if (u["computed"].is_null())
          o << "no complex data (table " << u["expected"].get<std::string>() << ")";
        else
          o << u["computed"].get<std::string>() << " (table " << u["expected"].get<std::string>() << ") "
            << (u["match"].get<bool>() ? "ok" : "FAIL");
      }
      o << "\n";
    }
    if (z2) o << "Z2 row: " << p["z2_matches"].get<std::string>() << " match\n";
    if (u1) o << "U(1) row: " << p["u1_matches"].get<std::string>() << " match (groups with complex data)\n";
  } else if (p.contains("text")) {
    o << p["text"].get<std::string>();
  } else {
    o << p.dump(2) << "\n";
  }
  return o.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot write '" + path + "'");
  f << text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  CLI::App app{"Projective (quantum) wallpaper group toolkit", "qwp"};
  app.require_subcommand(1);
  app.fallthrough();
  bool as_json = false, verbose = false;
  std::string record_path;
  app.add_flag("--json", as_json, "machine-readable output");
  app.add_flag("-v,--verbose", verbose, "timing on stderr");
  app.add_option("--record", record_path, "write a run record to this file");
  app.set_version_flag("--version", std::string(QWP_VERSION));

  std::string group, complex_path, coeff_s = "z2", output;
  int max_degree = 2, radius = 1, cls = -1, grid = 64, samples = 20, st = 1, sp = 1, qx = 0, qy = 0, gridn = 0;
  bool reps = false, show = false, winding = false, degen = false, all = false, want_complex = false;
  std::uint64_t seed = 1;
  std::vector<std::string> pairs, files;

  app.add_subcommand("list-groups", "list the shipped groups");

  auto* c_classify = app.add_subcommand("classify", "H^2(G,A) by the factor-system solver (Z2) or homology (U(1))");
  c_classify->add_option("--group", group, "group name or group file")->required();
  c_classify->add_option("--coeff", coeff_s, "z2 | u1");
  c_classify->add_flag("--representatives", reps, "list one factor system per class");
  c_classify->add_option("--radius", radius, "cocycle re-check radius for representatives")->check(CLI::Range(0, 4));
  c_classify->add_option("--complex", complex_path, "equivariant complex file (for u1)");

  auto* c_hom = app.add_subcommand("homology", "integer homology of the space group");
  c_hom->add_option("--group", group, "group name or group file")->required();
  c_hom->add_option("--max-degree", max_degree, "highest homology degree")->check(CLI::Range(0, 8));
  c_hom->add_option("--coeff", coeff_s, "also print cohomology with z2 | u1 coefficients");
  c_hom->add_flag("--show-matrices", show, "print total-complex boundary matrices and Smith forms");
  c_hom->add_option("--complex", complex_path, "equivariant complex file");

  auto* c_exp_m = app.add_subcommand("export-matrices", "boundary matrices and Smith forms up to a degree");
  c_exp_m->add_option("--group", group, "group name or group file")->required();
  c_exp_m->add_option("--max-degree", max_degree, "highest boundary degree")->check(CLI::Range(1, 8));
  c_exp_m->add_option("--complex", complex_path, "equivariant complex file");

  auto* c_fs = app.add_subcommand("factor-systems", "representatives and nu evaluations");
  c_fs->add_option("--group", group, "group name or group file")->required();
  c_fs->add_option("--class", cls, "only this class index");
  c_fs->add_option("--pair", pairs, "element pair, e.g. \"{1,0|M}{0,1|E}\"");
  c_fs->add_option("--radius", radius, "cocycle re-check radius")->check(CLI::Range(0, 4));

  auto* c_bands = app.add_subcommand("bands", "Clifford band analysis");
  c_bands->add_option("--st", st, "T^2 = s_t")->check(CLI::IsMember({-1, 1}));
  c_bands->add_option("--sp", sp, "P^2 = s_p")->check(CLI::IsMember({-1, 1}));
  c_bands->add_option("--qx", qx, "g({t|P}) exponent q_x")->check(CLI::IsMember({0, 1}));
  c_bands->add_option("--qy", qy, "g({t|P}) exponent q_y")->check(CLI::IsMember({0, 1}));
  c_bands->add_flag("--winding", winding, "winding numbers of L_x, L_y");
  c_bands->add_option("--grid", grid, "loop discretization");
  c_bands->add_flag("--degeneracy", degen, "randomized degeneracy check");
  c_bands->add_option("--samples", samples, "random Hamiltonians");
  c_bands->add_option("--seed", seed, "random seed");

  auto* c_val = app.add_subcommand("validate", "check group or complex files");
  c_val->add_option("files", files, "files to check")->required();
  c_val->add_option("--group", group, "group for complex files (default: the one named in the file)");

  auto* c_t1 = app.add_subcommand("table1", "reproduce the classification table");
  std::string t1_coeff = "both";
  c_t1->add_option("--coeff", t1_coeff, "z2 | u1 | both");

  auto* c_export = app.add_subcommand("export", "write shipped data files");
  c_export->add_option("--group", group, "group name");
  c_export->add_flag("--complex", want_complex, "export the equivariant complex instead of the group");
  c_export->add_flag("--all", all, "every shipped group and complex");
  c_export->add_option("-o,--output", output, "output file (directory with --all)");

  auto* c_gen = app.add_subcommand("generate-complex", "torus cell structure with the group action");
  c_gen->add_option("--group", group, "group name or group file")->required();
  c_gen->add_option("--grid", gridn, "grid size N (default: least N with N tau integral)");
  c_gen->add_option("-o,--output", output, "output file");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  Context ctx;
  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    json payload;
    int status = 0;
    if (cmd == "list-groups") {
      payload = cmd_list_groups();
    } else if (cmd == "classify") {
      auto lg = load_group(group, ctx);
      payload = cmd_classify(*lg.group, lg.group, parse_coefficient(coeff_s), reps, radius, ctx, complex_path);
    } else if (cmd == "homology" || cmd == "export-matrices") {
      auto lg = load_group(group, ctx);
      auto [ec, src] = load_complex(*lg.group, complex_path, ctx);
      if (cmd == "homology") {
        std::optional<Coefficient> c;
        if (c_hom->count("--coeff")) c = parse_coefficient(coeff_s);
        payload = homology_payload(*lg.group, ec, src, max_degree, c, show);
      } else {
        payload = homology_payload(*lg.group, ec, src, max_degree - 1, std::nullopt, true);
        payload.erase("homology");
        payload["schema"] = "qwp.export-matrices/1";
      }
    } else if (cmd == "factor-systems") {
      payload = cmd_factor_systems(load_group(group, ctx).group, pairs, cls, radius);
    } else if (cmd == "bands") {
      bool unsupported = false;
      payload = cmd_bands({st, sp, qx, qy}, winding, grid, degen, samples, seed, unsupported);
      if (unsupported) status = 1;
    } else if (cmd == "validate") {
      bool failed = false;
      payload = cmd_validate(files, group, ctx, failed);
      if (failed) status = 1;
    } else if (cmd == "table1") {
      if (t1_coeff != "both" && t1_coeff != "z2" && t1_coeff != "u1") throw DomainError("--coeff must be z2, u1 or both");
      payload = cmd_table1(t1_coeff != "u1", t1_coeff != "z2");
    } else if (cmd == "export") {
      if (all) {
        if (output.empty()) throw DomainError("--all needs -o <directory>");
        json written = json::array();
        for (const auto& n : shipped_group_names()) {
          write_file(output + "/" + n + ".group.json", group_to_json(shipped_group(n)->data()));
          written.push_back(n + ".group.json");
          if (auto ec = shipped_complex(n)) {
            write_file(output + "/" + n + ".complex.json", complex_to_json(*ec));
            written.push_back(n + ".complex.json");
          }
        }
        payload = {{"schema", "qwp.export/1"}, {"written", written}};
      } else {
        auto lg = load_group(group, ctx);
        std::string text;
        if (want_complex) {
          auto ec = shipped_complex(lg.group->name());
          if (!ec) throw DomainError("no shipped equivariant complex for '" + lg.group->name() + "'");
          text = complex_to_json(*ec);
        } else {
          text = group_to_json(lg.group->data());
        }
        if (!output.empty()) write_file(output, text);
        payload = {{"schema", "qwp.export/1"}, {"text", output.empty() ? text : "wrote " + output + "\n"}};
      }
    } else if (cmd == "generate-complex") {
      auto lg = load_group(group, ctx);
      auto ec = torus_cell_complex(*lg.group, gridn);
      auto problems = validate_equivariant_complex(ec, *lg.group);
      if (!problems.empty()) throw InvariantViolation("generated complex is invalid:\n  " + join(problems, "\n  "));
      std::string text = complex_to_json(ec);
      if (!output.empty()) write_file(output, text);
      payload = {{"schema", "qwp.generate-complex/1"},
                 {"group", lg.group->name()},
                 {"cells", {ec.cells[0].size(), ec.cells[1].size(), ec.cells[2].size()}},
                 {"text", output.empty() ? text : "wrote " + output + "\n"}};
    }

    const std::string payload_text = payload.dump();
    if (as_json)
      out << payload_text << "\n";
    else
      out << render(cmd, payload);

    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (verbose) err << cmd << " took " << secs << " s\n";
    if (!record_path.empty()) {
      RunRecord rec;
      rec.version = QWP_VERSION;
      rec.subcommand = cmd;
      rec.args = args;
      std::string digest_input;
      for (const auto& a : args) digest_input += a + '\0';
      for (const auto& in : ctx.inputs) digest_input += in + '\0';
      rec.input_digest = "sha256:" + sha256_hex(digest_input);
      rec.payload = payload_text;
      rec.duration_seconds = secs;
      write_file(record_path, run_record_to_json(rec));
    }
    return status;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const InvariantViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const ContractViolation& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace qwp::cli
