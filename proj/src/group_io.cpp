#include "qwp/group_io.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <mutex>
#include <sstream>

#include <json.hpp>

#include "embedded.hpp"
#include "json_util.hpp"

namespace qwp {

using nlohmann::json;

const std::vector<std::string>& shipped_group_names() {
  static const std::vector<std::string> names = {
      "p1",  "p2",  "pm",  "pg", "cm",   "pmm",  "pmg", "pgg", "cmm",
      "p4",  "p4m", "p4g", "p3", "p3m1", "p31m", "p6",  "p6m"};
  return names;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<std::string> data_file(const std::string& relpath) {
  if (const char* dir = std::getenv("QWP_DATA_DIR"); dir && *dir) {
    std::ifstream in(std::string(dir) + "/" + relpath, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  for (std::size_t i = 0; i < detail::kEmbeddedFileCount; ++i)
    if (relpath == detail::kEmbeddedFiles[i].path) return std::string(detail::kEmbeddedFiles[i].text);
  return std::nullopt;
}

WallpaperGroupData parse_group_json(const std::string& text, const std::string& source) {
  json doc = detail::parse_json(text, source);
  detail::FieldReader rd(source);
  WallpaperGroupData out;
  out.name = rd.get<std::string>(doc, "name");
  out.dimension = rd.get<int>(doc, "dimension");
  if (out.dimension < 1 || out.dimension > kMaxDim)
    rd.fail("dimension", "must be between 1 and " + std::to_string(kMaxDim));
  const json& els = rd.array(doc, "elements");
  for (std::size_t k = 0; k < els.size(); ++k) {
    const std::string at = "elements[" + std::to_string(k) + "]";
    const json& e = els[k];
    if (!e.is_object()) rd.fail(at, "expected an object");
    PointGroupElement pe;
    pe.label = rd.get<std::string>(e, "label", at);
    const json& m = rd.array(e, "matrix", at);
    if (static_cast<int>(m.size()) != out.dimension)
      rd.fail(at + ".matrix", "expected " + std::to_string(out.dimension) + " rows");
    pe.matrix = LatticeMatrix(out.dimension);
    for (int i = 0; i < out.dimension; ++i) {
      const std::string rat = at + ".matrix[" + std::to_string(i) + "]";
      if (!m[i].is_array() || static_cast<int>(m[i].size()) != out.dimension)
        rd.fail(rat, "expected " + std::to_string(out.dimension) + " integers");
      for (int j = 0; j < out.dimension; ++j) {
        if (!m[i][j].is_number_integer()) rd.fail(rat, "entries must be integers");
        pe.matrix(i, j) = m[i][j].get<std::int64_t>();
      }
    }
    const json& t = rd.array(e, "tau", at);
    if (static_cast<int>(t.size()) != out.dimension)
      rd.fail(at + ".tau", "expected " + std::to_string(out.dimension) + " components");
    for (std::size_t i = 0; i < t.size(); ++i) {
      const std::string tat = at + ".tau[" + std::to_string(i) + "]";
      if (t[i].is_number_integer()) {
        pe.tau.emplace_back(t[i].get<std::int64_t>());
      } else if (t[i].is_string()) {
        try {
          pe.tau.push_back(parse_rational(t[i].get<std::string>()));
        } catch (const std::invalid_argument& ex) {
          rd.fail(tat, ex.what());
        }
      } else {
        rd.fail(tat, "expected an integer or a fraction string like \"1/2\"");
      }
    }
    out.point_group.push_back(std::move(pe));
  }
  if (doc.contains("generators")) {
    const json& g = rd.array(doc, "generators");
    for (std::size_t k = 0; k < g.size(); ++k) {
      if (!g[k].is_string()) rd.fail("generators[" + std::to_string(k) + "]", "expected a label");
      out.generators.push_back(g[k].get<std::string>());
    }
  }
  return out;
}

std::string group_to_json(const WallpaperGroupData& data) {
  // one element per line, matching the shipped files
  std::string s = "{\n  \"name\": " + json(data.name).dump() +
                  ",\n  \"dimension\": " + std::to_string(data.dimension) + ",\n  \"elements\": [\n";
  for (std::size_t k = 0; k < data.point_group.size(); ++k) {
    const auto& e = data.point_group[k];
    json m = json::array();
    for (int i = 0; i < e.matrix.dim; ++i) {
      json row = json::array();
      for (int j = 0; j < e.matrix.dim; ++j) row.push_back(e.matrix(i, j));
      m.push_back(row);
    }
    json t = json::array();
    for (const auto& x : e.tau) t.push_back(to_string(x));
    s += "    {\"label\": " + json(e.label).dump() + ", \"matrix\": " + detail::dump_inline(m) +
         ", \"tau\": " + detail::dump_inline(t) + "}";
    s += k + 1 < data.point_group.size() ? ",\n" : "\n";
  }
  s += "  ],\n  \"generators\": " + detail::dump_inline(json(data.generators)) + "\n}\n";
  return s;
}

WallpaperGroupData load_group_file(const std::string& path) {
  return parse_group_json(read_text_file(path), path);
}

std::shared_ptr<const WallpaperGroup> shipped_group(const std::string& name) {
  static std::mutex mu;
  static std::map<std::string, std::shared_ptr<const WallpaperGroup>> cache;
  const auto& names = shipped_group_names();
  if (std::find(names.begin(), names.end(), name) == names.end()) {
    std::string known;
    for (const auto& n : names) known += (known.empty() ? "" : ", ") + n;
    throw DomainError("unknown group '" + name + "'; known groups: " + known);
  }
  // QWP_DATA_DIR may change between calls in tests, so only cache embedded data
  const bool overridden = std::getenv("QWP_DATA_DIR") && *std::getenv("QWP_DATA_DIR");
  if (!overridden) {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(name); it != cache.end()) return it->second;
  }
  auto text = data_file("groups/" + name + ".json");
  if (!text) throw DomainError("data file groups/" + name + ".json not found");
  auto g = std::make_shared<const WallpaperGroup>(parse_group_json(*text, "groups/" + name + ".json"));
  if (!overridden) {
    std::lock_guard<std::mutex> lock(mu);
    cache.emplace(name, g);
  }
  return g;
}

}  // namespace qwp
