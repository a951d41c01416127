#include <map>

#include <json.hpp>

#include "json_util.hpp"
#include "qwp/group_io.hpp"
#include "qwp/homology.hpp"

namespace qwp {

using nlohmann::json;

EquivariantComplex parse_complex_json(const std::string& text, const std::string& source) {
  json doc = detail::parse_json(text, source);
  detail::FieldReader rd(source);
  EquivariantComplex ec;
  ec.group = rd.get<std::string>(doc, "point_group");
  if (doc.contains("orbit_euler_characteristic"))
    ec.orbit_euler_characteristic = rd.get<std::int64_t>(doc, "orbit_euler_characteristic");
  const json& degs = rd.array(doc, "degrees");
  if (degs.empty()) rd.fail("degrees", "must list at least degree 0");
  for (std::size_t d = 0; d < degs.size(); ++d) {
    const std::string at = "degrees[" + std::to_string(d) + "]";
    const json& dj = degs[d];
    auto cells = rd.get<std::vector<std::string>>(dj, "cells", at);
    std::map<std::string, int> index;
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (cells[k].empty() || cells[k][0] == '-') rd.fail(at + ".cells", "label '" + cells[k] + "' is empty or starts with '-'");
      if (!index.emplace(cells[k], static_cast<int>(k)).second) rd.fail(at + ".cells", "duplicate label '" + cells[k] + "'");
    }
    std::map<std::string, SignedPermutation> action;
    const json& aj = rd.field(dj, "action", at);
    if (!aj.is_object()) rd.fail(at + ".action", "expected an object");
    for (const auto& [gen, imgs] : aj.items()) {
      const std::string aat = at + ".action." + gen;
      if (!imgs.is_array() || imgs.size() != cells.size())
        rd.fail(aat, "expected one image per cell (" + std::to_string(cells.size()) + ")");
      SignedPermutation p;
      for (const auto& im : imgs) {
        if (!im.is_string()) rd.fail(aat, "images must be cell labels");
        std::string s = im.get<std::string>();
        int sign = 1;
        if (!s.empty() && s[0] == '-') sign = -1, s.erase(0, 1);
        auto it = index.find(s);
        if (it == index.end()) rd.fail(aat, "unknown cell '" + s + "'");
        p.image.push_back(it->second);
        p.sign.push_back(sign);
      }
      action.emplace(gen, std::move(p));
    }
    std::size_t rows = d == 0 ? 0 : ec.cells[d - 1].size();
    IntegerMatrix bd(rows, cells.size());
    if (dj.contains("boundary")) {
      auto m = rd.get<std::vector<std::vector<long>>>(dj, "boundary", at);
      if (m.size() != rows) rd.fail(at + ".boundary", "expected " + std::to_string(rows) + " rows");
      for (std::size_t i = 0; i < rows; ++i) {
        if (m[i].size() != cells.size()) rd.fail(at + ".boundary", "row " + std::to_string(i) + " has the wrong length");
        for (std::size_t j = 0; j < cells.size(); ++j) bd(i, j) = m[i][j];
      }
    } else if (rows > 0 && !cells.empty()) {
      rd.fail(at + ".boundary", "missing");
    }
    ec.cells.push_back(std::move(cells));
    ec.action.push_back(std::move(action));
    ec.boundary.push_back(std::move(bd));
  }
  return ec;
}

std::string complex_to_json(const EquivariantComplex& ec) {
  std::string s = "{\n  \"point_group\": " + json(ec.group).dump() + ",\n";
  if (ec.orbit_euler_characteristic)
    s += "  \"orbit_euler_characteristic\": " + std::to_string(*ec.orbit_euler_characteristic) + ",\n";
  s += "  \"degrees\": [\n";
  for (std::size_t d = 0; d < ec.cells.size(); ++d) {
    s += "    {\n      \"cells\": " + detail::dump_inline(json(ec.cells[d])) + ",\n";
    s += "      \"action\": {";
    bool first = true;
    for (const auto& [gen, p] : ec.action[d]) {
      json imgs = json::array();
      for (std::size_t k = 0; k < p.size(); ++k)
        imgs.push_back((p.sign[k] < 0 ? "-" : "") + ec.cells[d][p.image[k]]);
      s += std::string(first ? "" : ",") + "\n        " + json(gen).dump() + ": " + detail::dump_inline(imgs);
      first = false;
    }
    s += first ? "},\n" : "\n      },\n";
    s += "      \"boundary\": [";
    const auto& b = ec.boundary[d];
    for (std::size_t i = 0; i < b.rows(); ++i) {
      s += i ? ",\n        [" : "\n        [";
      for (std::size_t j = 0; j < b.cols(); ++j) s += (j ? ", " : "") + b(i, j).get_str();
      s += "]";
    }
    s += b.rows() ? "\n      ]\n" : "]\n";
    s += d + 1 < ec.cells.size() ? "    },\n" : "    }\n";
  }
  s += "  ]\n}\n";
  return s;
}

EquivariantComplex load_complex_file(const std::string& path) { return parse_complex_json(read_text_file(path), path); }

std::optional<EquivariantComplex> shipped_complex(const std::string& group) {
  auto text = data_file("complexes/" + group + ".json");
  if (!text) return std::nullopt;
  return parse_complex_json(*text, "complexes/" + group + ".json");
}

}  // namespace qwp
