#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qwp/groupcore.hpp"

namespace qwp {

// Names of the shipped groups in the standard order p1 ... p6m.
const std::vector<std::string>& shipped_group_names();

// Parses a group definition document; DomainError carries field or line diagnostics.
WallpaperGroupData parse_group_json(const std::string& text, const std::string& source = "<input>");
std::string group_to_json(const WallpaperGroupData& data);

WallpaperGroupData load_group_file(const std::string& path);

// Text of a shipped data file, e.g. "groups/pg.json".  When QWP_DATA_DIR is set,
// the file is read from that directory instead of the embedded copy.
std::optional<std::string> data_file(const std::string& relpath);

// Shipped group by name; unknown names throw DomainError listing the known ones.
std::shared_ptr<const WallpaperGroup> shipped_group(const std::string& name);

std::string read_text_file(const std::string& path);

}  // namespace qwp
