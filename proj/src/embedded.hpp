#pragma once

#include <cstddef>

namespace qwp::detail {

struct EmbeddedFile {
  const char* path;  // relative to data/, e.g. "groups/pg.json"
  const char* text;
};

// Generated at build time from the data/ directory.
extern const EmbeddedFile kEmbeddedFiles[];
extern const std::size_t kEmbeddedFileCount;

}  // namespace qwp::detail
