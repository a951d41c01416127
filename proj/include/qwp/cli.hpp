#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qwp::cli {

// Runs one command line (without the program name).  Exit codes: 0 success,
// 1 domain error (bad group, file or arguments), 2 internal invariant violation.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Hex SHA-256 of a byte string.
std::string sha256_hex(const std::string& data);

// Saved with --record: everything needed to tell two runs apart or reproduce one.
struct RunRecord {
  std::string version;
  std::string subcommand;
  std::vector<std::string> args;
  std::string input_digest;  // "sha256:<hex>" over the arguments and every input file
  std::string payload;       // machine-readable result, as emitted by --json
  double duration_seconds = 0;
};

std::string run_record_to_json(const RunRecord& r);
RunRecord parse_run_record(const std::string& text);

}  // namespace qwp::cli
