#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "concept_nmr/canonical.hpp"

namespace cnmr::cli {

enum class Format { Text, Json, Dot };

struct RunConfig {
  std::string subcommand;
  std::vector<std::string> inputs;
  // Empty means standard output.
  std::string output;
  Format format = Format::Text;
  std::optional<std::size_t> max_universe;
  canonical::SearchBounds bounds;
  bool strict = false;
  bool color = false;
};

// Exit codes: 0 success, 1 a false verdict or violation under --strict,
// 2 bad input. Paths of the form "example:NAME" refer to the built-in
// animals files. stdout_is_tty drives CONCEPT_NMR_COLOR=auto.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, bool stdout_is_tty = false);

}  // namespace cnmr::cli
