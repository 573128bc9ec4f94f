#pragma once

// Burmeister CXT format:
//
//   B
//   <blank>
//   <object count>
//   <attribute count>
//   <blank>
//   <object names, one per line>
//   <attribute names, one per line>
//   <one row per object of '.' / 'X'>

#include <filesystem>
#include <string>
#include <string_view>

#include "concept_nmr/fca.hpp"

namespace cnmr::fca {

// Throws ParseError carrying the 1-based line number.
FormalContext parse_cxt(std::string_view text);
FormalContext read_cxt_file(const std::filesystem::path& path);
std::string write_cxt(const FormalContext& ctx);

}  // namespace cnmr::fca
