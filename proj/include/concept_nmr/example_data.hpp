#pragma once

// The animals scenario (four animals, five features, five concepts) shipped
// inside the library, so the CLI can run it without files on disk.

#include <optional>
#include <string_view>
#include <vector>

namespace cnmr::data {

// File names: animals.cxt, model_m.json, model_m_prime_derived.json,
// model_m_prime_literal.json.
std::optional<std::string_view> example_file(std::string_view name);
std::vector<std::string_view> example_files();

}  // namespace cnmr::data
