#include "concept_nmr/example_data.hpp"

#include "embedded_example.hpp"

namespace cnmr::data {

std::optional<std::string_view> example_file(std::string_view name) {
  for (const auto& f : embedded::files)
    if (f.name == name) return f.text;
  return std::nullopt;
}

std::vector<std::string_view> example_files() {
  std::vector<std::string_view> out;
  for (const auto& f : embedded::files) out.push_back(f.name);
  return out;
}

}  // namespace cnmr::data
