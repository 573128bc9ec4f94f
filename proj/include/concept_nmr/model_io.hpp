#pragma once

// Preference-model files (JSON).
//
//   {
//     "variables": ["p", ...],
//     "contexts": [
//       {"name": "P", "objects": [...], "attributes": [...], "incidence": ["X.X", ...]},
//       {"name": "Q", "cxt": "relative/path.cxt"}
//     ],
//     "valuations": [
//       {"name": "V", "context": "P", "assign": {"p": {"extent": [...], "intent": [...]}}}
//     ],
//     "states": [
//       {"name": "s1", "label": [{"context": "P", "valuation": "V", "point": "a1"}]}
//     ],
//     "pref": [["s2", "s1"], ...],
//     "metadata": {...}
//   }
//
// Intents are optional on input; they are recomputed from the extents and,
// when present, must agree. Extents must be Galois-stable.

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"

#include "concept_nmr/nmr.hpp"

namespace cnmr::io {

using Json = nlohmann::ordered_json;

struct ModelDocument {
  nmr::PreferenceModel model;
  Json metadata;
};

// CXT references are resolved against base_dir.
ModelDocument parse_model(std::string_view text, const std::filesystem::path& base_dir = {});
ModelDocument load_model(const std::filesystem::path& path);

Json model_to_json(const nmr::PreferenceModel& model, const Json& metadata = Json());
// Two-space indented JSON with a trailing newline.
std::string emit_model(const nmr::PreferenceModel& model, const Json& metadata = Json());

}  // namespace cnmr::io
