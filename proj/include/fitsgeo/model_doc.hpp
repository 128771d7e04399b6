#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fitsgeo/materials.hpp"
#include "fitsgeo/model.hpp"

namespace fitsgeo {

/// A model read from a JSON model document together with the validation
/// diagnostics (validate_model) for it.
struct LoadedModel {
  Model model;
  std::vector<Diagnostic> diagnostics;
};

/// Parses a model document. Schema problems throw SchemaError whose message
/// starts with the JSON pointer of the offending value; region problems
/// throw the region error code (SyntaxError, UnknownSurfaceName, ...) with
/// the pointer prefixed; unknown database names throw NotFound.
LoadedModel parse_model_doc(std::string_view json_text, const MaterialDb& db);

/// Reads and parses a model document file (Io on read failure).
LoadedModel load_model_doc(const std::filesystem::path& path, const MaterialDb& db);

/// Serializes a model as a self-contained document (materials inline).
/// Output is deterministic and parses back to an equivalent model.
std::string write_model_doc(const Model& m);

/// Document keys for each surface mnemonic, in PHITS parameter order;
/// vector-valued keys take three numbers.
struct DocParam {
  std::string_view key;
  int width;  // 1 or 3
};
std::vector<DocParam> doc_params(std::string_view mnemonic);

}  // namespace fitsgeo
