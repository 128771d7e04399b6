#pragma once

#include <filesystem>
#include <iosfwd>

#include "fitsgeo/materials.hpp"
#include "fitsgeo/model_doc.hpp"

namespace fitsgeo {

/// Exit codes of the command-line tool.
enum ExitCode : int { kExitOk = 0, kExitValidation = 1, kExitFailure = 2 };

/// Loads either a JSON model document or a PHITS deck (sniffed from the
/// first non-blank character). Diagnostics include import findings and
/// validate_model results.
LoadedModel load_any_model(const std::filesystem::path& path, const MaterialDb& db);

/// Runs the `fitsgeo` command line. Output goes to `out`, diagnostics and
/// errors to `err`.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace fitsgeo
