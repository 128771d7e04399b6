#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "fitsgeo/error.hpp"
#include "fitsgeo/model.hpp"

namespace fitsgeo {

/// 1-based location of a card in the input text.
struct SourceSpan {
  int line = 1;
  int column_start = 1;
  int column_end = 1;
};

struct ImportResult {
  Model model;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !has_errors(diagnostics); }
};

/// Reads the `[Material]`, `[Surface]` and `[Cell]` sections of a PHITS
/// input. Never throws: malformed cards become error diagnostics with their
/// span and are skipped; other sections are skipped with a warning.
/// Tolerates `$` comments, `#` comment lines, blank lines, continuation
/// lines (leading blanks), `+`-signed senses and Fortran `D` exponents.
ImportResult parse_input(std::string_view text);

class ImportError : public Error {
 public:
  ImportError(const std::string& what, SourceSpan span)
      : Error(ErrorCode::ParseError, what), span_(span) {}
  const SourceSpan& span() const noexcept { return span_; }

 private:
  SourceSpan span_;
};

/// parse_input that throws ImportError on the first error diagnostic.
Model parse_input_strict(std::string_view text);

/// Semantic model comparison used for round-trip checks: ids, names, surface
/// kinds and parameters (exact), material compositions (ratios to 1e-12
/// relative), densities, cell materials, effective cell densities and
/// canonical regions. Display attributes (colors, opacity) are ignored.
/// On mismatch, `why` receives a description.
bool models_equivalent(const Model& a, const Model& b, std::string* why = nullptr);

}  // namespace fitsgeo
