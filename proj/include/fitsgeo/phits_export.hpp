#pragma once

#include <optional>
#include <span>
#include <string>

#include "fitsgeo/model.hpp"

namespace fitsgeo {

inline constexpr std::string_view kToolName = "fitsgeo";
inline constexpr std::string_view kToolVersion = "0.1.0";

struct ExportFlags {
  bool include_material = true;
  bool include_surface = true;
  bool include_cell = true;
  std::optional<std::string> header_comment;
};

/// Region lines longer than this wrap onto continuation lines.
inline constexpr std::size_t kMaxRegionWidth = 200;
/// Continuation lines start with this many blanks.
inline constexpr std::size_t kContinuationIndent = 5;

/// `[Surface]` section: `<id> <MNEMONIC> <params...> $ <name>` per surface.
std::string export_surface_section(std::span<const Surface> surfaces);

/// `[Material]` section: `MAT[<id>] $ <name> <density> g/cc`, one
/// `  <species> <ratio>` line per component (mass fractions negative), and
/// `  GAS=1` for gases.
std::string export_material_section(std::span<const Material> materials);

/// `[Cell]` section: `<id> <matnum> [<-density>] <region> [VOL=<v>] $ <name>`.
std::string export_cell_section(const Model& m);

/// Header comment block followed by the selected sections in
/// Material, Surface, Cell order. Throws NothingSelected.
std::string export_input(const Model& m, const ExportFlags& flags = {});

/// Density written on a cell card: the override, else the material's.
std::optional<double> effective_density(const Model& m, const Cell& c);

}  // namespace fitsgeo
