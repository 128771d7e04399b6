#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fitsgeo/geometry.hpp"
#include "fitsgeo/materials.hpp"
#include "fitsgeo/region.hpp"

namespace fitsgeo {

/// What fills a cell: nothing (void, PHITS material 0), the outer
/// kill region (-1), or a defined material.
struct CellMaterial {
  enum class Kind { Void, Outer, Ref };
  Kind kind = Kind::Void;
  int material_id = 0;

  static CellMaterial void_() { return {Kind::Void, 0}; }
  static CellMaterial outer() { return {Kind::Outer, 0}; }
  static CellMaterial ref(int id) { return {Kind::Ref, id}; }

  friend bool operator==(const CellMaterial&, const CellMaterial&) = default;
};

struct Cell {
  int id = 0;
  std::string name;
  RegionExpr region = SenseRef{1, Sign::Negative};
  CellMaterial material;
  std::optional<double> density_override;  // g/cm3
  std::optional<double> volume_hint;       // cm3
};

struct Model {
  std::string title;
  std::vector<Surface> surfaces;
  std::vector<Material> materials;
  std::vector<Cell> cells;

  const Surface* find_surface(int id) const;
  const Material* find_material(int id) const;
  const Cell* find_cell(int id) const;
  /// Resolver over this model's surface names, for parse_region.
  SurfaceResolver surface_resolver() const;
};

enum class Severity { Error, Warning };

/// One validation or import finding. `code` is a stable identifier such as
/// "DuplicateCellId"; line/column are 1-based, 0 when not applicable.
struct Diagnostic {
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  std::string location;
  int line = 0;
  int column_start = 0;
  int column_end = 0;
};

bool has_errors(const std::vector<Diagnostic>& ds);
std::string format_diagnostic(const Diagnostic& d);

/// Structural checks (duplicate ids, dangling references, Outer rules) plus
/// unused-surface and empty-cell warnings. Never throws.
std::vector<Diagnostic> validate_model(const Model& m);

/// Membership test with on-surface points counted on the positive side.
/// Throws UnknownCell.
bool cell_contains(const Model& m, int cell_id, const Vec3& p);

struct VolumeEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  std::int64_t hits = 0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
  Aabb box;
};

struct VolumeOptions {
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 0;
  /// Sampling box; defaults to the union of the referenced surfaces' boxes.
  std::optional<Aabb> box;
  /// Worker threads; 0 = hardware concurrency. Results do not depend on it.
  unsigned threads = 0;
};

/// Rejection-sampling volume of a cell. Throws UnknownCell,
/// UnboundedRegionNeedsBox or PreconditionFailed (samples < 1).
VolumeEstimate mc_cell_volume(const Model& m, int cell_id, const VolumeOptions& opts);

/// Sample `index` of the stream `seed` as a point in the unit cube.
/// Counter-based: the value depends only on (seed, index).
Vec3 unit_cube_sample(std::uint64_t seed, std::uint64_t index);

/// Union of the boxes of the bounded surfaces, or nullopt when there are none.
std::optional<Aabb> model_bounds(const Model& m);

}  // namespace fitsgeo
