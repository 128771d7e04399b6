#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fitsgeo/colors.hpp"
#include "fitsgeo/geometry.hpp"
#include "fitsgeo/model.hpp"

namespace fitsgeo {

inline constexpr int kSceneVersion = 1;

struct SceneLabel {
  std::string text;
  Vec3 anchor;
};

struct SceneObject {
  int surface_id = 0;
  std::string name;
  std::string kind;  // PHITS mnemonic
  std::string color;
  std::string angel_color;
  std::array<double, 3> rgb{};
  double opacity = 1.0;
  TriMesh mesh;
  std::optional<SceneLabel> label;
};

struct SceneDoc {
  int version = kSceneVersion;
  std::string title;
  Aabb bbox;
  std::vector<SceneObject> objects;  // sorted by surface_id
};

struct SceneOptions {
  int resolution = 24;
  bool labels = false;
  std::optional<double> opacity_override;
  TessellationOptions tessellation;
};

/// One object per non-hidden surface. Throws EmptyScene when nothing is
/// drawable, InvalidOpacity for an out-of-range override, and propagates
/// tessellation errors.
SceneDoc build_scene(const Model& m, const SceneOptions& opts = {});

/// Canonical JSON (scene schema v1): objects by surface_id, numbers via
/// format_number, fixed key order, no insignificant whitespace beyond one
/// object per line.
std::string write_scene(const SceneDoc& s);

}  // namespace fitsgeo
