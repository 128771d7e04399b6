#pragma once

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fitsgeo {

/// One entry of the bundled palette: a display RGB triple (0..1) and the
/// color name ANGEL understands.
struct ColorEntry {
  std::string_view name;
  std::array<double, 3> rgb;
  std::string_view angel_name;
};

std::span<const ColorEntry> color_table();

/// Default color assigned to surfaces that do not name one.
inline constexpr std::string_view kDefaultColor = "gray";

const ColorEntry* find_color(std::string_view name);
bool is_known_color(std::string_view name);

/// ANGEL identifier for a palette token; throws UnknownColor with
/// suggestions otherwise.
std::string angel_color(std::string_view name);

/// Up to `count` candidates from `pool` closest to `query` by edit distance.
std::vector<std::string> nearest_names(std::string_view query,
                                       std::span<const std::string> pool,
                                       std::size_t count = 3);

}  // namespace fitsgeo
