#include "fitsgeo/colors.hpp"

#include <algorithm>
#include <numeric>

#include "fitsgeo/error.hpp"

namespace fitsgeo {

namespace {

// RGB triples are the display colors used by the viewer; angel names follow
// the ANGEL color vocabulary. Shared names map to themselves.
constexpr ColorEntry kTable[] = {
    {"white", {1.0, 1.0, 1.0}, "white"},
    {"lightgray", {0.8, 0.8, 0.8}, "lightgray"},
    {"gray", {0.5, 0.5, 0.5}, "gray"},
    {"darkgray", {0.3, 0.3, 0.3}, "darkgray"},
    {"black", {0.0, 0.0, 0.0}, "black"},
    {"darkred", {0.55, 0.0, 0.0}, "darkred"},
    {"red", {1.0, 0.0, 0.0}, "red"},
    {"pink", {1.0, 0.75, 0.8}, "pink"},
    {"pastelpink", {1.0, 0.82, 0.86}, "pastelpink"},
    {"orange", {1.0, 0.6, 0.0}, "orange"},
    {"brown", {0.6, 0.3, 0.1}, "brown"},
    {"darkbrown", {0.4, 0.2, 0.05}, "darkbrown"},
    {"pastelbrown", {0.8, 0.65, 0.5}, "pastelbrown"},
    {"orangeyellow", {1.0, 0.8, 0.0}, "orangeyellow"},
    {"camel", {0.76, 0.6, 0.42}, "camel"},
    {"pastelyellow", {1.0, 1.0, 0.6}, "pastelyellow"},
    {"yellow", {1.0, 1.0, 0.0}, "yellow"},
    {"pastelgreen", {0.7, 1.0, 0.7}, "pastelgreen"},
    {"yellowgreen", {0.6, 0.8, 0.2}, "yellowgreen"},
    {"green", {0.0, 1.0, 0.0}, "green"},
    {"darkgreen", {0.0, 0.4, 0.0}, "darkgreen"},
    {"mossgreen", {0.45, 0.55, 0.25}, "mossgreen"},
    {"bluegreen", {0.0, 0.6, 0.6}, "bluegreen"},
    {"pastelcyan", {0.7, 1.0, 1.0}, "pastelcyan"},
    {"pastelblue", {0.7, 0.8, 1.0}, "pastelblue"},
    {"cyan", {0.0, 1.0, 1.0}, "cyan"},
    {"cyanblue", {0.0, 0.5, 1.0}, "cyanblue"},
    {"blue", {0.0, 0.0, 1.0}, "blue"},
    {"violet", {0.56, 0.0, 1.0}, "violet"},
    {"purple", {0.5, 0.0, 0.5}, "purple"},
    {"magenta", {1.0, 0.0, 1.0}, "magenta"},
    {"winered", {0.45, 0.05, 0.15}, "winered"},
    {"pastelmagenta", {1.0, 0.7, 1.0}, "pastelmagenta"},
    {"pastelpurple", {0.8, 0.6, 0.8}, "pastelpurple"},
    {"pastelviolet", {0.8, 0.7, 1.0}, "pastelviolet"},
    // Spelling aliases.
    {"grey", {0.5, 0.5, 0.5}, "gray"},
    {"lightgrey", {0.8, 0.8, 0.8}, "lightgray"},
    {"darkgrey", {0.3, 0.3, 0.3}, "darkgray"},
};

std::size_t edit_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  std::iota(row.begin(), row.end(), std::size_t{0});
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t up = row[j];
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + cost});
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace

std::span<const ColorEntry> color_table() { return kTable; }

const ColorEntry* find_color(std::string_view name) {
  for (const auto& e : kTable)
    if (e.name == name) return &e;
  return nullptr;
}

bool is_known_color(std::string_view name) { return find_color(name) != nullptr; }

std::string angel_color(std::string_view name) {
  if (const auto* e = find_color(name)) return std::string(e->angel_name);
  std::vector<std::string> pool;
  for (const auto& e : kTable) pool.emplace_back(e.name);
  std::string msg = "unknown color '" + std::string(name) + "'";
  const auto near = nearest_names(name, pool);
  if (!near.empty()) {
    msg += "; did you mean";
    for (std::size_t i = 0; i < near.size(); ++i)
      msg += (i ? ", " : " ") + near[i];
    msg += "?";
  }
  throw Error(ErrorCode::UnknownColor, msg);
}

std::vector<std::string> nearest_names(std::string_view query,
                                       std::span<const std::string> pool,
                                       std::size_t count) {
  std::vector<std::pair<std::size_t, std::string>> scored;
  scored.reserve(pool.size());
  for (const auto& p : pool) scored.emplace_back(edit_distance(query, p), p);
  std::stable_sort(scored.begin(), scored.end(),
                   [](const auto& l, const auto& r) { return l.first < r.first; });
  std::vector<std::string> out;
  for (std::size_t i = 0; i < scored.size() && out.size() < count; ++i)
    out.push_back(scored[i].second);
  return out;
}

}  // namespace fitsgeo
