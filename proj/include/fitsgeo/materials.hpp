#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fitsgeo {

enum class RatioMode { Atom, Mass };

struct Component {
  /// Element symbol ("Fe") or ZZZAAA nuclide code ("26056").
  std::string species;
  double ratio = 0.0;

  friend bool operator==(const Component&, const Component&) = default;
};

struct Material {
  int id = 0;
  std::string name;
  double density = 0.0;  // g/cm3
  std::vector<Component> composition;
  RatioMode ratio_mode = RatioMode::Atom;
  bool gas = false;
  std::string color = "gray";

  friend bool operator==(const Material&, const Material&) = default;
};

bool is_valid_species(std::string_view species);

/// Checked constructor. Throws InvalidId, InvalidDensity, EmptyComposition,
/// BadSpecies, InvalidRatio or UnknownColor.
Material define_material(int id, std::string name, double density,
                         std::vector<Component> composition,
                         RatioMode ratio_mode = RatioMode::Atom, bool gas = false,
                         std::string color = "gray");

/// Lower-cased, trimmed, internal whitespace collapsed to one space.
std::string canonical_material_name(std::string_view name);

class MaterialDb {
 public:
  struct Entry {
    Material material;  // id is a placeholder; callers assign their own
    std::string provenance;
  };

  /// Parses one database file's contents. Throws ParseError or
  /// DuplicateWithinFile; `source` labels error messages.
  void merge_text(std::string_view text, const std::string& source);
  void merge_file(const std::filesystem::path& path);

  const Entry* find(std::string_view name) const;
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  const std::map<std::string, Entry>& entries() const { return entries_; }
  std::vector<std::string> names() const;

  /// Override notices collected while merging.
  const std::vector<std::string>& warnings() const { return warnings_; }

 private:
  std::map<std::string, Entry> entries_;
  std::vector<std::string> warnings_;
};

/// Loads and merges the files in order; later files override earlier ones.
MaterialDb db_load(std::span<const std::filesystem::path> paths);

/// Text of the bundled database file.
std::string_view bundled_material_text();

/// Bundled database plus any files listed in FITSGEO_MATERIAL_PATH
/// (colon-separated).
MaterialDb default_material_db();

/// Copy of a database entry with `id` assigned. Throws NotFound listing the
/// three nearest names.
Material material_from_db(const MaterialDb& db, std::string_view name, int id);

std::string_view to_string(RatioMode m);

}  // namespace fitsgeo
