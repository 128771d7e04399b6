#include "fitsgeo/materials.hpp"

#include <cmath>
#include <algorithm>
#include <array>
#include <cctype>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "fitsgeo/colors.hpp"
#include "fitsgeo/error.hpp"
#include "fitsgeo/number_format.hpp"

namespace fitsgeo {

namespace {

constexpr std::array<std::string_view, 118> kElements = {
    "H",  "He", "Li", "Be", "B",  "C",  "N",  "O",  "F",  "Ne", "Na", "Mg", "Al", "Si", "P",
    "S",  "Cl", "Ar", "K",  "Ca", "Sc", "Ti", "V",  "Cr", "Mn", "Fe", "Co", "Ni", "Cu", "Zn",
    "Ga", "Ge", "As", "Se", "Br", "Kr", "Rb", "Sr", "Y",  "Zr", "Nb", "Mo", "Tc", "Ru", "Rh",
    "Pd", "Ag", "Cd", "In", "Sn", "Sb", "Te", "I",  "Xe", "Cs", "Ba", "La", "Ce", "Pr", "Nd",
    "Pm", "Sm", "Eu", "Gd", "Tb", "Dy", "Ho", "Er", "Tm", "Yb", "Lu", "Hf", "Ta", "W",  "Re",
    "Os", "Ir", "Pt", "Au", "Hg", "Tl", "Pb", "Bi", "Po", "At", "Rn", "Fr", "Ra", "Ac", "Th",
    "Pa", "U",  "Np", "Pu", "Am", "Cm", "Bk", "Cf", "Es", "Fm", "Md", "No", "Lr", "Rf", "Db",
    "Sg", "Bh", "Hs", "Mt", "Ds", "Rg", "Cn", "Nh", "Fl", "Mc", "Lv", "Ts", "Og"};

const char kBundled[] =
#include "bundled_materials.inc"
    ;

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::vector<std::string_view> words(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t start = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

}  // namespace

std::string_view to_string(RatioMode m) { return m == RatioMode::Atom ? "atom" : "mass"; }

bool is_valid_species(std::string_view species) {
  if (species.empty()) return false;
  if (std::isdigit(static_cast<unsigned char>(species.front()))) {
    const auto code = parse_integer(species);
    if (!code || species.front() == '+') return false;
    const long long z = *code / 1000;
    const long long a = *code % 1000;
    // A == 0 selects the natural element.
    return z >= 1 && z <= 118 && (a == 0 || a >= z);
  }
  return std::find(kElements.begin(), kElements.end(), species) != kElements.end();
}

Material define_material(int id, std::string name, double density,
                         std::vector<Component> composition, RatioMode ratio_mode, bool gas,
                         std::string color) {
  if (id < 1) throw Error(ErrorCode::InvalidId, "material id must be >= 1 (0 is reserved for void)");
  if (trim(name).empty()) throw Error(ErrorCode::InvalidId, "material name must be nonempty");
  if (!(std::isfinite(density) && density > 0))
    throw Error(ErrorCode::InvalidDensity, "material '" + name + "': density must be > 0");
  if (composition.empty())
    throw Error(ErrorCode::EmptyComposition, "material '" + name + "' has no components");
  for (const auto& c : composition) {
    if (!is_valid_species(c.species))
      throw Error(ErrorCode::BadSpecies, "material '" + name + "': '" + c.species +
                                             "' is neither an element symbol nor a ZZZAAA code");
    if (!(std::isfinite(c.ratio) && c.ratio > 0))
      throw Error(ErrorCode::InvalidRatio, "material '" + name + "': ratio of " + c.species +
                                               " must be > 0");
  }
  if (!is_known_color(color)) angel_color(color);
  return Material{id, std::move(name), density, std::move(composition), ratio_mode, gas,
                  std::move(color)};
}

std::string canonical_material_name(std::string_view name) {
  std::string out;
  for (auto w : words(name)) {
    if (!out.empty()) out += ' ';
    for (char c : w) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

void MaterialDb::merge_text(std::string_view text, const std::string& source) {
  std::set<std::string> seen;
  std::map<std::string, Entry> parsed;
  std::size_t line_no = 0;
  for (auto raw : split(text, '\n')) {
    ++line_no;
    auto fail = [&](const std::string& reason) -> void {
      throw Error(ErrorCode::ParseError, source + ":" + std::to_string(line_no) + ": " + reason);
    };
    auto line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto fields = split(line, '|');
    if (fields.size() < 4 || fields.size() > 5)
      fail("expected 'name | density | mode | composition [| flags]'");

    const std::string key = canonical_material_name(fields[0]);
    if (key.empty()) fail("empty material name");

    const auto density = parse_number(trim(fields[1]));
    if (!density) fail("bad density '" + std::string(trim(fields[1])) + "'");

    const auto mode_text = canonical_material_name(fields[2]);
    RatioMode mode{};
    if (mode_text == "atom") {
      mode = RatioMode::Atom;
    } else if (mode_text == "mass") {
      mode = RatioMode::Mass;
    } else {
      fail("mode must be 'atom' or 'mass', got '" + mode_text + "'");
    }

    std::vector<Component> comp;
    for (auto item : split(fields[3], ',')) {
      const auto toks = words(item);
      if (toks.size() != 2) fail("component '" + std::string(trim(item)) + "' is not 'species ratio'");
      const auto ratio = parse_number(toks[1]);
      if (!ratio) fail("bad ratio '" + std::string(toks[1]) + "' for " + std::string(toks[0]));
      comp.push_back({std::string(toks[0]), *ratio});
    }

    bool gas = false;
    std::string color = "gray";
    if (fields.size() == 5) {
      for (auto flag : split(fields[4], ',')) {
        flag = trim(flag);
        if (flag.empty()) continue;
        if (flag == "gas") {
          gas = true;
        } else if (flag.starts_with("color=")) {
          color = std::string(trim(flag.substr(6)));
        } else {
          fail("unknown flag '" + std::string(flag) + "'");
        }
      }
    }

    Material m;
    try {
      m = define_material(1, key, *density, std::move(comp), mode, gas, color);
    } catch (const Error& e) {
      fail(e.what());
    }
    if (!seen.insert(key).second)
      throw Error(ErrorCode::DuplicateWithinFile,
                  source + ":" + std::to_string(line_no) + ": duplicate material '" + key + "'");
    parsed[key] = Entry{std::move(m), source + ":" + std::to_string(line_no)};
  }

  for (auto& [key, entry] : parsed) {
    if (const auto it = entries_.find(key); it != entries_.end())
      warnings_.push_back("material '" + key + "' from " + entry.provenance + " overrides " +
                          it->second.provenance);
    entries_[key] = std::move(entry);
  }
}

void MaterialDb::merge_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open material database '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  merge_text(ss.str(), path.string());
}

const MaterialDb::Entry* MaterialDb::find(std::string_view name) const {
  const auto it = entries_.find(canonical_material_name(name));
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> MaterialDb::names() const {
  std::vector<std::string> out;
  out.reserve(entries_.size());
  for (const auto& [k, _] : entries_) out.push_back(k);
  return out;
}

MaterialDb db_load(std::span<const std::filesystem::path> paths) {
  MaterialDb db;
  for (const auto& p : paths) db.merge_file(p);
  return db;
}

std::string_view bundled_material_text() { return kBundled; }

MaterialDb default_material_db() {
  MaterialDb db;
  db.merge_text(bundled_material_text(), "<bundled>");
  if (const char* extra = std::getenv("FITSGEO_MATERIAL_PATH")) {
    for (auto p : split(extra, ':'))
      if (!trim(p).empty()) db.merge_file(std::filesystem::path(std::string(trim(p))));
  }
  return db;
}

Material material_from_db(const MaterialDb& db, std::string_view name, int id) {
  if (id < 1) throw Error(ErrorCode::InvalidId, "material id must be >= 1");
  const auto* entry = db.find(name);
  if (!entry) {
    const auto pool = db.names();
    const auto near = nearest_names(canonical_material_name(name), pool);
    std::string msg = "material '" + std::string(name) + "' not found";
    if (!near.empty()) {
      msg += "; nearest:";
      for (std::size_t i = 0; i < near.size(); ++i) msg += (i ? ", " : " ") + near[i];
    }
    throw Error(ErrorCode::NotFound, msg);
  }
  Material m = entry->material;
  m.id = id;
  return m;
}

}  // namespace fitsgeo
