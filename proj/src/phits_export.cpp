#include "fitsgeo/phits_export.hpp"

#include <sstream>

#include "fitsgeo/error.hpp"
#include "fitsgeo/number_format.hpp"

namespace fitsgeo {

namespace {

// Splits `text` at spaces into chunks no longer than `width` (a single
// longer token stays whole).
std::vector<std::string> wrap(const std::string& text, std::size_t width) {
  std::vector<std::string> lines;
  std::string current;
  std::istringstream in(text);
  std::string word;
  while (in >> word) {
    if (!current.empty() && current.size() + 1 + word.size() > width) {
      lines.push_back(std::move(current));
      current.clear();
    }
    if (!current.empty()) current += ' ';
    current += word;
  }
  if (!current.empty()) lines.push_back(std::move(current));
  return lines;
}

std::string one_line(const std::string& s) {
  std::string out = s;
  for (auto& c : out)
    if (c == '\n' || c == '\r') c = ' ';
  return out;
}

}  // namespace

std::optional<double> effective_density(const Model& m, const Cell& c) {
  if (c.material.kind != CellMaterial::Kind::Ref) return std::nullopt;
  if (c.density_override) return c.density_override;
  if (const auto* mat = m.find_material(c.material.material_id)) return mat->density;
  return std::nullopt;
}

std::string export_surface_section(std::span<const Surface> surfaces) {
  std::string out = "[Surface]\n";
  for (const auto& s : surfaces) {
    out += std::to_string(s.id);
    out += ' ';
    out += mnemonic(s.kind);
    for (double p : parameters(s.kind)) {
      out += ' ';
      out += format_number(p);
    }
    out += " $ " + one_line(s.name) + "\n";
  }
  return out;
}

std::string export_material_section(std::span<const Material> materials) {
  std::string out = "[Material]\n";
  for (const auto& m : materials) {
    out += "MAT[" + std::to_string(m.id) + "] $ " + one_line(m.name) + " " + format_number(m.density) +
           " g/cc\n";
    for (const auto& c : m.composition) {
      const double r = m.ratio_mode == RatioMode::Mass ? -c.ratio : c.ratio;
      out += "  " + c.species + " " + format_number(r) + "\n";
    }
    if (m.gas) out += "  GAS=1\n";
  }
  return out;
}

std::string export_cell_section(const Model& m) {
  std::string out = "[Cell]\n";
  for (const auto& c : m.cells) {
    std::string head = std::to_string(c.id) + " ";
    switch (c.material.kind) {
      case CellMaterial::Kind::Void: head += "0"; break;
      case CellMaterial::Kind::Outer: head += "-1"; break;
      case CellMaterial::Kind::Ref: {
        head += std::to_string(c.material.material_id);
        const auto d = effective_density(m, c);
        if (!d) throw Error(ErrorCode::NotFound, "cell " + std::to_string(c.id) + " uses undefined material " +
                                                     std::to_string(c.material.material_id));
        head += " " + format_number(-*d);
        break;
      }
    }
    std::string body = region_to_text(c.region);
    if (c.volume_hint) body += " VOL=" + format_number(*c.volume_hint);
    const auto chunks = body.size() > kMaxRegionWidth ? wrap(body, kMaxRegionWidth)
                                                      : std::vector<std::string>{body};
    out += head + " " + chunks.front();
    for (std::size_t i = 1; i < chunks.size(); ++i)
      out += "\n" + std::string(kContinuationIndent, ' ') + chunks[i];
    out += " $ " + one_line(c.name) + "\n";
  }
  return out;
}

std::string export_input(const Model& m, const ExportFlags& flags) {
  if (!flags.include_material && !flags.include_surface && !flags.include_cell)
    throw Error(ErrorCode::NothingSelected, "no sections selected for export");

  std::string sections;
  auto add = [&](bool on, const char* name) {
    if (!on) return;
    if (!sections.empty()) sections += ',';
    sections += name;
  };
  add(flags.include_material, "material");
  add(flags.include_surface, "surface");
  add(flags.include_cell, "cell");

  std::string out;
  out += "$ generated by " + std::string(kToolName) + " " + std::string(kToolVersion) + "\n";
  out += "$ title: " + one_line(m.title) + "\n";
  out += "$ sections: " + sections + "\n";
  if (flags.header_comment) {
    std::istringstream in(*flags.header_comment);
    std::string line;
    while (std::getline(in, line)) out += "$ " + one_line(line) + "\n";
  }
  if (flags.include_material) out += "\n" + export_material_section(m.materials);
  if (flags.include_surface) out += "\n" + export_surface_section(m.surfaces);
  if (flags.include_cell) out += "\n" + export_cell_section(m);
  return out;
}

}  // namespace fitsgeo
