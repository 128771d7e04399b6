#include "fitsgeo/phits_import.hpp"

#include <algorithm>
#include <cctype>
#include <climits>
#include <cmath>
#include <map>
#include <sstream>

#include "fitsgeo/number_format.hpp"

namespace fitsgeo {

namespace {

enum class Section { None, Material, Surface, Cell, Unknown };

struct Card {
  Section section;
  std::string text;
  std::string comment;
  SourceSpan span;
  std::vector<std::pair<int, int>> pos;  // (line, column) of each char of text
};

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::vector<std::string> tokens(std::string_view s) {
  // "KEY = value" is folded into "KEY=value" first.
  std::string folded;
  folded.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '=') {
      while (!folded.empty() && is_blank(folded.back())) folded.pop_back();
      folded += '=';
      while (i + 1 < s.size() && is_blank(s[i + 1])) ++i;
    } else {
      folded += s[i];
    }
  }
  std::vector<std::string> out;
  std::string cur;
  for (char c : folded) {
    if (is_blank(c)) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

std::optional<int> parse_id(std::string_view tok) {
  const auto v = parse_integer(tok);
  if (!v || *v < 1 || *v > INT_MAX) return std::nullopt;
  return static_cast<int>(*v);
}

// "MAT[ 12 ] rest" or "M12 rest": returns the id and the text after the header.
std::optional<std::pair<long long, std::string_view>> material_header(std::string_view code) {
  const std::string_view t = trim(code);
  if (t.size() >= 3 && (t[0] == 'M' || t[0] == 'm') && (t[1] == 'A' || t[1] == 'a') &&
      (t[2] == 'T' || t[2] == 't')) {
    std::size_t i = 3;
    while (i < t.size() && is_blank(t[i])) ++i;
    if (i >= t.size() || t[i] != '[') return std::nullopt;
    const auto close = t.find(']', i);
    if (close == std::string_view::npos) return std::pair<long long, std::string_view>{-1, t};
    const auto id = parse_integer(trim(t.substr(i + 1, close - i - 1)));
    return std::pair<long long, std::string_view>{id ? *id : -1, t.substr(close + 1)};
  }
  if (t.size() >= 2 && (t[0] == 'M' || t[0] == 'm') && std::isdigit(static_cast<unsigned char>(t[1]))) {
    std::size_t i = 1;
    while (i < t.size() && std::isdigit(static_cast<unsigned char>(t[i]))) ++i;
    if (i < t.size() && !is_blank(t[i])) return std::nullopt;
    const auto id = parse_integer(t.substr(1, i - 1));
    return std::pair<long long, std::string_view>{id ? *id : -1, t.substr(i)};
  }
  return std::nullopt;
}

class Importer {
 public:
  ImportResult run(std::string_view text) {
    split_cards(text);
    for (const auto& c : cards_)
      if (c.section == Section::Material) material_card(c);
    for (const auto& c : cards_)
      if (c.section == Section::Surface) surface_card(c);
    for (const auto& c : cards_)
      if (c.section == Section::Cell) cell_card(c);
    resolve_densities();
    return {std::move(model_), std::move(diags_)};
  }

 private:
  void report(Severity sev, std::string code, std::string msg, const SourceSpan& span) {
    Diagnostic d;
    d.severity = sev;
    d.code = std::move(code);
    d.message = std::move(msg);
    d.line = span.line;
    d.column_start = span.column_start;
    d.column_end = span.column_end;
    diags_.push_back(std::move(d));
  }
  void error(std::string code, std::string msg, const SourceSpan& span) {
    report(Severity::Error, std::move(code), std::move(msg), span);
  }
  void warn(std::string code, std::string msg, const SourceSpan& span) {
    report(Severity::Warning, std::move(code), std::move(msg), span);
  }

  void split_cards(std::string_view text) {
    Section section = Section::None;
    std::optional<Card> pending;
    auto flush = [&] {
      if (pending) cards_.push_back(std::move(*pending));
      pending.reset();
    };

    int line_no = 0;
    std::size_t start = 0;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) end = text.size();
      std::string_view line = text.substr(start, end - start);
      start = end + 1;
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

      if (!line.empty() && line.front() == '#') continue;
      std::string_view code = line;
      std::string_view comment;
      if (const auto dollar = line.find('$'); dollar != std::string_view::npos) {
        code = line.substr(0, dollar);
        comment = trim(line.substr(dollar + 1));
      }
      const std::string_view body = trim(code);
      const int col0 = static_cast<int>(code.size() - trim_front_len(code)) + 1;
      const SourceSpan span{line_no, col0, col0 + std::max<int>(0, static_cast<int>(body.size()) - 1)};

      if (!body.empty() && body.front() == '[') {
        flush();
        const auto close = body.find(']');
        if (close == std::string_view::npos) {
          error("MalformedSectionHeader", "section header is missing ']'", span);
          section = Section::Unknown;
          continue;
        }
        std::string name;
        for (char c : body.substr(1, close - 1))
          if (!is_blank(c)) name += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        if (name == "material") section = Section::Material;
        else if (name == "surface") section = Section::Surface;
        else if (name == "cell") section = Section::Cell;
        else {
          section = Section::Unknown;
          warn("UnknownSectionSkipped", "section [" + std::string(body.substr(1, close - 1)) + "] is not imported", span);
        }
        if (section != Section::Unknown && !trim(body.substr(close + 1)).empty()) {
          if (lower(trim(body.substr(close + 1))) == "off") {
            warn("SectionDisabled", "section is switched off and skipped", span);
            section = Section::Unknown;
          } else {
            warn("TrailingText", "text after section header ignored", span);
          }
        }
        continue;
      }

      if (section == Section::None) {
        if (body.empty() && lower(comment).starts_with("title:"))
          model_.title = std::string(trim(comment.substr(6)));
        else if (!body.empty())
          warn("ContentOutsideSection", "text before the first section ignored", span);
        continue;
      }
      if (section == Section::Unknown) continue;
      if (body.empty()) continue;

      const bool indented = is_blank(code.front());
      bool continues = false;
      if (section == Section::Material) continues = !material_header(body).has_value();
      else continues = indented;

      if (continues) {
        if (!pending) {
          error("OrphanContinuation", "continuation line without a preceding card", span);
          continue;
        }
        pending->text += ' ';
        pending->pos.emplace_back(line_no, col0 > 1 ? col0 - 1 : 1);
        pending->text += body;
        for (std::size_t i = 0; i < body.size(); ++i) pending->pos.emplace_back(line_no, col0 + static_cast<int>(i));
        if (!comment.empty()) pending->comment = std::string(comment);
        continue;
      }
      flush();
      pending = Card{section, std::string(body), std::string(comment), span, {}};
      for (std::size_t i = 0; i < body.size(); ++i) pending->pos.emplace_back(line_no, col0 + static_cast<int>(i));
    }
    flush();
  }

  // Span of the index-th blank-separated token of the card; the whole card
  // when out of range.
  static SourceSpan token_span(const Card& card, std::size_t index) {
    std::size_t i = 0, n = 0;
    const std::string& t = card.text;
    while (i < t.size()) {
      while (i < t.size() && is_blank(t[i])) ++i;
      if (i >= t.size()) break;
      std::size_t j = i;
      while (j < t.size() && !is_blank(t[j])) ++j;
      if (n++ == index && j <= card.pos.size()) {
        const auto [line, c0] = card.pos[i];
        const auto [line_end, c1] = card.pos[j - 1];
        return {line, c0, line_end == line ? c1 : c0};
      }
      i = j;
    }
    return card.span;
  }

  static std::size_t trim_front_len(std::string_view s) {
    std::size_t n = 0;
    while (n < s.size() && is_blank(s[n])) ++n;
    return s.size() - n;
  }

  void material_card(const Card& card) {
    const auto header = material_header(card.text);
    if (!header || header->first < 1 || header->first > INT_MAX) {
      error("MalformedMaterial", "expected MAT[<id>] with a positive id", card.span);
      return;
    }
    Material m;
    m.id = static_cast<int>(header->first);
    m.name = "mat" + std::to_string(m.id);

    // "$ <name> <density> g/cc"
    const auto ctoks = tokens(card.comment);
    if (ctoks.size() >= 3 && lower(ctoks.back()) == "g/cc") {
      if (const auto d = parse_number(ctoks[ctoks.size() - 2])) {
        m.density = *d;
        std::string name;
        for (std::size_t i = 0; i + 2 < ctoks.size(); ++i) name += (i ? " " : "") + ctoks[i];
        m.name = name;
      }
    } else if (!ctoks.empty()) {
      m.name = std::string(trim(card.comment));
    }

    const auto toks = tokens(header->second);
    int positive = 0, negative = 0;
    for (std::size_t i = 0; i < toks.size(); ++i) {
      const auto& t = toks[i];
      if (const auto eq = t.find('='); eq != std::string::npos) {
        const std::string key = lower(t.substr(0, eq));
        if (key == "gas") {
          const auto v = parse_number(t.substr(eq + 1));
          if (!v) {
            error("MalformedMaterial", "bad GAS value '" + t + "'", card.span);
            return;
          }
          m.gas = *v != 0.0;
        } else {
          warn("UnsupportedMaterialParameter", "material parameter '" + t + "' ignored", card.span);
        }
        continue;
      }
      if (i + 1 >= toks.size()) {
        error("MalformedMaterial", "species '" + t + "' has no ratio", card.span);
        return;
      }
      const auto ratio = parse_number(toks[i + 1]);
      if (!is_valid_species(t)) {
        error("BadSpecies", "'" + t + "' is neither an element symbol nor a ZZZAAA code", card.span);
        return;
      }
      if (!ratio || *ratio == 0.0) {
        error("MalformedMaterial", "bad ratio '" + toks[i + 1] + "' for " + t, card.span);
        return;
      }
      (*ratio < 0 ? negative : positive)++;
      m.composition.push_back({t, std::abs(*ratio)});
      ++i;
    }
    if (m.composition.empty()) {
      error("EmptyComposition", "material " + std::to_string(m.id) + " has no components", card.span);
      return;
    }
    if (positive && negative) {
      error("MixedRatioModes", "material " + std::to_string(m.id) + " mixes atom (+) and mass (-) ratios", card.span);
      return;
    }
    m.ratio_mode = negative ? RatioMode::Mass : RatioMode::Atom;
    if (!(m.density > 0)) {
      m.density = 0.0;
      unknown_density_.emplace(m.id, card.span);
    }
    model_.materials.push_back(std::move(m));
  }

  void surface_card(const Card& card) {
    const auto toks = tokens(card.text);
    const auto id = toks.empty() ? std::nullopt : parse_id(toks[0]);
    if (!id) {
      error("MalformedSurface", "surface card must start with a positive id", token_span(card, 0));
      return;
    }
    if (toks.size() < 2) {
      error("MalformedSurface", "surface " + toks[0] + " has no mnemonic", card.span);
      return;
    }
    if (parse_integer(toks[1])) {
      error("UnsupportedTransform", "transformed surfaces are not supported", token_span(card, 1));
      return;
    }
    const int arity = parameter_count(toks[1]);
    if (arity < 0) {
      error("UnknownMnemonic", "unknown surface mnemonic '" + toks[1] + "'", token_span(card, 1));
      return;
    }
    std::vector<double> params;
    for (std::size_t i = 2; i < toks.size(); ++i) {
      const auto v = parse_number(toks[i]);
      if (!v) {
        error("MalformedSurface", "bad number '" + toks[i] + "'", token_span(card, i));
        return;
      }
      params.push_back(*v);
    }
    if (static_cast<int>(params.size()) != arity) {
      error("ParameterCount", "expected " + std::to_string(arity) + " parameters for " + toks[1] +
                                  ", got " + std::to_string(params.size()),
            card.span);
      return;
    }
    Surface s;
    s.id = *id;
    s.name = card.comment.empty() ? "s" + std::to_string(*id) : card.comment;
    s.color = "gray";
    try {
      s.kind = kind_from_parameters(toks[1], params);
      validate_kind(s.kind);
    } catch (const Error& e) {
      error("DegenerateGeometry", e.what(), card.span);
      return;
    }
    model_.surfaces.push_back(std::move(s));
  }

  void cell_card(const Card& card) {
    const auto toks = tokens(card.text);
    const auto id = toks.empty() ? std::nullopt : parse_id(toks[0]);
    if (!id) {
      error("MalformedCell", "cell card must start with a positive id", token_span(card, 0));
      return;
    }
    if (toks.size() < 3) {
      error("MalformedCell", "cell " + toks[0] + " needs a material and a region", card.span);
      return;
    }
    if (lower(toks[1]) == "like") {
      error("UnsupportedCell", "LIKE-BUT cells are not supported", card.span);
      return;
    }
    const auto matnum = parse_integer(toks[1]);
    if (!matnum || *matnum < -1 || *matnum > INT_MAX) {
      error("MalformedCell", "bad material number '" + toks[1] + "'", token_span(card, 1));
      return;
    }
    Cell c;
    c.id = *id;
    c.name = card.comment.empty() ? "cell" + std::to_string(*id) : card.comment;
    std::size_t next = 2;
    std::optional<double> density;
    if (*matnum == 0) {
      c.material = CellMaterial::void_();
    } else if (*matnum == -1) {
      c.material = CellMaterial::outer();
    } else {
      c.material = CellMaterial::ref(static_cast<int>(*matnum));
      density = parse_number(toks[2]);
      if (!density) {
        error("MalformedCell", "bad density '" + toks[2] + "'", token_span(card, 2));
        return;
      }
      if (*density >= 0) {
        error("AtomDensityUnsupported", "only mass densities (negative values, g/cm3) are supported", token_span(card, 2));
        return;
      }
      next = 3;
    }

    std::string region_text;
    for (std::size_t i = next; i < toks.size(); ++i) {
      const auto& t = toks[i];
      if (const auto eq = t.find('='); eq != std::string::npos) {
        if (lower(t.substr(0, eq)) == "vol") {
          const auto v = parse_number(t.substr(eq + 1));
          if (!v || !(*v > 0)) {
            error("MalformedCell", "bad VOL value '" + t + "'", card.span);
            return;
          }
          c.volume_hint = *v;
        } else {
          warn("UnsupportedCellParameter", "cell parameter '" + t + "' ignored", card.span);
        }
        continue;
      }
      if (!region_text.empty()) region_text += ' ';
      region_text += t;
    }
    try {
      c.region = parse_region(region_text);
    } catch (const Error& e) {
      error(std::string(to_string(e.code())), e.what(), card.span);
      return;
    }
    if (density) cell_densities_.emplace_back(model_.cells.size(), -*density);
    model_.cells.push_back(std::move(c));
  }

  void resolve_densities() {
    for (const auto& [index, density] : cell_densities_) {
      Cell& c = model_.cells[index];
      Material* mat = nullptr;
      for (auto& m : model_.materials)
        if (m.id == c.material.material_id) mat = &m;
      if (!mat) continue;  // dangling; validate_model reports it
      if (!(mat->density > 0)) mat->density = density;
      if (density != mat->density) c.density_override = density;
    }
    for (const auto& [id, span] : unknown_density_) {
      for (const auto& m : model_.materials)
        if (m.id == id && !(m.density > 0))
          warn("MaterialDensityUnknown",
               "material " + std::to_string(id) + " has no '$ name density g/cc' comment and no cell density",
               span);
    }
  }

  std::vector<Card> cards_;
  Model model_;
  std::vector<Diagnostic> diags_;
  std::vector<std::pair<std::size_t, double>> cell_densities_;
  std::map<int, SourceSpan> unknown_density_;
};

bool near_equal(double a, double b, double rel) {
  return a == b || std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b));
}

}  // namespace

ImportResult parse_input(std::string_view text) { return Importer().run(text); }

Model parse_input_strict(std::string_view text) {
  auto result = parse_input(text);
  for (const auto& d : result.diagnostics)
    if (d.severity == Severity::Error)
      throw ImportError(format_diagnostic(d), SourceSpan{d.line, d.column_start, d.column_end});
  return std::move(result.model);
}

bool models_equivalent(const Model& a, const Model& b, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  if (a.surfaces.size() != b.surfaces.size()) return fail("surface count differs");
  for (std::size_t i = 0; i < a.surfaces.size(); ++i) {
    const auto& x = a.surfaces[i];
    const auto& y = b.surfaces[i];
    const std::string at = "surface #" + std::to_string(i);
    if (x.id != y.id) return fail(at + ": id differs");
    if (x.name != y.name) return fail(at + ": name '" + x.name + "' vs '" + y.name + "'");
    if (mnemonic(x.kind) != mnemonic(y.kind)) return fail(at + ": kind differs");
    if (parameters(x.kind) != parameters(y.kind)) return fail(at + ": parameters differ");
  }
  if (a.materials.size() != b.materials.size()) return fail("material count differs");
  for (std::size_t i = 0; i < a.materials.size(); ++i) {
    const auto& x = a.materials[i];
    const auto& y = b.materials[i];
    const std::string at = "material #" + std::to_string(i);
    if (x.id != y.id) return fail(at + ": id differs");
    if (x.name != y.name) return fail(at + ": name '" + x.name + "' vs '" + y.name + "'");
    if (x.density != y.density) return fail(at + ": density differs");
    if (x.ratio_mode != y.ratio_mode) return fail(at + ": ratio mode differs");
    if (x.gas != y.gas) return fail(at + ": gas flag differs");
    if (x.composition.size() != y.composition.size()) return fail(at + ": component count differs");
    for (std::size_t k = 0; k < x.composition.size(); ++k) {
      if (x.composition[k].species != y.composition[k].species) return fail(at + ": species differ");
      if (!near_equal(x.composition[k].ratio, y.composition[k].ratio, 1e-12))
        return fail(at + ": ratio of " + x.composition[k].species + " differs");
    }
  }
  if (a.cells.size() != b.cells.size()) return fail("cell count differs");
  for (std::size_t i = 0; i < a.cells.size(); ++i) {
    const auto& x = a.cells[i];
    const auto& y = b.cells[i];
    const std::string at = "cell #" + std::to_string(i);
    if (x.id != y.id) return fail(at + ": id differs");
    if (x.name != y.name) return fail(at + ": name '" + x.name + "' vs '" + y.name + "'");
    if (!(x.material == y.material)) return fail(at + ": material differs");
    if (x.volume_hint != y.volume_hint) return fail(at + ": volume differs");
    auto density = [](const Model& m, const Cell& c) -> std::optional<double> {
      if (c.material.kind != CellMaterial::Kind::Ref) return std::nullopt;
      if (c.density_override) return c.density_override;
      if (const auto* mat = m.find_material(c.material.material_id)) return mat->density;
      return std::nullopt;
    };
    if (density(a, x) != density(b, y)) return fail(at + ": density differs");
    if (!(canonicalize(x.region) == canonicalize(y.region)))
      return fail(at + ": region '" + region_to_text(x.region) + "' vs '" + region_to_text(y.region) + "'");
  }
  return true;
}

}  // namespace fitsgeo
