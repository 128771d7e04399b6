#include "fitsgeo/model_doc.hpp"

#include <climits>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "fitsgeo/error.hpp"

namespace fitsgeo {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void schema(const std::string& pointer, const std::string& what) {
  throw Error(ErrorCode::SchemaError, (pointer.empty() ? "/" : pointer) + ": " + what);
}

const json& member(const json& obj, const std::string& key, const std::string& ptr) {
  const auto it = obj.find(key);
  if (it == obj.end()) schema(ptr, "missing required key '" + key + "'");
  return *it;
}

double number(const json& v, const std::string& ptr) {
  if (!v.is_number()) schema(ptr, "expected a number");
  return v.get<double>();
}

int integer(const json& v, const std::string& ptr) {
  if (!v.is_number_integer()) schema(ptr, "expected an integer");
  const auto x = v.get<long long>();
  if (x < INT_MIN || x > INT_MAX) schema(ptr, "integer out of range");
  return static_cast<int>(x);
}

std::string text(const json& v, const std::string& ptr) {
  if (!v.is_string()) schema(ptr, "expected a string");
  return v.get<std::string>();
}

bool boolean(const json& v, const std::string& ptr) {
  if (!v.is_boolean()) schema(ptr, "expected true or false");
  return v.get<bool>();
}

const json& array(const json& v, const std::string& ptr) {
  if (!v.is_array()) schema(ptr, "expected an array");
  return v;
}

template <class F>
auto with_pointer(const std::string& ptr, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SchemaError) throw;
    throw Error(e.code(), ptr + ": " + e.what());
  }
}

Surface read_surface(const json& s, const std::string& ptr) {
  if (!s.is_object()) schema(ptr, "expected an object");
  const int id = integer(member(s, "id", ptr), ptr + "/id");
  const std::string name = text(member(s, "name", ptr), ptr + "/name");
  const std::string kind = text(member(s, "kind", ptr), ptr + "/kind");
  const auto keys = doc_params(kind);
  if (keys.empty()) schema(ptr + "/kind", "unknown surface kind '" + kind + "'");
  std::vector<double> params;
  for (const auto& k : keys) {
    const std::string kp = ptr + "/" + std::string(k.key);
    const json& v = member(s, std::string(k.key), ptr);
    if (k.width == 1) {
      params.push_back(number(v, kp));
    } else {
      if (!v.is_array() || v.size() != 3) schema(kp, "expected an array of 3 numbers");
      for (int i = 0; i < 3; ++i) params.push_back(number(v[i], kp + "/" + std::to_string(i)));
    }
  }
  const std::string color = s.contains("color") ? text(s["color"], ptr + "/color") : "gray";
  const double opacity = s.contains("opacity") ? number(s["opacity"], ptr + "/opacity") : 1.0;
  Surface out = with_pointer(ptr, [&] {
    return make_surface(id, name, kind_from_parameters(kind, params), color, opacity);
  });
  if (s.contains("hidden")) out.hidden = boolean(s["hidden"], ptr + "/hidden");
  return out;
}

Material read_material(const json& m, const std::string& ptr, const MaterialDb& db) {
  if (!m.is_object()) schema(ptr, "expected an object");
  const int id = integer(member(m, "id", ptr), ptr + "/id");
  if (m.contains("db")) {
    const std::string ref = text(m["db"], ptr + "/db");
    Material mat = with_pointer(ptr + "/db", [&] { return material_from_db(db, ref, id); });
    if (m.contains("name")) mat.name = text(m["name"], ptr + "/name");
    if (m.contains("density")) mat.density = number(m["density"], ptr + "/density");
    if (m.contains("color")) mat.color = text(m["color"], ptr + "/color");
    if (m.contains("gas")) mat.gas = boolean(m["gas"], ptr + "/gas");
    return with_pointer(ptr, [&] {
      return define_material(mat.id, mat.name, mat.density, mat.composition, mat.ratio_mode, mat.gas,
                             mat.color);
    });
  }
  const std::string name = text(member(m, "name", ptr), ptr + "/name");
  const double density = number(member(m, "density", ptr), ptr + "/density");
  std::vector<Component> comp;
  const std::string cptr = ptr + "/composition";
  const json& items = array(member(m, "composition", ptr), cptr);
  for (std::size_t i = 0; i < items.size(); ++i) {
    const std::string ip = cptr + "/" + std::to_string(i);
    if (!items[i].is_array() || items[i].size() != 2) schema(ip, "expected [species, ratio]");
    comp.push_back({text(items[i][0], ip + "/0"), number(items[i][1], ip + "/1")});
  }
  RatioMode mode = RatioMode::Atom;
  if (m.contains("ratio_mode")) {
    const std::string rm = text(m["ratio_mode"], ptr + "/ratio_mode");
    if (rm == "mass") mode = RatioMode::Mass;
    else if (rm != "atom") schema(ptr + "/ratio_mode", "expected \"atom\" or \"mass\"");
  }
  const bool gas = m.contains("gas") ? boolean(m["gas"], ptr + "/gas") : false;
  const std::string color = m.contains("color") ? text(m["color"], ptr + "/color") : "gray";
  return with_pointer(ptr, [&] { return define_material(id, name, density, comp, mode, gas, color); });
}

Cell read_cell(const json& c, const std::string& ptr, const SurfaceResolver& resolver) {
  if (!c.is_object()) schema(ptr, "expected an object");
  Cell cell;
  cell.id = integer(member(c, "id", ptr), ptr + "/id");
  cell.name = c.contains("name") ? text(c["name"], ptr + "/name") : "cell" + std::to_string(cell.id);
  const json& mat = member(c, "material", ptr);
  if (mat.is_string()) {
    const auto v = mat.get<std::string>();
    if (v == "void") cell.material = CellMaterial::void_();
    else if (v == "outer") cell.material = CellMaterial::outer();
    else schema(ptr + "/material", "expected a material id, \"void\" or \"outer\"");
  } else {
    cell.material = CellMaterial::ref(integer(mat, ptr + "/material"));
  }
  if (c.contains("density")) cell.density_override = number(c["density"], ptr + "/density");
  if (c.contains("volume")) cell.volume_hint = number(c["volume"], ptr + "/volume");
  const std::string region = text(member(c, "region", ptr), ptr + "/region");
  cell.region = with_pointer(ptr + "/region", [&] { return parse_region(region, resolver); });
  return cell;
}

ordered_json vec_json(const Vec3& v) { return ordered_json::array({v.x(), v.y(), v.z()}); }

}  // namespace

std::vector<DocParam> doc_params(std::string_view m) {
  std::string up(m);
  for (auto& ch : up) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  if (up == "P") return {{"a", 1}, {"b", 1}, {"c", 1}, {"d", 1}};
  if (up == "PX" || up == "PY" || up == "PZ") return {{"d", 1}};
  if (up == "SPH") return {{"center", 3}, {"r", 1}};
  if (up == "BOX") return {{"base", 3}, {"e1", 3}, {"e2", 3}, {"e3", 3}};
  if (up == "RPP")
    return {{"xmin", 1}, {"xmax", 1}, {"ymin", 1}, {"ymax", 1}, {"zmin", 1}, {"zmax", 1}};
  if (up == "RCC") return {{"base", 3}, {"h", 3}, {"r", 1}};
  if (up == "TRC") return {{"base", 3}, {"h", 3}, {"r_base", 1}, {"r_top", 1}};
  if (up == "TX" || up == "TY" || up == "TZ") return {{"center", 3}, {"a", 1}, {"b", 1}, {"c", 1}};
  if (up == "REC") return {{"base", 3}, {"h", 3}, {"v1", 3}, {"v2", 3}};
  if (up == "WED") return {{"vertex", 3}, {"e1", 3}, {"e2", 3}, {"e3", 3}};
  return {};
}

LoadedModel parse_model_doc(std::string_view json_text, const MaterialDb& db) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaError, std::string("/: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) schema("", "expected a JSON object");

  LoadedModel out;
  Model& m = out.model;
  if (doc.contains("title")) m.title = text(doc["title"], "/title");

  if (doc.contains("surfaces")) {
    const json& ss = array(doc["surfaces"], "/surfaces");
    for (std::size_t i = 0; i < ss.size(); ++i)
      m.surfaces.push_back(read_surface(ss[i], "/surfaces/" + std::to_string(i)));
  }
  if (doc.contains("materials")) {
    const json& ms = array(doc["materials"], "/materials");
    for (std::size_t i = 0; i < ms.size(); ++i)
      m.materials.push_back(read_material(ms[i], "/materials/" + std::to_string(i), db));
  }
  const auto resolver = m.surface_resolver();
  if (doc.contains("cells")) {
    const json& cs = array(doc["cells"], "/cells");
    for (std::size_t i = 0; i < cs.size(); ++i)
      m.cells.push_back(read_cell(cs[i], "/cells/" + std::to_string(i), resolver));
  }
  out.diagnostics = validate_model(m);
  return out;
}

LoadedModel load_model_doc(const std::filesystem::path& path, const MaterialDb& db) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open model document '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_model_doc(ss.str(), db);
}

std::string write_model_doc(const Model& m) {
  ordered_json doc;
  doc["title"] = m.title;
  doc["surfaces"] = ordered_json::array();
  for (const auto& s : m.surfaces) {
    ordered_json j;
    j["id"] = s.id;
    j["name"] = s.name;
    const auto mn = mnemonic(s.kind);
    j["kind"] = mn;
    const auto params = parameters(s.kind);
    std::size_t at = 0;
    for (const auto& k : doc_params(mn)) {
      if (k.width == 1) {
        j[std::string(k.key)] = params[at++];
      } else {
        j[std::string(k.key)] = vec_json(Vec3(params[at], params[at + 1], params[at + 2]));
        at += 3;
      }
    }
    j["color"] = s.color;
    j["opacity"] = s.opacity;
    if (s.hidden) j["hidden"] = true;
    doc["surfaces"].push_back(std::move(j));
  }
  doc["materials"] = ordered_json::array();
  for (const auto& mat : m.materials) {
    ordered_json j;
    j["id"] = mat.id;
    j["name"] = mat.name;
    j["density"] = mat.density;
    j["ratio_mode"] = to_string(mat.ratio_mode);
    ordered_json comp = ordered_json::array();
    for (const auto& c : mat.composition) comp.push_back(ordered_json::array({c.species, c.ratio}));
    j["composition"] = std::move(comp);
    j["gas"] = mat.gas;
    j["color"] = mat.color;
    doc["materials"].push_back(std::move(j));
  }
  doc["cells"] = ordered_json::array();
  for (const auto& c : m.cells) {
    ordered_json j;
    j["id"] = c.id;
    j["name"] = c.name;
    switch (c.material.kind) {
      case CellMaterial::Kind::Void: j["material"] = "void"; break;
      case CellMaterial::Kind::Outer: j["material"] = "outer"; break;
      case CellMaterial::Kind::Ref: j["material"] = c.material.material_id; break;
    }
    if (c.density_override) j["density"] = *c.density_override;
    if (c.volume_hint) j["volume"] = *c.volume_hint;
    j["region"] = region_to_text(c.region);
    doc["cells"].push_back(std::move(j));
  }
  return doc.dump(2) + "\n";
}

}  // namespace fitsgeo
