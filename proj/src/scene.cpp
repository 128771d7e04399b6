#include "fitsgeo/scene.hpp"

#include <algorithm>
#include <cstdio>

#include "fitsgeo/error.hpp"
#include "fitsgeo/number_format.hpp"

namespace fitsgeo {

namespace {

void json_string(std::string& out, std::string_view s) {
  out += '"';
  for (const char ch : s) {
    const auto c = static_cast<unsigned char>(ch);
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof buf, "\\u%04x", c);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

void json_vec(std::string& out, const Vec3& v) {
  out += '[' + format_number(v.x()) + ',' + format_number(v.y()) + ',' + format_number(v.z()) + ']';
}

}  // namespace

SceneDoc build_scene(const Model& m, const SceneOptions& opts) {
  if (opts.opacity_override && !(*opts.opacity_override >= 0.0 && *opts.opacity_override <= 1.0))
    throw Error(ErrorCode::InvalidOpacity, "opacity override must lie in [0, 1]");

  SceneDoc doc;
  doc.title = m.title;
  for (const auto& s : m.surfaces) {
    if (s.hidden) continue;
    SceneObject o;
    o.surface_id = s.id;
    o.name = s.name;
    o.kind = std::string(mnemonic(s.kind));
    o.color = s.color;
    const ColorEntry* entry = find_color(s.color);
    if (!entry) angel_color(s.color);  // throws UnknownColor
    o.angel_color = std::string(entry->angel_name);
    o.rgb = entry->rgb;
    o.opacity = opts.opacity_override.value_or(s.opacity);
    o.mesh = tessellate(s.kind, opts.resolution, opts.tessellation);
    if (opts.labels) o.label = SceneLabel{s.name, label_anchor(s.kind)};
    doc.bbox.extend(is_bounded(s.kind) ? aabb(s.kind) : mesh_bounds(o.mesh));
    doc.objects.push_back(std::move(o));
  }
  if (doc.objects.empty()) throw Error(ErrorCode::EmptyScene, "model has no drawable surfaces");
  std::stable_sort(doc.objects.begin(), doc.objects.end(),
                   [](const SceneObject& a, const SceneObject& b) { return a.surface_id < b.surface_id; });
  return doc;
}

std::string write_scene(const SceneDoc& s) {
  std::vector<const SceneObject*> order;
  for (const auto& o : s.objects) order.push_back(&o);
  std::stable_sort(order.begin(), order.end(),
                   [](const SceneObject* a, const SceneObject* b) { return a->surface_id < b->surface_id; });

  std::string out;
  out += "{\"version\":" + std::to_string(s.version) + ",\"title\":";
  json_string(out, s.title);
  out += ",\"bbox\":{\"min\":";
  json_vec(out, s.bbox.isEmpty() ? Vec3::Zero() : s.bbox.min());
  out += ",\"max\":";
  json_vec(out, s.bbox.isEmpty() ? Vec3::Zero() : s.bbox.max());
  out += "},\"objects\":[";
  for (std::size_t i = 0; i < order.size(); ++i) {
    const SceneObject& o = *order[i];
    out += i ? ",\n" : "\n";
    out += "{\"surface_id\":" + std::to_string(o.surface_id) + ",\"name\":";
    json_string(out, o.name);
    out += ",\"kind\":";
    json_string(out, o.kind);
    out += ",\"color\":";
    json_string(out, o.color);
    out += ",\"angel_color\":";
    json_string(out, o.angel_color);
    out += ",\"rgb\":[" + format_number(o.rgb[0]) + ',' + format_number(o.rgb[1]) + ',' +
           format_number(o.rgb[2]) + "]";
    out += ",\"opacity\":" + format_number(o.opacity);
    out += ",\"mesh\":{\"vertices\":[";
    for (std::size_t v = 0; v < o.mesh.vertices.size(); ++v) {
      const Vec3& p = o.mesh.vertices[v];
      if (v) out += ',';
      out += format_number(p.x()) + ',' + format_number(p.y()) + ',' + format_number(p.z());
    }
    out += "],\"triangles\":[";
    for (std::size_t t = 0; t < o.mesh.triangles.size(); ++t) {
      const auto& tri = o.mesh.triangles[t];
      if (t) out += ',';
      out += std::to_string(tri[0]) + ',' + std::to_string(tri[1]) + ',' + std::to_string(tri[2]);
    }
    out += "]},\"label\":";
    if (o.label) {
      out += "{\"text\":";
      json_string(out, o.label->text);
      out += ",\"anchor\":";
      json_vec(out, o.label->anchor);
      out += '}';
    } else {
      out += "null";
    }
    out += '}';
  }
  out += order.empty() ? "]}\n" : "\n]}\n";
  return out;
}

}  // namespace fitsgeo
