#include "fitsgeo/model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <thread>
#include <unordered_map>

#include "fitsgeo/error.hpp"

namespace fitsgeo {

namespace {

constexpr std::int64_t kProbeSamples = 10'000;

std::uint64_t splitmix64(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ULL;

double to_unit(std::uint64_t bits) { return double(bits >> 11) * 0x1.0p-53; }

// Surface lookup by id for repeated membership queries.
class SurfaceIndex {
 public:
  explicit SurfaceIndex(const Model& m) {
    for (const auto& s : m.surfaces) by_id_.emplace(s.id, &s.kind);
  }
  const SurfaceKind& at(int id) const {
    const auto it = by_id_.find(id);
    if (it == by_id_.end())
      throw Error(ErrorCode::NotFound, "region references undefined surface " + std::to_string(id));
    return *it->second;
  }

 private:
  std::unordered_map<int, const SurfaceKind*> by_id_;
};

bool contains(const SurfaceIndex& index, const RegionExpr& region, const Vec3& p) {
  return evaluate_region(region, [&](int id) { return implicit(index.at(id), p) < 0.0; });
}

const Cell& require_cell(const Model& m, int cell_id) {
  const Cell* c = m.find_cell(cell_id);
  if (!c) throw Error(ErrorCode::UnknownCell, "no cell with id " + std::to_string(cell_id));
  return *c;
}

Diagnostic diag(Severity s, std::string code, std::string message, std::string location) {
  return Diagnostic{s, std::move(code), std::move(message), std::move(location)};
}

std::string cell_loc(const Cell& c) { return "cell " + std::to_string(c.id); }

}  // namespace

const Surface* Model::find_surface(int id) const {
  const auto it = std::find_if(surfaces.begin(), surfaces.end(), [&](const Surface& s) { return s.id == id; });
  return it == surfaces.end() ? nullptr : &*it;
}

const Material* Model::find_material(int id) const {
  const auto it = std::find_if(materials.begin(), materials.end(), [&](const Material& s) { return s.id == id; });
  return it == materials.end() ? nullptr : &*it;
}

const Cell* Model::find_cell(int id) const {
  const auto it = std::find_if(cells.begin(), cells.end(), [&](const Cell& s) { return s.id == id; });
  return it == cells.end() ? nullptr : &*it;
}

SurfaceResolver Model::surface_resolver() const {
  std::map<std::string, int, std::less<>> names;
  for (const auto& s : surfaces) names.emplace(s.name, s.id);
  return [names = std::move(names)](std::string_view n) -> std::optional<int> {
    const auto it = names.find(n);
    if (it == names.end()) return std::nullopt;
    return it->second;
  };
}

bool has_errors(const std::vector<Diagnostic>& ds) {
  return std::any_of(ds.begin(), ds.end(), [](const Diagnostic& d) { return d.severity == Severity::Error; });
}

std::string format_diagnostic(const Diagnostic& d) {
  std::string out = d.severity == Severity::Error ? "error" : "warning";
  out += "[" + d.code + "]";
  if (d.line > 0) {
    out += " line " + std::to_string(d.line);
    if (d.column_start > 0) out += ":" + std::to_string(d.column_start);
  }
  if (!d.location.empty()) out += " (" + d.location + ")";
  out += ": " + d.message;
  return out;
}

std::vector<Diagnostic> validate_model(const Model& m) {
  std::vector<Diagnostic> out;
  auto error = [&](std::string code, std::string msg, std::string loc) {
    out.push_back(diag(Severity::Error, std::move(code), std::move(msg), std::move(loc)));
  };
  auto warn = [&](std::string code, std::string msg, std::string loc) {
    out.push_back(diag(Severity::Warning, std::move(code), std::move(msg), std::move(loc)));
  };

  std::set<int> surface_ids, material_ids, cell_ids;
  std::set<std::string> surface_names;
  for (const auto& s : m.surfaces) {
    const std::string loc = "surface " + std::to_string(s.id);
    if (s.id < 1) error("InvalidSurfaceId", "surface id must be >= 1", loc);
    if (!surface_ids.insert(s.id).second) error("DuplicateSurfaceId", "surface id " + std::to_string(s.id) + " is defined more than once", loc);
    if (!s.name.empty() && !surface_names.insert(s.name).second)
      warn("DuplicateSurfaceName", "surface name '" + s.name + "' is not unique", loc);
    try {
      validate_kind(s.kind);
    } catch (const Error& e) {
      error("DegenerateGeometry", e.what(), loc);
    }
  }
  for (const auto& mat : m.materials) {
    const std::string loc = "material " + std::to_string(mat.id);
    if (mat.id < 1) error("InvalidMaterialId", "material id must be >= 1", loc);
    if (!material_ids.insert(mat.id).second) error("DuplicateMaterialId", "material id " + std::to_string(mat.id) + " is defined more than once", loc);
    try {
      define_material(std::max(mat.id, 1), mat.name.empty() ? "?" : mat.name, mat.density, mat.composition,
                      mat.ratio_mode, mat.gas, mat.color);
    } catch (const Error& e) {
      error(std::string(to_string(e.code())), e.what(), loc);
    }
  }

  std::set<int> used_surfaces;
  int outer_count = 0;
  for (const auto& c : m.cells) {
    const std::string loc = cell_loc(c);
    if (c.id < 1) error("InvalidCellId", "cell id must be >= 1", loc);
    if (!cell_ids.insert(c.id).second) error("DuplicateCellId", "cell id " + std::to_string(c.id) + " is defined more than once", loc);
    for (int sid : referenced_surfaces(c.region)) {
      used_surfaces.insert(sid);
      if (!surface_ids.contains(sid))
        error("DanglingSurfaceRef", "region references undefined surface " + std::to_string(sid), loc);
    }
    switch (c.material.kind) {
      case CellMaterial::Kind::Outer:
        ++outer_count;
        if (c.density_override) error("OuterWithDensity", "the outer cell cannot carry a density", loc);
        break;
      case CellMaterial::Kind::Ref:
        if (!material_ids.contains(c.material.material_id))
          error("DanglingMaterialRef", "cell uses undefined material " + std::to_string(c.material.material_id), loc);
        break;
      case CellMaterial::Kind::Void:
        break;
    }
    if (c.density_override && !(std::isfinite(*c.density_override) && *c.density_override > 0))
      error("InvalidDensity", "density override must be > 0", loc);
    if (c.volume_hint && !(std::isfinite(*c.volume_hint) && *c.volume_hint > 0))
      error("InvalidVolume", "volume hint must be > 0", loc);
  }
  if (outer_count == 0) error("MissingOuter", "model has no outer cell", "model");
  if (outer_count > 1) error("MultipleOuter", "model has " + std::to_string(outer_count) + " outer cells", "model");

  for (const auto& s : m.surfaces)
    if (!used_surfaces.contains(s.id))
      warn("UnusedSurface", "surface '" + s.name + "' is not used by any cell", "surface " + std::to_string(s.id));

  if (has_errors(out)) return out;

  const auto bounds = model_bounds(m);
  for (const auto& c : m.cells) {
    if (c.material.kind == CellMaterial::Kind::Outer) continue;
    VolumeOptions opts;
    opts.samples = kProbeSamples;
    opts.threads = 1;
    bool bounded = true;
    for (int sid : referenced_surfaces(c.region)) bounded = bounded && is_bounded(m.find_surface(sid)->kind);
    if (!bounded) {
      if (!bounds) continue;
      opts.box = bounds;
    }
    if (mc_cell_volume(m, c.id, opts).hits == 0)
      warn("EmptyCell", "probe of " + std::to_string(kProbeSamples) + " points found no volume", cell_loc(c));
  }
  return out;
}

bool cell_contains(const Model& m, int cell_id, const Vec3& p) {
  const Cell& c = require_cell(m, cell_id);
  return contains(SurfaceIndex(m), c.region, p);
}

Vec3 unit_cube_sample(std::uint64_t seed, std::uint64_t index) {
  const std::uint64_t key = splitmix64(seed);
  const std::uint64_t base = key + 3 * index * kGolden;
  return {to_unit(splitmix64(base + kGolden)), to_unit(splitmix64(base + 2 * kGolden)),
          to_unit(splitmix64(base + 3 * kGolden))};
}

std::optional<Aabb> model_bounds(const Model& m) {
  std::optional<Aabb> box;
  for (const auto& s : m.surfaces) {
    if (!is_bounded(s.kind)) continue;
    if (!box) box = aabb(s.kind);
    else box->extend(aabb(s.kind));
  }
  return box;
}

VolumeEstimate mc_cell_volume(const Model& m, int cell_id, const VolumeOptions& opts) {
  if (opts.samples < 1) throw Error(ErrorCode::PreconditionFailed, "sample count must be >= 1");
  const Cell& c = require_cell(m, cell_id);
  const SurfaceIndex index(m);

  Aabb box;
  if (opts.box) {
    box = *opts.box;
  } else {
    for (int sid : referenced_surfaces(c.region)) {
      const SurfaceKind& k = index.at(sid);
      if (!is_bounded(k))
        throw Error(ErrorCode::UnboundedRegionNeedsBox,
                    "cell " + std::to_string(cell_id) + " references unbounded surface " +
                        std::to_string(sid) + "; pass an explicit sampling box");
      box.extend(aabb(k));
    }
  }
  const Vec3 lo = box.min();
  const Vec3 size = box.sizes();

  unsigned threads = opts.threads ? opts.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::int64_t>(threads, opts.samples));
  std::vector<std::int64_t> hits(threads, 0);
  auto work = [&](unsigned t) {
    const std::int64_t begin = opts.samples * t / threads;
    const std::int64_t end = opts.samples * (t + 1) / threads;
    std::int64_t h = 0;
    for (std::int64_t i = begin; i < end; ++i) {
      const Vec3 p = lo + size.cwiseProduct(unit_cube_sample(opts.seed, static_cast<std::uint64_t>(i)));
      if (contains(index, c.region, p)) ++h;
    }
    hits[t] = h;
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }

  VolumeEstimate r;
  for (auto h : hits) r.hits += h;
  r.samples = opts.samples;
  r.seed = opts.seed;
  r.box = box;
  const double vol = size.prod();
  const double frac = double(r.hits) / double(opts.samples);
  r.estimate = vol * frac;
  r.std_error = vol * std::sqrt(frac * (1.0 - frac) / double(opts.samples));
  return r;
}

}  // namespace fitsgeo
