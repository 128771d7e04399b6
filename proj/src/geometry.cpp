#include "fitsgeo/geometry.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numbers>
#include <utility>

#include "fitsgeo/colors.hpp"
#include "fitsgeo/error.hpp"

namespace fitsgeo {

namespace {

using std::numbers::pi;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

[[noreturn]] void degenerate(const std::string& what) {
  throw Error(ErrorCode::DegenerateGeometry, what);
}

[[noreturn]] void unbounded() {
  throw Error(ErrorCode::UnboundedSurface, "planes have no finite volume, area or centroid");
}

int axis_index(Axis a) { return static_cast<int>(a); }

Vec3 axis_unit(Axis a) { return Vec3::Unit(axis_index(a)); }

// Right-handed pair spanning the plane normal to `a`.
std::pair<Vec3, Vec3> axis_frame(Axis a) {
  const int i = axis_index(a);
  return {Vec3::Unit((i + 1) % 3), Vec3::Unit((i + 2) % 3)};
}

// Unit vector orthogonal to n (not necessarily unit).
Vec3 any_perpendicular(const Vec3& n) {
  Eigen::Index smallest;
  n.cwiseAbs().minCoeff(&smallest);
  return n.cross(Vec3::Unit(smallest)).normalized();
}

bool finite(const Vec3& v) { return v.allFinite(); }

void require_finite(std::initializer_list<double> xs) {
  for (double x : xs)
    if (!std::isfinite(x)) degenerate("non-finite parameter");
}

void require_orthogonal(const Vec3& u, const Vec3& v, const char* what) {
  const double c = std::abs(u.dot(v)) / (u.norm() * v.norm());
  if (c > std::sin(kOrthogonalityTolerance))
    degenerate(std::string(what) + " are not orthogonal");
}

void validate_edges(const Vec3& e1, const Vec3& e2, const Vec3& e3, const char* kind) {
  if (!(e1.norm() > 0 && e2.norm() > 0 && e3.norm() > 0))
    degenerate(std::string(kind) + " edge vectors must be nonzero");
  require_orthogonal(e1, e2, "edges e1 and e2");
  require_orthogonal(e2, e3, "edges e2 and e3");
  require_orthogonal(e1, e3, "edges e1 and e3");
}

// Per-axis half extents of an ellipse spanned by semi-axis vectors u, v.
Vec3 ellipse_half_extent(const Vec3& u, const Vec3& v) {
  return (u.cwiseProduct(u) + v.cwiseProduct(v)).cwiseSqrt();
}

// Per-axis half extents of a disk of radius r normal to unit n.
Vec3 disk_half_extent(const Vec3& n, double r) {
  return (Vec3::Ones() - n.cwiseProduct(n)).cwiseMax(0.0).cwiseSqrt() * r;
}

Aabb aabb_of(std::initializer_list<Vec3> pts) {
  Aabb box;
  for (const auto& p : pts) box.extend(p);
  return box;
}

std::array<Vec3, 8> box_corners(const Vec3& base, const Vec3& e1, const Vec3& e2,
                                const Vec3& e3) {
  std::array<Vec3, 8> c;
  for (int i = 0; i < 8; ++i)
    c[i] = base + double(i & 1) * e1 + double((i >> 1) & 1) * e2 + double((i >> 2) & 1) * e3;
  return c;
}

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& ch : out) ch = static_cast<char>(std::toupper(static_cast<unsigned char>(ch)));
  return out;
}

Vec3 vec(std::span<const double> p, std::size_t at) { return {p[at], p[at + 1], p[at + 2]}; }

// Mesh assembly helpers.

struct MeshBuilder {
  TriMesh mesh;

  std::uint32_t add(const Vec3& v) {
    mesh.vertices.push_back(v);
    return static_cast<std::uint32_t>(mesh.vertices.size() - 1);
  }
  void tri(std::uint32_t a, std::uint32_t b, std::uint32_t c) { mesh.triangles.push_back({a, b, c}); }
  void quad(std::uint32_t a, std::uint32_t b, std::uint32_t c, std::uint32_t d) {
    tri(a, b, c);
    tri(a, c, d);
  }

  // Flip every triangle if the enclosed volume came out negative.
  TriMesh finish_closed() && {
    if (mesh_volume(mesh) < 0)
      for (auto& t : mesh.triangles) std::swap(t[1], t[2]);
    return std::move(mesh);
  }
};

// A station of a lofted solid: either a single point (cap centre or apex)
// or a ring centre + cos(phi)*u + sin(phi)*v.
struct Station {
  Vec3 center;
  Vec3 u = Vec3::Zero();
  Vec3 v = Vec3::Zero();
  bool point = true;
};

TriMesh loft(const std::vector<Station>& stations, int segments) {
  MeshBuilder b;
  std::vector<std::vector<std::uint32_t>> ids;
  for (const auto& s : stations) {
    std::vector<std::uint32_t> ring;
    if (s.point) {
      ring.push_back(b.add(s.center));
    } else {
      for (int j = 0; j < segments; ++j) {
        const double phi = 2.0 * pi * j / segments;
        ring.push_back(b.add(s.center + std::cos(phi) * s.u + std::sin(phi) * s.v));
      }
    }
    ids.push_back(std::move(ring));
  }
  for (std::size_t k = 0; k + 1 < ids.size(); ++k) {
    const auto& r0 = ids[k];
    const auto& r1 = ids[k + 1];
    for (int j = 0; j < segments; ++j) {
      const int jn = (j + 1) % segments;
      if (r0.size() == 1 && r1.size() == 1) break;
      if (r0.size() == 1) {
        b.tri(r0[0], r1[jn], r1[j]);
      } else if (r1.size() == 1) {
        b.tri(r0[j], r0[jn], r1[0]);
      } else {
        b.quad(r0[j], r0[jn], r1[jn], r1[j]);
      }
    }
  }
  return std::move(b).finish_closed();
}

// Convex polyhedron from vertices and planar faces; each triangle is turned
// to face away from `inside`.
TriMesh convex_polyhedron(std::span<const Vec3> verts,
                          const std::vector<std::vector<std::uint32_t>>& faces,
                          const Vec3& inside) {
  MeshBuilder b;
  for (const auto& v : verts) b.add(v);
  for (const auto& f : faces) {
    for (std::size_t i = 1; i + 1 < f.size(); ++i) {
      std::array<std::uint32_t, 3> t{f[0], f[i], f[i + 1]};
      const Vec3& p0 = verts[t[0]];
      const Vec3 n = (verts[t[1]] - p0).cross(verts[t[2]] - p0);
      if (n.dot(p0 - inside) < 0) std::swap(t[1], t[2]);
      b.mesh.triangles.push_back(t);
    }
  }
  return std::move(b.mesh);
}

TriMesh box_mesh(const Vec3& base, const Vec3& e1, const Vec3& e2, const Vec3& e3) {
  const auto c = box_corners(base, e1, e2, e3);
  const std::vector<std::vector<std::uint32_t>> faces = {
      {0, 2, 6, 4}, {1, 3, 7, 5}, {0, 1, 5, 4}, {2, 3, 7, 6}, {0, 1, 3, 2}, {4, 5, 7, 6}};
  return convex_polyhedron(c, faces, base + 0.5 * (e1 + e2 + e3));
}

}  // namespace

// ---------------------------------------------------------------------------
// Construction

void validate_kind(const SurfaceKind& k) {
  std::visit(
      overloaded{
          [](const kind::Plane& s) {
            require_finite({s.a, s.b, s.c, s.d});
            if (s.a == 0 && s.b == 0 && s.c == 0) degenerate("plane normal (a,b,c) is zero");
          },
          [](const kind::AxisPlane& s) { require_finite({s.d}); },
          [](const kind::Sphere& s) {
            if (!finite(s.center)) degenerate("non-finite sphere centre");
            require_finite({s.r});
            if (!(s.r > 0)) degenerate("sphere radius must be positive");
          },
          [](const kind::Box& s) {
            if (!finite(s.base) || !finite(s.e1) || !finite(s.e2) || !finite(s.e3))
              degenerate("non-finite box parameter");
            validate_edges(s.e1, s.e2, s.e3, "BOX");
          },
          [](const kind::Rpp& s) {
            require_finite({s.xmin, s.xmax, s.ymin, s.ymax, s.zmin, s.zmax});
            if (!(s.xmin < s.xmax && s.ymin < s.ymax && s.zmin < s.zmax))
              degenerate("RPP requires min < max on every axis");
          },
          [](const kind::Rcc& s) {
            if (!finite(s.base) || !finite(s.h)) degenerate("non-finite RCC parameter");
            require_finite({s.r});
            if (!(s.r > 0)) degenerate("RCC radius must be positive");
            if (!(s.h.norm() > 0)) degenerate("RCC height vector is zero");
          },
          [](const kind::Trc& s) {
            if (!finite(s.base) || !finite(s.h)) degenerate("non-finite TRC parameter");
            require_finite({s.r_base, s.r_top});
            if (!(s.r_base >= 0 && s.r_top >= 0 && s.r_base + s.r_top > 0))
              degenerate("TRC radii must be non-negative and not both zero");
            if (!(s.h.norm() > 0)) degenerate("TRC height vector is zero");
          },
          [](const kind::Torus& s) {
            if (!finite(s.center)) degenerate("non-finite torus centre");
            require_finite({s.a, s.b, s.c});
            if (!(s.a > 0 && s.b > 0 && s.c > 0)) degenerate("torus radii must be positive");
            if (!(s.a > s.c)) degenerate("torus major radius must exceed the radial tube semi-axis");
          },
          [](const kind::Rec& s) {
            if (!finite(s.base) || !finite(s.h) || !finite(s.v1) || !finite(s.v2))
              degenerate("non-finite REC parameter");
            if (!(s.h.norm() > 0)) degenerate("REC height vector is zero");
            if (!(s.v2.norm() > 0)) degenerate("REC semi-axes must be nonzero");
            if (s.v1.norm() < s.v2.norm()) degenerate("REC requires |v1| >= |v2|");
            require_orthogonal(s.v1, s.v2, "semi-axes v1 and v2");
            require_orthogonal(s.v1, s.h, "semi-axis v1 and height h");
            require_orthogonal(s.v2, s.h, "semi-axis v2 and height h");
          },
          [](const kind::Wed& s) {
            if (!finite(s.vertex) || !finite(s.e1) || !finite(s.e2) || !finite(s.e3))
              degenerate("non-finite WED parameter");
            validate_edges(s.e1, s.e2, s.e3, "WED");
          },
      },
      k);
}

Surface make_surface(int id, std::string name, SurfaceKind k, std::string color, double opacity) {
  if (id < 1) throw Error(ErrorCode::InvalidId, "surface id must be >= 1, got " + std::to_string(id));
  if (name.empty()) throw Error(ErrorCode::InvalidId, "surface name must be nonempty");
  if (!(opacity >= 0.0 && opacity <= 1.0))
    throw Error(ErrorCode::InvalidOpacity, "opacity must lie in [0, 1]");
  if (!is_known_color(color)) angel_color(color);  // throws with suggestions
  validate_kind(k);
  return Surface{id, std::move(name), std::move(k), std::move(color), opacity, false};
}

std::string_view mnemonic(const SurfaceKind& k) {
  return std::visit(
      overloaded{
          [](const kind::Plane&) -> std::string_view { return "P"; },
          [](const kind::AxisPlane& s) -> std::string_view {
            constexpr std::string_view n[] = {"PX", "PY", "PZ"};
            return n[axis_index(s.axis)];
          },
          [](const kind::Sphere&) -> std::string_view { return "SPH"; },
          [](const kind::Box&) -> std::string_view { return "BOX"; },
          [](const kind::Rpp&) -> std::string_view { return "RPP"; },
          [](const kind::Rcc&) -> std::string_view { return "RCC"; },
          [](const kind::Trc&) -> std::string_view { return "TRC"; },
          [](const kind::Torus& s) -> std::string_view {
            constexpr std::string_view n[] = {"TX", "TY", "TZ"};
            return n[axis_index(s.axis)];
          },
          [](const kind::Rec&) -> std::string_view { return "REC"; },
          [](const kind::Wed&) -> std::string_view { return "WED"; },
      },
      k);
}

std::vector<double> parameters(const SurfaceKind& k) {
  auto cat = [](std::initializer_list<Vec3> vs, std::initializer_list<double> xs = {}) {
    std::vector<double> out;
    for (const auto& v : vs) out.insert(out.end(), v.data(), v.data() + 3);
    out.insert(out.end(), xs);
    return out;
  };
  return std::visit(
      overloaded{
          [](const kind::Plane& s) { return std::vector<double>{s.a, s.b, s.c, s.d}; },
          [](const kind::AxisPlane& s) { return std::vector<double>{s.d}; },
          [&](const kind::Sphere& s) { return cat({s.center}, {s.r}); },
          [&](const kind::Box& s) { return cat({s.base, s.e1, s.e2, s.e3}); },
          [](const kind::Rpp& s) {
            return std::vector<double>{s.xmin, s.xmax, s.ymin, s.ymax, s.zmin, s.zmax};
          },
          [&](const kind::Rcc& s) { return cat({s.base, s.h}, {s.r}); },
          [&](const kind::Trc& s) { return cat({s.base, s.h}, {s.r_base, s.r_top}); },
          [&](const kind::Torus& s) { return cat({s.center}, {s.a, s.b, s.c}); },
          [&](const kind::Rec& s) { return cat({s.base, s.h, s.v1, s.v2}); },
          [&](const kind::Wed& s) { return cat({s.vertex, s.e1, s.e2, s.e3}); },
      },
      k);
}

int parameter_count(std::string_view mnemonic_text) {
  static const std::map<std::string, int, std::less<>> counts = {
      {"P", 4},   {"PX", 1},  {"PY", 1},  {"PZ", 1},  {"SPH", 4}, {"BOX", 12}, {"RPP", 6},
      {"RCC", 7}, {"TRC", 8}, {"TX", 6},  {"TY", 6},  {"TZ", 6},  {"REC", 12}, {"WED", 12}};
  const auto it = counts.find(upper(mnemonic_text));
  return it == counts.end() ? -1 : it->second;
}

SurfaceKind kind_from_parameters(std::string_view mnemonic_text, std::span<const double> p) {
  const std::string m = upper(mnemonic_text);
  const int n = parameter_count(m);
  if (n < 0) throw Error(ErrorCode::ParseError, "unknown surface mnemonic '" + std::string(mnemonic_text) + "'");
  if (static_cast<int>(p.size()) != n)
    throw Error(ErrorCode::ParseError, "expected " + std::to_string(n) + " parameters for " + m +
                                           ", got " + std::to_string(p.size()));
  if (m == "P") return kind::Plane{p[0], p[1], p[2], p[3]};
  if (m == "PX") return kind::AxisPlane{Axis::X, p[0]};
  if (m == "PY") return kind::AxisPlane{Axis::Y, p[0]};
  if (m == "PZ") return kind::AxisPlane{Axis::Z, p[0]};
  if (m == "SPH") return kind::Sphere{vec(p, 0), p[3]};
  if (m == "BOX") return kind::Box{vec(p, 0), vec(p, 3), vec(p, 6), vec(p, 9)};
  if (m == "RPP") return kind::Rpp{p[0], p[1], p[2], p[3], p[4], p[5]};
  if (m == "RCC") return kind::Rcc{vec(p, 0), vec(p, 3), p[6]};
  if (m == "TRC") return kind::Trc{vec(p, 0), vec(p, 3), p[6], p[7]};
  if (m == "TX") return kind::Torus{Axis::X, vec(p, 0), p[3], p[4], p[5]};
  if (m == "TY") return kind::Torus{Axis::Y, vec(p, 0), p[3], p[4], p[5]};
  if (m == "TZ") return kind::Torus{Axis::Z, vec(p, 0), p[3], p[4], p[5]};
  if (m == "REC") return kind::Rec{vec(p, 0), vec(p, 3), vec(p, 6), vec(p, 9)};
  return kind::Wed{vec(p, 0), vec(p, 3), vec(p, 6), vec(p, 9)};
}

bool is_bounded(const SurfaceKind& k) {
  return !std::holds_alternative<kind::Plane>(k) && !std::holds_alternative<kind::AxisPlane>(k);
}

// ---------------------------------------------------------------------------
// Classification

double implicit(const SurfaceKind& k, const Vec3& p) {
  return std::visit(
      overloaded{
          [&](const kind::Plane& s) {
            const Vec3 n(s.a, s.b, s.c);
            return (n.dot(p) - s.d) / n.norm();
          },
          [&](const kind::AxisPlane& s) { return p[axis_index(s.axis)] - s.d; },
          [&](const kind::Sphere& s) { return (p - s.center).norm() - s.r; },
          [&](const kind::Box& s) {
            const Vec3 d = p - s.base;
            double f = -std::numeric_limits<double>::infinity();
            for (const Vec3* e : {&s.e1, &s.e2, &s.e3}) {
              const double len = e->norm();
              const double t = d.dot(*e) / len;
              f = std::max({f, -t, t - len});
            }
            return f;
          },
          [&](const kind::Rpp& s) {
            return std::max({s.xmin - p.x(), p.x() - s.xmax, s.ymin - p.y(), p.y() - s.ymax,
                             s.zmin - p.z(), p.z() - s.zmax});
          },
          [&](const kind::Rcc& s) {
            const double len = s.h.norm();
            const Vec3 n = s.h / len;
            const Vec3 d = p - s.base;
            const double t = d.dot(n);
            const double rho = (d - t * n).norm();
            return std::max({-t, t - len, rho - s.r});
          },
          [&](const kind::Trc& s) {
            const double len = s.h.norm();
            const Vec3 n = s.h / len;
            const Vec3 d = p - s.base;
            const double t = d.dot(n);
            const double rho = (d - t * n).norm();
            const double radius = s.r_base + (s.r_top - s.r_base) * t / len;
            const double slant = std::hypot(len, s.r_base - s.r_top);
            return std::max({-t, t - len, (rho - radius) * len / slant});
          },
          [&](const kind::Torus& s) {
            const Vec3 d = p - s.center;
            const double t = d[axis_index(s.axis)];
            const double rho = std::sqrt(std::max(0.0, d.squaredNorm() - t * t));
            const double q = (rho - s.a) * (rho - s.a) / (s.c * s.c) + t * t / (s.b * s.b);
            return std::min(s.b, s.c) * (q - 1.0);
          },
          [&](const kind::Rec& s) {
            const double len = s.h.norm();
            const double major = s.v1.norm();
            const double minor = s.v2.norm();
            const Vec3 d = p - s.base;
            const double t = d.dot(s.h) / len;
            const double x = d.dot(s.v1) / (major * major);
            const double y = d.dot(s.v2) / (minor * minor);
            return std::max({-t, t - len, minor * (std::hypot(x, y) - 1.0)});
          },
          [&](const kind::Wed& s) {
            const double l1 = s.e1.norm(), l2 = s.e2.norm(), l3 = s.e3.norm();
            const Vec3 d = p - s.vertex;
            const double x = d.dot(s.e1) / l1;
            const double y = d.dot(s.e2) / l2;
            const double z = d.dot(s.e3) / l3;
            const double diag = (x / l1 + y / l2 - 1.0) / std::hypot(1.0 / l1, 1.0 / l2);
            return std::max({-x, -y, -z, z - l3, diag});
          },
      },
      k);
}

double characteristic_length(const SurfaceKind& k) {
  return std::visit(
      overloaded{
          [](const kind::Plane& s) {
            return std::max(1.0, std::abs(s.d) / Vec3(s.a, s.b, s.c).norm());
          },
          [](const kind::AxisPlane& s) { return std::max(1.0, std::abs(s.d)); },
          [](const kind::Sphere& s) { return s.r; },
          [](const kind::Box& s) { return std::max({s.e1.norm(), s.e2.norm(), s.e3.norm()}); },
          [](const kind::Rpp& s) {
            return std::max({s.xmax - s.xmin, s.ymax - s.ymin, s.zmax - s.zmin});
          },
          [](const kind::Rcc& s) { return std::max(s.r, s.h.norm()); },
          [](const kind::Trc& s) { return std::max({s.r_base, s.r_top, s.h.norm()}); },
          [](const kind::Torus& s) { return std::max(s.a + s.c, s.b); },
          [](const kind::Rec& s) { return std::max(s.v1.norm(), s.h.norm()); },
          [](const kind::Wed& s) { return std::max({s.e1.norm(), s.e2.norm(), s.e3.norm()}); },
      },
      k);
}

int sense(const Surface& s, const Vec3& p, double tol) {
  const double f = implicit(s.kind, p);
  if (std::abs(f) <= tol * characteristic_length(s.kind)) return 0;
  return f < 0 ? -1 : 1;
}

// ---------------------------------------------------------------------------
// Analytic properties

double ellipse_perimeter(double a, double b) {
  const double h = ((a - b) / (a + b)) * ((a - b) / (a + b));
  return pi * (a + b) * (1.0 + 3.0 * h / (10.0 + std::sqrt(4.0 - 3.0 * h)));
}

double analytic_volume(const SurfaceKind& k) {
  return std::visit(
      overloaded{
          [](const kind::Plane&) -> double { unbounded(); },
          [](const kind::AxisPlane&) -> double { unbounded(); },
          [](const kind::Sphere& s) { return 4.0 * pi * s.r * s.r * s.r / 3.0; },
          [](const kind::Box& s) { return std::abs(s.e1.dot(s.e2.cross(s.e3))); },
          [](const kind::Rpp& s) {
            return (s.xmax - s.xmin) * (s.ymax - s.ymin) * (s.zmax - s.zmin);
          },
          [](const kind::Rcc& s) { return pi * s.r * s.r * s.h.norm(); },
          [](const kind::Trc& s) {
            return pi * s.h.norm() / 3.0 *
                   (s.r_base * s.r_base + s.r_base * s.r_top + s.r_top * s.r_top);
          },
          [](const kind::Torus& s) { return 2.0 * pi * pi * s.a * s.b * s.c; },
          [](const kind::Rec& s) { return pi * s.v1.norm() * s.v2.norm() * s.h.norm(); },
          [](const kind::Wed& s) { return 0.5 * std::abs(s.e1.dot(s.e2.cross(s.e3))); },
      },
      k);
}

double analytic_area(const SurfaceKind& k) {
  return std::visit(
      overloaded{
          [](const kind::Plane&) -> double { unbounded(); },
          [](const kind::AxisPlane&) -> double { unbounded(); },
          [](const kind::Sphere& s) { return 4.0 * pi * s.r * s.r; },
          [](const kind::Box& s) {
            const double a = s.e1.norm(), b = s.e2.norm(), c = s.e3.norm();
            return 2.0 * (a * b + b * c + a * c);
          },
          [](const kind::Rpp& s) {
            const double a = s.xmax - s.xmin, b = s.ymax - s.ymin, c = s.zmax - s.zmin;
            return 2.0 * (a * b + b * c + a * c);
          },
          [](const kind::Rcc& s) { return 2.0 * pi * s.r * s.h.norm() + 2.0 * pi * s.r * s.r; },
          [](const kind::Trc& s) {
            const double slant = std::hypot(s.h.norm(), s.r_base - s.r_top);
            return pi * slant * (s.r_base + s.r_top) +
                   pi * (s.r_base * s.r_base + s.r_top * s.r_top);
          },
          // Pappus: tube perimeter swept around the major circle.
          [](const kind::Torus& s) { return 2.0 * pi * s.a * ellipse_perimeter(s.b, s.c); },
          [](const kind::Rec& s) {
            const double a = s.v1.norm(), b = s.v2.norm();
            return ellipse_perimeter(a, b) * s.h.norm() + 2.0 * pi * a * b;
          },
          [](const kind::Wed& s) {
            const double a = s.e1.norm(), b = s.e2.norm(), c = s.e3.norm();
            return a * b + (a + b + std::hypot(a, b)) * c;
          },
      },
      k);
}

Vec3 centroid(const SurfaceKind& k) {
  return std::visit(
      overloaded{
          [](const kind::Plane&) -> Vec3 { unbounded(); },
          [](const kind::AxisPlane&) -> Vec3 { unbounded(); },
          [](const kind::Sphere& s) -> Vec3 { return s.center; },
          [](const kind::Box& s) -> Vec3 { return s.base + 0.5 * (s.e1 + s.e2 + s.e3); },
          [](const kind::Rpp& s) -> Vec3 {
            return {0.5 * (s.xmin + s.xmax), 0.5 * (s.ymin + s.ymax), 0.5 * (s.zmin + s.zmax)};
          },
          [](const kind::Rcc& s) -> Vec3 { return s.base + 0.5 * s.h; },
          [](const kind::Trc& s) -> Vec3 {
            const double rb = s.r_base, rt = s.r_top;
            const double frac = (rb * rb + 2 * rb * rt + 3 * rt * rt) / (4 * (rb * rb + rb * rt + rt * rt));
            return s.base + frac * s.h;
          },
          [](const kind::Torus& s) -> Vec3 { return s.center; },
          [](const kind::Rec& s) -> Vec3 { return s.base + 0.5 * s.h; },
          [](const kind::Wed& s) -> Vec3 { return s.vertex + (s.e1 + s.e2) / 3.0 + 0.5 * s.e3; },
      },
      k);
}

Aabb aabb(const SurfaceKind& k) {
  return std::visit(
      overloaded{
          [](const kind::Plane&) -> Aabb { unbounded(); },
          [](const kind::AxisPlane&) -> Aabb { unbounded(); },
          [](const kind::Sphere& s) {
            return Aabb(s.center - Vec3::Constant(s.r), s.center + Vec3::Constant(s.r));
          },
          [](const kind::Box& s) {
            Aabb box;
            for (const auto& c : box_corners(s.base, s.e1, s.e2, s.e3)) box.extend(c);
            return box;
          },
          [](const kind::Rpp& s) {
            return Aabb(Vec3(s.xmin, s.ymin, s.zmin), Vec3(s.xmax, s.ymax, s.zmax));
          },
          [](const kind::Rcc& s) {
            const Vec3 e = disk_half_extent(s.h.normalized(), s.r);
            const Vec3 top = s.base + s.h;
            return aabb_of({s.base - e, s.base + e, top - e, top + e});
          },
          [](const kind::Trc& s) {
            const Vec3 n = s.h.normalized();
            const Vec3 eb = disk_half_extent(n, s.r_base);
            const Vec3 et = disk_half_extent(n, s.r_top);
            const Vec3 top = s.base + s.h;
            return aabb_of({s.base - eb, s.base + eb, top - et, top + et});
          },
          [](const kind::Torus& s) {
            Vec3 e = Vec3::Constant(s.a + s.c);
            e[axis_index(s.axis)] = s.b;
            return Aabb(s.center - e, s.center + e);
          },
          [](const kind::Rec& s) {
            const Vec3 e = ellipse_half_extent(s.v1, s.v2);
            const Vec3 top = s.base + s.h;
            return aabb_of({s.base - e, s.base + e, top - e, top + e});
          },
          [](const kind::Wed& s) {
            const Vec3& v = s.vertex;
            return aabb_of({v, v + s.e1, v + s.e2, v + s.e3, v + s.e1 + s.e3, v + s.e2 + s.e3});
          },
      },
      k);
}

Vec3 label_anchor(const SurfaceKind& k) {
  if (const auto* p = std::get_if<kind::Plane>(&k)) {
    const Vec3 n(p->a, p->b, p->c);
    return n * (p->d / n.squaredNorm());
  }
  if (const auto* p = std::get_if<kind::AxisPlane>(&k)) return axis_unit(p->axis) * p->d;
  return centroid(k);
}

// ---------------------------------------------------------------------------
// Tessellation

TriMesh tessellate(const SurfaceKind& k, int resolution, const TessellationOptions& opts) {
  if (resolution < kMinResolution)
    throw Error(ErrorCode::ResolutionTooLow,
                "resolution must be >= " + std::to_string(kMinResolution) + ", got " +
                    std::to_string(resolution));
  const int segments = 2 * resolution;

  auto plane_quad = [&](const Vec3& normal, const Vec3& origin) {
    const Vec3 u = any_perpendicular(normal) * opts.plane_half_extent;
    const Vec3 v = normal.normalized().cross(u);
    MeshBuilder b;
    const auto c0 = b.add(origin - u - v);
    const auto c1 = b.add(origin + u - v);
    const auto c2 = b.add(origin + u + v);
    const auto c3 = b.add(origin - u + v);
    b.quad(c0, c1, c2, c3);
    return std::move(b.mesh);
  };

  auto cone_stations = [&](const Vec3& base, const Vec3& h, const Vec3& u_dir, const Vec3& v_dir,
                           double rb, double rt) {
    // u_dir, v_dir are unit vectors scaled per ring; zero radius collapses
    // the ring to an apex point.
    std::vector<Station> st;
    const Vec3 top = base + h;
    if (rb > 0) st.push_back({base});
    st.push_back({base, rb * u_dir, rb * v_dir, rb == 0});
    st.push_back({top, rt * u_dir, rt * v_dir, rt == 0});
    if (rt > 0) st.push_back({top});
    return st;
  };

  return std::visit(
      overloaded{
          [&](const kind::Plane& s) {
            const Vec3 n(s.a, s.b, s.c);
            return plane_quad(n, label_anchor(k));
          },
          [&](const kind::AxisPlane& s) { return plane_quad(axis_unit(s.axis), label_anchor(k)); },
          [&](const kind::Sphere& s) {
            std::vector<Station> st;
            st.push_back({s.center - Vec3::UnitZ() * s.r});
            for (int i = 1; i < resolution; ++i) {
              const double theta = pi * i / resolution;
              const double ring = s.r * std::sin(theta);
              st.push_back({s.center - Vec3::UnitZ() * (s.r * std::cos(theta)),
                            Vec3::UnitX() * ring, Vec3::UnitY() * ring, false});
            }
            st.push_back({s.center + Vec3::UnitZ() * s.r});
            return loft(st, segments);
          },
          [&](const kind::Box& s) { return box_mesh(s.base, s.e1, s.e2, s.e3); },
          [&](const kind::Rpp& s) {
            return box_mesh(Vec3(s.xmin, s.ymin, s.zmin), Vec3::UnitX() * (s.xmax - s.xmin),
                            Vec3::UnitY() * (s.ymax - s.ymin), Vec3::UnitZ() * (s.zmax - s.zmin));
          },
          [&](const kind::Rcc& s) {
            const Vec3 u = any_perpendicular(s.h);
            const Vec3 v = s.h.normalized().cross(u);
            return loft(cone_stations(s.base, s.h, u, v, s.r, s.r), segments);
          },
          [&](const kind::Trc& s) {
            const Vec3 u = any_perpendicular(s.h);
            const Vec3 v = s.h.normalized().cross(u);
            return loft(cone_stations(s.base, s.h, u, v, s.r_base, s.r_top), segments);
          },
          [&](const kind::Rec& s) {
            std::vector<Station> st;
            const Vec3 top = s.base + s.h;
            st.push_back({s.base});
            st.push_back({s.base, s.v1, s.v2, false});
            st.push_back({top, s.v1, s.v2, false});
            st.push_back({top});
            return loft(st, segments);
          },
          [&](const kind::Torus& s) {
            const Vec3 axis = axis_unit(s.axis);
            const auto [e_u, e_v] = axis_frame(s.axis);
            MeshBuilder b;
            for (int i = 0; i < segments; ++i) {
              const double u = 2.0 * pi * i / segments;
              const Vec3 radial = std::cos(u) * e_u + std::sin(u) * e_v;
              for (int j = 0; j < segments; ++j) {
                const double v = 2.0 * pi * j / segments;
                b.add(s.center + (s.a + s.c * std::cos(v)) * radial + s.b * std::sin(v) * axis);
              }
            }
            auto id = [&](int i, int j) {
              return static_cast<std::uint32_t>((i % segments) * segments + (j % segments));
            };
            for (int i = 0; i < segments; ++i)
              for (int j = 0; j < segments; ++j)
                b.quad(id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            return std::move(b).finish_closed();
          },
          [&](const kind::Wed& s) {
            const Vec3& v = s.vertex;
            const std::array<Vec3, 6> verts = {v,          v + s.e1,          v + s.e2,
                                               v + s.e3, v + s.e1 + s.e3, v + s.e2 + s.e3};
            const std::vector<std::vector<std::uint32_t>> faces = {
                {0, 1, 2}, {3, 4, 5}, {0, 1, 4, 3}, {1, 2, 5, 4}, {2, 0, 3, 5}};
            return convex_polyhedron(verts, faces, centroid(k));
          },
      },
      k);
}

double mesh_volume(const TriMesh& m) {
  double sum = 0.0;
  for (const auto& t : m.triangles)
    sum += m.vertices[t[0]].dot(m.vertices[t[1]].cross(m.vertices[t[2]]));
  return sum / 6.0;
}

bool is_watertight(const TriMesh& m) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, int> directed;
  for (const auto& t : m.triangles)
    for (int e = 0; e < 3; ++e) {
      const auto key = std::make_pair(t[e], t[(e + 1) % 3]);
      if (key.first == key.second) return false;
      if (++directed[key] > 1) return false;
    }
  for (const auto& [edge, count] : directed)
    if (!directed.contains({edge.second, edge.first})) return false;
  return !m.triangles.empty();
}

Aabb mesh_bounds(const TriMesh& m) {
  Aabb box;
  for (const auto& v : m.vertices) box.extend(v);
  return box;
}

}  // namespace fitsgeo
