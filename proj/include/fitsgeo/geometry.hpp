#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <Eigen/Geometry>

namespace fitsgeo {

/// Positions and direction vectors, in cm.
using Vec3 = Eigen::Vector3d;
using Aabb = Eigen::AlignedBox3d;

enum class Axis { X, Y, Z };

/// Surface primitives. Each struct mirrors the parameter list of the
/// matching PHITS surface card.
namespace kind {

/// a*x + b*y + c*z = d
struct Plane {
  double a, b, c, d;
};
/// Axis-normal plane, e.g. x = d for Axis::X.
struct AxisPlane {
  Axis axis;
  double d;
};
struct Sphere {
  Vec3 center;
  double r;
};
/// Right parallelepiped spanned by three orthogonal edges from `base`.
struct Box {
  Vec3 base, e1, e2, e3;
};
struct Rpp {
  double xmin, xmax, ymin, ymax, zmin, zmax;
};
/// Right circular cylinder; |h| is the height.
struct Rcc {
  Vec3 base, h;
  double r;
};
/// Truncated right circular cone.
struct Trc {
  Vec3 base, h;
  double r_base, r_top;
};
/// Elliptical torus around an axis-parallel line through `center`.
/// a: major radius, b: tube semi-axis along the torus axis, c: radial one.
struct Torus {
  Axis axis;
  Vec3 center;
  double a, b, c;
};
/// Right elliptical cylinder with semi-axis vectors v1 (major) and v2.
struct Rec {
  Vec3 base, h, v1, v2;
};
/// Right wedge: the half of a Box below the e1-e2 diagonal.
struct Wed {
  Vec3 vertex, e1, e2, e3;
};

}  // namespace kind

using SurfaceKind = std::variant<kind::Plane, kind::AxisPlane, kind::Sphere, kind::Box,
                                 kind::Rpp, kind::Rcc, kind::Trc, kind::Torus,
                                 kind::Rec, kind::Wed>;

struct Surface {
  int id = 0;
  std::string name;
  SurfaceKind kind;
  std::string color;
  double opacity = 1.0;
  /// Excluded from scene building when set (e.g. world-bounding spheres).
  bool hidden = false;
};

struct TriMesh {
  std::vector<Vec3> vertices;
  std::vector<std::array<std::uint32_t, 3>> triangles;
};

struct TessellationOptions {
  /// Half-edge of the square drawn for planes.
  double plane_half_extent = 10.0;
};

/// Angular tolerance (rad) for the orthogonality checks on edge vectors.
inline constexpr double kOrthogonalityTolerance = 1e-9;
inline constexpr int kMinResolution = 3;

// Construction and parameters

/// Throws DegenerateGeometry when the kind's parameters violate its
/// invariants (non-positive radii, inverted intervals, skew edges, ...).
void validate_kind(const SurfaceKind& k);

/// Checked constructor; throws DegenerateGeometry, InvalidId,
/// InvalidOpacity or UnknownColor.
Surface make_surface(int id, std::string name, SurfaceKind k,
                     std::string color = "gray", double opacity = 1.0);

/// PHITS mnemonic: P, PX, PY, PZ, SPH, BOX, RPP, RCC, TRC, TX, TY, TZ, REC, WED.
std::string_view mnemonic(const SurfaceKind& k);

/// Flat parameter list in PHITS card order.
std::vector<double> parameters(const SurfaceKind& k);

/// Inverse of mnemonic()/parameters(). Mnemonic matching is case-insensitive.
/// Throws ParseError on unknown mnemonics or wrong arity; does not validate.
SurfaceKind kind_from_parameters(std::string_view mnemonic, std::span<const double> params);

/// Number of parameters the mnemonic takes, or -1 if unknown.
int parameter_count(std::string_view mnemonic);

bool is_bounded(const SurfaceKind& k);

// Point classification

/// Signed implicit function, negative inside. Lengths are in cm for every
/// kind except the torus, whose value is the normalized tube equation scaled
/// by min(b, c).
double implicit(const SurfaceKind& k, const Vec3& p);

/// Largest characteristic length; planes use max(1, distance to origin).
double characteristic_length(const SurfaceKind& k);

/// -1 inside, +1 outside, 0 when |implicit| <= tol * characteristic_length.
int sense(const Surface& s, const Vec3& p, double tol = 0.0);

// Analytic properties (bounded kinds only; planes throw UnboundedSurface)

double analytic_volume(const SurfaceKind& k);
/// Exact except for elliptical cross-sections (REC, torus with b != c),
/// whose perimeters use Ramanujan's second approximation.
double analytic_area(const SurfaceKind& k);
Vec3 centroid(const SurfaceKind& k);
Aabb aabb(const SurfaceKind& k);

inline double analytic_volume(const Surface& s) { return analytic_volume(s.kind); }
inline double analytic_area(const Surface& s) { return analytic_area(s.kind); }
inline Vec3 centroid(const Surface& s) { return centroid(s.kind); }
inline Aabb aabb(const Surface& s) { return aabb(s.kind); }

/// Ramanujan's second approximation of an ellipse perimeter.
double ellipse_perimeter(double a, double b);

/// Centroid for bounded kinds; for planes, the point nearest the origin.
Vec3 label_anchor(const SurfaceKind& k);

// Tessellation

/// Closed, outward-oriented triangle mesh for bounded kinds (a square for
/// planes). Curved kinds use 2*resolution segments around each circle.
/// Throws ResolutionTooLow when resolution < 3.
TriMesh tessellate(const SurfaceKind& k, int resolution, const TessellationOptions& opts = {});
inline TriMesh tessellate(const Surface& s, int resolution, const TessellationOptions& opts = {}) {
  return tessellate(s.kind, resolution, opts);
}

/// Signed volume enclosed by the mesh (divergence theorem).
double mesh_volume(const TriMesh& m);
/// Every undirected edge is used by exactly two triangles, once per direction.
bool is_watertight(const TriMesh& m);
Aabb mesh_bounds(const TriMesh& m);

}  // namespace fitsgeo
