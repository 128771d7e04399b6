#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fitsgeo/error.hpp"
#include "fitsgeo/geometry.hpp"
#include "support/random_model.hpp"

using namespace fitsgeo;
using fitsgeo::testing::Rng;

namespace {

constexpr double kPi = std::numbers::pi;

template <class F>
ErrorCode code_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no exception";
  return ErrorCode::Io;
}

Surface unit_sphere(int id = 10) { return make_surface(id, "s", kind::Sphere{Vec3::Zero(), 1.0}); }

SurfaceKind scaled(const SurfaceKind& k, double s) {
  return std::visit(
      [s](auto v) -> SurfaceKind {
        using T = decltype(v);
        if constexpr (std::is_same_v<T, kind::Sphere>) return kind::Sphere{v.center * s, v.r * s};
        else if constexpr (std::is_same_v<T, kind::Box>) return kind::Box{v.base * s, v.e1 * s, v.e2 * s, v.e3 * s};
        else if constexpr (std::is_same_v<T, kind::Rpp>)
          return kind::Rpp{v.xmin * s, v.xmax * s, v.ymin * s, v.ymax * s, v.zmin * s, v.zmax * s};
        else if constexpr (std::is_same_v<T, kind::Rcc>) return kind::Rcc{v.base * s, v.h * s, v.r * s};
        else if constexpr (std::is_same_v<T, kind::Trc>) return kind::Trc{v.base * s, v.h * s, v.r_base * s, v.r_top * s};
        else if constexpr (std::is_same_v<T, kind::Torus>) return kind::Torus{v.axis, v.center * s, v.a * s, v.b * s, v.c * s};
        else if constexpr (std::is_same_v<T, kind::Rec>) return kind::Rec{v.base * s, v.h * s, v.v1 * s, v.v2 * s};
        else if constexpr (std::is_same_v<T, kind::Wed>) return kind::Wed{v.vertex * s, v.e1 * s, v.e2 * s, v.e3 * s};
        else return v;
      },
      k);
}

}  // namespace

TEST(MakeSurface, AcceptsMinimalSphere) {
  const auto s = unit_sphere();
  EXPECT_EQ(s.id, 10);
  EXPECT_TRUE(std::holds_alternative<kind::Sphere>(s.kind));
}

TEST(MakeSurface, RejectsBadInput) {
  EXPECT_EQ(code_of([] { make_surface(1, "r", kind::Rpp{1, 0, 0, 1, 0, 1}); }), ErrorCode::DegenerateGeometry);
  EXPECT_EQ(code_of([] {
              make_surface(1, "b", kind::Box{Vec3::Zero(), Vec3(1, 0, 0), Vec3(1, 1, 0), Vec3(0, 0, 1)});
            }),
            ErrorCode::DegenerateGeometry);
  EXPECT_EQ(code_of([] { make_surface(1, "s", kind::Sphere{Vec3::Zero(), 0.0}); }), ErrorCode::DegenerateGeometry);
  EXPECT_EQ(code_of([] { make_surface(0, "s", kind::Sphere{Vec3::Zero(), 1.0}); }), ErrorCode::InvalidId);
  EXPECT_EQ(code_of([] { make_surface(1, "s", kind::Sphere{Vec3::Zero(), 1.0}, "gray", 1.5); }),
            ErrorCode::InvalidOpacity);
  EXPECT_EQ(code_of([] { make_surface(1, "s", kind::Sphere{Vec3::Zero(), 1.0}, "salmonpink"); }),
            ErrorCode::UnknownColor);
  EXPECT_EQ(code_of([] { make_surface(1, "t", kind::Torus{Axis::Z, Vec3::Zero(), 1, 1, 2}); }),
            ErrorCode::DegenerateGeometry);
  EXPECT_EQ(code_of([] { make_surface(1, "p", kind::Plane{0, 0, 0, 1}); }), ErrorCode::DegenerateGeometry);
  EXPECT_EQ(code_of([] { make_surface(1, "t", kind::Trc{Vec3::Zero(), Vec3::UnitZ(), 0, 0}); }),
            ErrorCode::DegenerateGeometry);
  EXPECT_EQ(code_of([] {
              make_surface(1, "e", kind::Rec{Vec3::Zero(), Vec3::UnitZ(), Vec3(0, 1, 0), Vec3(2, 0, 0)});
            }),
            ErrorCode::DegenerateGeometry);
}

TEST(Sense, Examples) {
  const auto s = unit_sphere();
  EXPECT_EQ(sense(s, Vec3(0, 0, 0), 0), -1);
  EXPECT_EQ(sense(s, Vec3(2, 0, 0), 0), 1);
  EXPECT_EQ(sense(s, Vec3(1, 0, 0), 1e-9), 0);
  const auto pz = make_surface(2, "pz", kind::AxisPlane{Axis::Z, 0.0});
  EXPECT_EQ(sense(pz, Vec3(5, 5, -1), 0), -1);
  const auto torus = make_surface(3, "t", kind::Torus{Axis::Z, Vec3::Zero(), 3, 1, 1});
  EXPECT_EQ(sense(torus, Vec3(3, 0, 0), 0), -1);
  EXPECT_DOUBLE_EQ(implicit(torus.kind, Vec3(3, 0, 0)), -1.0);
  EXPECT_EQ(sense(torus, Vec3(0, 0, 0), 0), 1);
}

TEST(AnalyticVolume, Examples) {
  EXPECT_NEAR(analytic_volume(kind::Sphere{Vec3::Zero(), 1}), 4.188790204786391, 1e-15);
  EXPECT_NEAR(analytic_volume(kind::Trc{Vec3::Zero(), Vec3(0, 0, 3), 2, 1}), 21.991148575128552, 1e-13);
  EXPECT_NEAR(analytic_volume(kind::Torus{Axis::Z, Vec3::Zero(), 3, 1, 1}), 59.21762640653615, 1e-12);
  EXPECT_NEAR(analytic_volume(kind::Box{Vec3::Zero(), Vec3(2, 0, 0), Vec3(0, 3, 0), Vec3(0, 0, 4)}), 24, 1e-12);
  EXPECT_NEAR(analytic_volume(kind::Wed{Vec3::Zero(), Vec3(2, 0, 0), Vec3(0, 3, 0), Vec3(0, 0, 4)}), 12, 1e-12);
  EXPECT_NEAR(analytic_volume(kind::Rec{Vec3::Zero(), Vec3(0, 0, 2), Vec3(3, 0, 0), Vec3(0, 1, 0)}), 6 * kPi, 1e-12);
  try {
    analytic_volume(kind::AxisPlane{Axis::X, 2});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnboundedSurface);
  }
}

TEST(AnalyticArea, Examples) {
  EXPECT_NEAR(analytic_area(kind::Sphere{Vec3::Zero(), 1}), 12.566370614359172, 1e-14);
  EXPECT_NEAR(analytic_area(kind::Rcc{Vec3::Zero(), Vec3(0, 0, 2), 1}), 18.84955592153876, 1e-13);
  EXPECT_NEAR(analytic_area(kind::Torus{Axis::Z, Vec3::Zero(), 3, 1, 1}), 118.4352528130723, 1e-12);
  EXPECT_NEAR(analytic_area(kind::Rpp{0, 1, 0, 2, 0, 3}), 22, 1e-12);
  // frustum: slant 5 from radii 4, 1 and height 4
  EXPECT_NEAR(analytic_area(kind::Trc{Vec3::Zero(), Vec3(0, 0, 4), 4, 1}), kPi * (5 * 5 + 16 + 1), 1e-12);
}

TEST(EllipsePerimeter, AgreesWithEllipticIntegral) {
  // 4a E(1 - b^2/a^2) for a=3, b=1, evaluated with arbitrary precision.
  EXPECT_NEAR(ellipse_perimeter(3, 1), 13.364893220555258, 13.36 * 1e-6);
  EXPECT_NEAR(ellipse_perimeter(2, 2), 4 * kPi, 1e-12);
}

TEST(Centroid, Examples) {
  EXPECT_TRUE(centroid(kind::Sphere{Vec3(1, 2, 3), 1}).isApprox(Vec3(1, 2, 3)));
  EXPECT_TRUE(centroid(kind::Rpp{0, 2, 0, 2, 0, 2}).isApprox(Vec3(1, 1, 1)));
  EXPECT_TRUE(centroid(kind::Trc{Vec3::Zero(), Vec3(0, 0, 4), 1, 1}).isApprox(Vec3(0, 0, 2)));
  // cone apex up: centroid at h/4
  EXPECT_NEAR(centroid(kind::Trc{Vec3::Zero(), Vec3(0, 0, 4), 1, 0}).z(), 1.0, 1e-12);
  EXPECT_TRUE(centroid(kind::Wed{Vec3::Zero(), Vec3(3, 0, 0), Vec3(0, 3, 0), Vec3(0, 0, 2)}).isApprox(Vec3(1, 1, 1)));
}

TEST(Aabb, Examples) {
  auto check = [](const Aabb& b, Vec3 lo, Vec3 hi) {
    EXPECT_TRUE(b.min().isApprox(lo, 1e-12)) << b.min().transpose();
    EXPECT_TRUE(b.max().isApprox(hi, 1e-12)) << b.max().transpose();
  };
  check(aabb(kind::Sphere{Vec3::Zero(), 2}), Vec3(-2, -2, -2), Vec3(2, 2, 2));
  check(aabb(kind::Torus{Axis::Z, Vec3::Zero(), 3, 1, 1}), Vec3(-4, -4, -1), Vec3(4, 4, 1));
  check(aabb(kind::Rcc{Vec3::Zero(), Vec3(0, 0, 5), 1}), Vec3(-1, -1, 0), Vec3(1, 1, 5));
  check(aabb(kind::Torus{Axis::X, Vec3(1, 0, 0), 3, 0.5, 1}), Vec3(0.5, -4, -4), Vec3(1.5, 4, 4));
}

TEST(Tessellate, Examples) {
  const auto box = tessellate(kind::Box{Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()}, 7);
  EXPECT_EQ(box.vertices.size(), 8u);
  EXPECT_EQ(box.triangles.size(), 12u);
  EXPECT_TRUE(is_watertight(box));
  EXPECT_NEAR(mesh_volume(box), 1.0, 1e-12);

  const auto sph = tessellate(kind::Sphere{Vec3::Zero(), 1}, 16);
  EXPECT_TRUE(is_watertight(sph));
  EXPECT_NEAR(mesh_volume(sph), 4 * kPi / 3, 0.02 * 4 * kPi / 3);

  try {
    tessellate(kind::Sphere{Vec3::Zero(), 1}, 2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ResolutionTooLow);
  }
}

TEST(Tessellate, PlaneQuadHasConfigurableExtent) {
  TessellationOptions opts;
  opts.plane_half_extent = 3;
  const auto m = tessellate(kind::AxisPlane{Axis::Y, 2}, 8, opts);
  EXPECT_EQ(m.triangles.size(), 2u);
  const auto b = mesh_bounds(m);
  EXPECT_NEAR(b.min().y(), 2, 1e-12);
  EXPECT_NEAR(b.max().y(), 2, 1e-12);
  EXPECT_NEAR(b.max().x() - b.min().x(), 6, 1e-12);
}

// Property tests over random shapes of every bounded kind.

TEST(GeometryProperties, CentroidInsideAndOutsideBoxIsPositive) {
  Rng rng(11);
  for (int i = 0; i < 500; ++i) {
    const auto s = make_surface(1, "x", fitsgeo::testing::random_bounded_kind(rng, i));
    if (const auto* t = std::get_if<kind::Torus>(&s.kind)) {
      // the centre of a ring torus lies in the hole; the tube circle is interior
      EXPECT_EQ(sense(s, centroid(s), 0), 1);
      const int ax = static_cast<int>(t->axis);
      Vec3 radial = Vec3::Zero();
      radial[(ax + 1) % 3] = t->a;
      EXPECT_EQ(sense(s, t->center + radial, 0), -1);
    } else {
      EXPECT_EQ(sense(s, centroid(s), 0), -1) << mnemonic(s.kind);
    }
    const Aabb b = aabb(s);
    const Vec3 outside = b.max() + Vec3::Constant(1e-6 + 1e-3 * b.diagonal().norm());
    EXPECT_EQ(sense(s, outside, 0), 1);
    EXPECT_EQ(sense(s, b.min() - Vec3(0, 0, 1e-3), 0), 1);
  }
}

TEST(GeometryProperties, ScaleEquivariance) {
  Rng rng(12);
  for (int i = 0; i < 300; ++i) {
    const auto k = fitsgeo::testing::random_bounded_kind(rng, i);
    const double s = fitsgeo::testing::uniform(rng, 0.1, 10);
    const auto ks = scaled(k, s);
    EXPECT_NEAR(analytic_volume(ks) / analytic_volume(k), s * s * s, 1e-12 * s * s * s) << mnemonic(k);
    EXPECT_NEAR(analytic_area(ks) / analytic_area(k), s * s, 1e-12 * s * s) << mnemonic(k);
  }
}

TEST(GeometryProperties, PlaneSenseAntisymmetry) {
  Rng rng(13);
  for (int i = 0; i < 2000; ++i) {
    const Vec3 n = fitsgeo::testing::random_point(rng, 1);
    const double d = fitsgeo::testing::uniform(rng, -3, 3);
    const auto p1 = make_surface(1, "p", kind::Plane{n.x(), n.y(), n.z(), d});
    const auto p2 = make_surface(2, "q", kind::Plane{-n.x(), -n.y(), -n.z(), -d});
    const Vec3 p = fitsgeo::testing::random_point(rng, 5);
    const int a = sense(p1, p, 1e-9);
    if (a != 0) EXPECT_EQ(a, -sense(p2, p, 1e-9));
  }
}

TEST(GeometryProperties, MeshVerticesLieOnSurface) {
  Rng rng(14);
  for (int i = 0; i < 100; ++i) {
    const auto k = fitsgeo::testing::random_bounded_kind(rng, i);
    const auto m = tessellate(k, 12);
    const double scale = characteristic_length(k);
    for (const auto& v : m.vertices) ASSERT_LE(std::abs(implicit(k, v)), 1e-9 * scale) << mnemonic(k);
    EXPECT_TRUE(is_watertight(m)) << mnemonic(k);
    EXPECT_GT(mesh_volume(m), 0) << mnemonic(k);
  }
}

TEST(GeometryProperties, NoDegenerateTriangles) {
  Rng rng(15);
  for (int i = 0; i < 100; ++i) {
    const auto k = fitsgeo::testing::random_bounded_kind(rng, i);
    const auto m = tessellate(k, 5);
    for (const auto& t : m.triangles) {
      const Vec3 e1 = m.vertices[t[1]] - m.vertices[t[0]];
      const Vec3 e2 = m.vertices[t[2]] - m.vertices[t[0]];
      ASSERT_GT(e1.cross(e2).norm(), 0.0) << mnemonic(k);
    }
  }
}

TEST(Parameters, RoundTripThroughMnemonic) {
  Rng rng(16);
  for (int i = 0; i < 200; ++i) {
    const auto k = i % 5 == 0 ? fitsgeo::testing::random_plane_kind(rng) : fitsgeo::testing::random_bounded_kind(rng, i);
    const auto params = parameters(k);
    EXPECT_EQ(static_cast<int>(params.size()), parameter_count(mnemonic(k)));
    const auto back = kind_from_parameters(mnemonic(k), params);
    EXPECT_EQ(parameters(back), params);
    EXPECT_EQ(mnemonic(back), mnemonic(k));
  }
}
