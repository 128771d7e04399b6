#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "fitsgeo/error.hpp"
#include "fitsgeo/model.hpp"
#include "support/random_model.hpp"

using namespace fitsgeo;
using fitsgeo::testing::Rng;

namespace {

Model sphere_model(const std::string& region = "-10") {
  Model m;
  m.surfaces.push_back(make_surface(10, "ball", kind::Sphere{Vec3::Zero(), 1.0}));
  m.materials.push_back(define_material(1, "water", 1.0, {{"H", 2}, {"O", 1}}));
  Cell inside;
  inside.id = 1;
  inside.region = parse_region(region);
  inside.material = CellMaterial::ref(1);
  Cell outer;
  outer.id = 2;
  outer.region = parse_region("10");
  outer.material = CellMaterial::outer();
  m.cells = {inside, outer};
  return m;
}

bool has_code(const std::vector<Diagnostic>& ds, std::string_view code, Severity sev) {
  return std::any_of(ds.begin(), ds.end(), [&](const Diagnostic& d) { return d.code == code && d.severity == sev; });
}

}  // namespace

TEST(CellContains, Examples) {
  const auto m = sphere_model();
  EXPECT_TRUE(cell_contains(m, 1, Vec3(0, 0, 0)));
  EXPECT_FALSE(cell_contains(m, 1, Vec3(2, 0, 0)));
  EXPECT_TRUE(cell_contains(m, 2, Vec3(2, 0, 0)));
  const auto c = sphere_model("#(-10)");
  EXPECT_FALSE(cell_contains(c, 1, Vec3(0, 0, 0)));
  try {
    cell_contains(m, 42, Vec3::Zero());
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnknownCell);
  }
}

TEST(CellContains, OnSurfacePointsArePositive) {
  const auto m = sphere_model();
  EXPECT_FALSE(cell_contains(m, 1, Vec3(1, 0, 0)));
  EXPECT_TRUE(cell_contains(m, 2, Vec3(1, 0, 0)));
}

TEST(McVolume, UnitSphere) {
  const auto m = sphere_model();
  VolumeOptions opts;
  opts.samples = 1'000'000;
  opts.seed = 2024;
  opts.box = Aabb(Vec3(-1, -1, -1), Vec3(1, 1, 1));
  const auto r = mc_cell_volume(m, 1, opts);
  EXPECT_LE(std::abs(r.estimate - 4.18879020478639), 4 * r.std_error);
  // 8 * sqrt(p (1 - p) / n) with p = pi / 6
  EXPECT_NEAR(r.std_error, 0.0039955, 2e-5);
  EXPECT_EQ(r.samples, 1'000'000);
  EXPECT_EQ(r.seed, 2024u);
  EXPECT_DOUBLE_EQ(r.estimate, 8.0 * static_cast<double>(r.hits) / 1e6);
}

TEST(McVolume, EmptyCell) {
  const auto m = sphere_model("-10 +10");
  VolumeOptions opts;
  opts.samples = 10000;
  const auto r = mc_cell_volume(m, 1, opts);
  EXPECT_EQ(r.hits, 0);
  EXPECT_EQ(r.estimate, 0.0);
  EXPECT_EQ(r.std_error, 0.0);
}

TEST(McVolume, Preconditions) {
  const auto m = sphere_model();
  VolumeOptions opts;
  opts.samples = 0;
  auto code = [&](int cell, const VolumeOptions& o) {
    try {
      mc_cell_volume(m, cell, o);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Io;
  };
  EXPECT_EQ(code(1, opts), ErrorCode::PreconditionFailed);
  opts.samples = 10;
  EXPECT_EQ(code(9, opts), ErrorCode::UnknownCell);

  Model half = sphere_model();
  half.surfaces.push_back(make_surface(11, "floor", kind::AxisPlane{Axis::Z, 0}));
  half.cells[0].region = parse_region("-11");
  try {
    mc_cell_volume(half, 1, opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnboundedRegionNeedsBox);
  }
  opts.box = Aabb(Vec3(-1, -1, -1), Vec3(1, 1, 1));
  opts.samples = 100000;
  const auto r = mc_cell_volume(half, 1, opts);
  EXPECT_LE(std::abs(r.estimate - 4.0), 4 * r.std_error);
}

TEST(McVolume, DeterministicAcrossThreadCounts) {
  VolumeOptions opts;
  opts.samples = 200'001;
  opts.seed = 77;
  opts.box = Aabb(Vec3(-1.5, -1, -1), Vec3(1, 1.2, 1));
  const auto ref = mc_cell_volume(sphere_model(), 1, opts);
  for (unsigned t : {1u, 2u, 3u, 7u, 16u}) {
    opts.threads = t;
    const auto r = mc_cell_volume(sphere_model(), 1, opts);
    EXPECT_EQ(r.hits, ref.hits);
    EXPECT_EQ(r.estimate, ref.estimate);
    EXPECT_EQ(r.std_error, ref.std_error);
  }
  opts.seed = 78;
  EXPECT_NE(mc_cell_volume(sphere_model(), 1, opts).hits, ref.hits);
}

TEST(UnitCubeSample, InRangeAndKeyed) {
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const Vec3 p = unit_cube_sample(3, i);
    for (int k = 0; k < 3; ++k) {
      EXPECT_GE(p[k], 0.0);
      EXPECT_LT(p[k], 1.0);
    }
    EXPECT_EQ(p, unit_cube_sample(3, i));
  }
  EXPECT_NE(unit_cube_sample(3, 0), unit_cube_sample(4, 0));
}

TEST(ValidateModel, CleanModel) {
  const auto ds = validate_model(sphere_model());
  EXPECT_FALSE(has_errors(ds));
}

TEST(ValidateModel, StructuralErrors) {
  auto m = sphere_model();
  m.cells.push_back(m.cells[0]);
  EXPECT_TRUE(has_code(validate_model(m), "DuplicateCellId", Severity::Error));

  m = sphere_model();
  m.cells.pop_back();
  EXPECT_TRUE(has_code(validate_model(m), "MissingOuter", Severity::Error));

  m = sphere_model();
  m.cells.push_back(m.cells[1]);
  m.cells.back().id = 3;
  EXPECT_TRUE(has_code(validate_model(m), "MultipleOuter", Severity::Error));

  m = sphere_model();
  m.cells[1].density_override = 1.0;
  EXPECT_TRUE(has_code(validate_model(m), "OuterWithDensity", Severity::Error));

  m = sphere_model("-10 -99");
  EXPECT_TRUE(has_code(validate_model(m), "DanglingSurfaceRef", Severity::Error));

  m = sphere_model();
  m.cells[0].material = CellMaterial::ref(5);
  EXPECT_TRUE(has_code(validate_model(m), "DanglingMaterialRef", Severity::Error));

  m = sphere_model();
  m.surfaces.push_back(m.surfaces[0]);
  EXPECT_TRUE(has_code(validate_model(m), "DuplicateSurfaceId", Severity::Error));

  m = sphere_model();
  m.materials.push_back(m.materials[0]);
  EXPECT_TRUE(has_code(validate_model(m), "DuplicateMaterialId", Severity::Error));
}

TEST(ValidateModel, Warnings) {
  auto m = sphere_model();
  m.surfaces.push_back(make_surface(11, "spare", kind::Sphere{Vec3(5, 0, 0), 1.0}));
  auto ds = validate_model(m);
  EXPECT_FALSE(has_errors(ds));
  EXPECT_TRUE(has_code(ds, "UnusedSurface", Severity::Warning));

  m = sphere_model("-10 10");
  ds = validate_model(m);
  EXPECT_FALSE(has_errors(ds));
  EXPECT_TRUE(has_code(ds, "EmptyCell", Severity::Warning));
}

TEST(ModelProperties, DeMorganPointwise) {
  Rng rng(31);
  for (int i = 0; i < 20; ++i) {
    Model m = fitsgeo::testing::random_model(rng);
    std::vector<int> ids;
    for (const auto& s : m.surfaces) ids.push_back(s.id);
    const auto a = fitsgeo::testing::random_region(rng, ids, 3);
    const auto b = fitsgeo::testing::random_region(rng, ids, 3);
    Cell lhs{100, "lhs", complement(unite({a, b})), CellMaterial::void_(), {}, {}};
    Cell rhs{101, "rhs", intersect({complement(a), complement(b)}), CellMaterial::void_(), {}, {}};
    m.cells.push_back(lhs);
    m.cells.push_back(rhs);
    for (int k = 0; k < 1000; ++k) {
      const Vec3 p = fitsgeo::testing::random_point(rng, 8);
      ASSERT_EQ(cell_contains(m, 100, p), cell_contains(m, 101, p));
    }
  }
}

TEST(ModelProperties, RandomModelsValidate) {
  Rng rng(32);
  for (int i = 0; i < 30; ++i) {
    const auto ds = validate_model(fitsgeo::testing::random_model(rng));
    for (const auto& d : ds) EXPECT_NE(d.severity, Severity::Error) << format_diagnostic(d);
  }
}
