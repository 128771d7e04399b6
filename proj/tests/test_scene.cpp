#include <gtest/gtest.h>

#include "json.hpp"

#include "fitsgeo/error.hpp"
#include "fitsgeo/scene.hpp"
#include "fitsgeo/snake.hpp"
#include "support/random_model.hpp"

using namespace fitsgeo;
using nlohmann::json;

namespace {

Model box_model() {
  Model m;
  m.title = "box";
  m.surfaces.push_back(
      make_surface(3, "crate", kind::Box{Vec3::Zero(), Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()}, "orange", 0.7));
  m.cells = {Cell{1, "in", parse_region("-3"), CellMaterial::void_(), {}, {}},
             Cell{2, "out", parse_region("3"), CellMaterial::outer(), {}, {}}};
  return m;
}

}  // namespace

TEST(BuildScene, SingleBox) {
  const auto doc = build_scene(box_model());
  EXPECT_EQ(doc.version, 1);
  ASSERT_EQ(doc.objects.size(), 1u);
  const auto& o = doc.objects[0];
  EXPECT_EQ(o.surface_id, 3);
  EXPECT_EQ(o.kind, "BOX");
  EXPECT_EQ(o.color, "orange");
  EXPECT_EQ(o.angel_color, "orange");
  EXPECT_EQ(o.opacity, 0.7);
  EXPECT_EQ(o.mesh.vertices.size(), 8u);
  EXPECT_FALSE(o.label.has_value());
  EXPECT_TRUE(doc.bbox.min().isApprox(Vec3::Zero()));
  EXPECT_TRUE(doc.bbox.max().isApprox(Vec3::Ones()));

  const json j = json::parse(write_scene(doc));
  EXPECT_EQ(j["version"], 1);
  EXPECT_EQ(j["objects"].size(), 1u);
  EXPECT_EQ(j["objects"][0]["mesh"]["vertices"].size(), 24u);
  EXPECT_TRUE(j["objects"][0]["label"].is_null());
}

TEST(BuildScene, EmptyModel) {
  try {
    build_scene(Model{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyScene);
  }
}

TEST(BuildScene, OpacityOverride) {
  SceneOptions opts;
  opts.opacity_override = 0.5;
  for (const auto& o : build_scene(example_snake({}, default_material_db()), opts).objects) EXPECT_EQ(o.opacity, 0.5);
  opts.opacity_override = 1.5;
  try {
    build_scene(box_model(), opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidOpacity);
  }
}

TEST(BuildScene, ResolutionTooLow) {
  SceneOptions opts;
  opts.resolution = 2;
  try {
    build_scene(box_model(), opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ResolutionTooLow);
  }
}

TEST(BuildScene, SnakeWithLabels) {
  SceneOptions opts;
  opts.labels = true;
  const auto doc = build_scene(example_snake({}, default_material_db()), opts);
  ASSERT_EQ(doc.objects.size(), 51u);
  for (const auto& o : doc.objects) {
    ASSERT_TRUE(o.label.has_value());
    EXPECT_EQ(o.label->text, o.name);
  }
  EXPECT_EQ(doc.objects.back().kind, "TRC");
  EXPECT_EQ(doc.objects.back().color, "red");
}

TEST(BuildScene, PlaneLabelIsNearestPointToOrigin) {
  Model m;
  m.surfaces.push_back(make_surface(1, "p", kind::Plane{0, 0, 2, 4}));
  m.surfaces.push_back(make_surface(2, "b", kind::Sphere{Vec3::Zero(), 1}));
  m.cells = {Cell{1, "in", parse_region("-1 -2"), CellMaterial::void_(), {}, {}},
             Cell{2, "out", parse_region("2"), CellMaterial::outer(), {}, {}}};
  SceneOptions opts;
  opts.labels = true;
  const auto doc = build_scene(m, opts);
  EXPECT_TRUE(doc.objects[0].label->anchor.isApprox(Vec3(0, 0, 2)));
}

TEST(SceneProperties, AnchorsInsideAabbAndCentroid) {
  fitsgeo::testing::Rng rng(61);
  SceneOptions opts;
  opts.labels = true;
  opts.resolution = 6;
  for (int i = 0; i < 30; ++i) {
    const auto m = fitsgeo::testing::random_model(rng);
    const auto doc = build_scene(m, opts);
    ASSERT_EQ(doc.objects.size(), m.surfaces.size());
    for (std::size_t k = 0; k + 1 < doc.objects.size(); ++k)
      EXPECT_LT(doc.objects[k].surface_id, doc.objects[k + 1].surface_id);
    for (const auto& o : doc.objects) {
      const Surface* s = m.find_surface(o.surface_id);
      const Aabb box = is_bounded(s->kind) ? aabb(s->kind) : mesh_bounds(o.mesh);
      const Vec3 a = o.label->anchor;
      const Vec3 slack = Vec3::Constant(1e-9 * (1 + box.diagonal().norm()));
      EXPECT_TRUE((a.array() >= (box.min() - slack).array()).all() && (a.array() <= (box.max() + slack).array()).all());
      if (is_bounded(s->kind)) EXPECT_TRUE(a.isApprox(centroid(s->kind), 1e-12));
      EXPECT_FALSE(o.mesh.triangles.empty());
    }
  }
}

TEST(WriteScene, DeterministicAndCanonical) {
  const auto m = example_snake({}, default_material_db());
  const std::string a = write_scene(build_scene(m));
  const std::string b = write_scene(build_scene(m));
  EXPECT_EQ(a, b);
  const json j = json::parse(a);
  EXPECT_EQ(j["version"], 1);
  EXPECT_EQ(j["title"], "Snake");
  ASSERT_EQ(j["objects"].size(), 51u);
  for (const auto& o : j["objects"]) {
    EXPECT_EQ(o["mesh"]["vertices"].size() % 3, 0u);
    EXPECT_EQ(o["mesh"]["triangles"].size() % 3, 0u);
    EXPECT_EQ(o["rgb"].size(), 3u);
  }
}
