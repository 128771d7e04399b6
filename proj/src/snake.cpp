#include "fitsgeo/snake.hpp"

#include <cmath>

#include "fitsgeo/error.hpp"

namespace fitsgeo {

double SnakeParams::z(double xv) const {
  return amplitude * std::sin(frequency * xv) * damping_scale * std::exp(-damping_rate * xv);
}

double SnakeParams::r(double xv) const { return r0 * std::exp(growth * xv); }

Model example_snake(const SnakeParams& p, const MaterialDb& db) {
  if (p.n_segments < 2) throw Error(ErrorCode::PreconditionFailed, "snake needs at least 2 segments");
  if (!(p.x_max > 0)) throw Error(ErrorCode::PreconditionFailed, "x_max must be > 0");
  if (!(p.r0 > 0)) throw Error(ErrorCode::PreconditionFailed, "r0 must be > 0");

  Model m;
  m.title = "Snake";
  const Material skin = material_from_db(db, "ICRP skin", 1);
  const Material hat_material = material_from_db(db, "Polyethylene", 2);
  m.materials = {skin, hat_material};

  std::vector<kind::Sphere> segments;
  for (int i = 0; i < p.n_segments; ++i) {
    const double x = p.x(i);
    kind::Sphere s{Vec3(x, 0.0, p.z(x)), p.r(x)};
    segments.push_back(s);
    m.surfaces.push_back(make_surface(i + 1, "seg" + std::to_string(i), s, "pastelgreen"));
  }

  const kind::Sphere& head = segments.back();
  const kind::Trc hat{head.center + Vec3(0, 0, head.r), Vec3(0, 0, 1.5 * head.r), head.r, 0.4 * head.r};
  const int hat_id = p.n_segments + 1;
  m.surfaces.push_back(make_surface(hat_id, "hat", hat, "red"));

  Aabb all = aabb(hat);
  for (const auto& s : segments) all.extend(aabb(s));
  const int world_id = hat_id + 1;
  const double world_r = 0.6 * all.diagonal().norm();
  Surface world = make_surface(world_id, "world", kind::Sphere{all.center(), world_r}, "white", 0.1);
  world.hidden = true;
  m.surfaces.push_back(world);

  for (int i = 0; i < p.n_segments; ++i) {
    std::vector<RegionExpr> terms{SenseRef{i + 1, Sign::Negative}};
    for (int j = 0; j < i; ++j) {
      const double gap = (segments[i].center - segments[j].center).norm();
      if (gap < segments[i].r + segments[j].r) terms.push_back(SenseRef{j + 1, Sign::Positive});
    }
    Cell c;
    c.id = i + 1;
    c.name = "seg" + std::to_string(i);
    c.region = intersect(std::move(terms));
    c.material = CellMaterial::ref(skin.id);
    m.cells.push_back(std::move(c));
  }

  std::vector<RegionExpr> hat_terms{SenseRef{hat_id, Sign::Negative}};
  const Aabb hat_box = aabb(hat);
  for (int j = 0; j < p.n_segments; ++j)
    if (hat_box.intersects(aabb(segments[j]))) hat_terms.push_back(SenseRef{j + 1, Sign::Positive});
  Cell hat_cell;
  hat_cell.id = hat_id;
  hat_cell.name = "hat";
  hat_cell.region = intersect(std::move(hat_terms));
  hat_cell.material = CellMaterial::ref(hat_material.id);
  m.cells.push_back(std::move(hat_cell));

  std::vector<RegionExpr> void_terms{SenseRef{world_id, Sign::Negative}};
  for (int id = 1; id <= hat_id; ++id) void_terms.push_back(SenseRef{id, Sign::Positive});
  Cell void_cell;
  void_cell.id = world_id;
  void_cell.name = "void";
  void_cell.region = intersect(std::move(void_terms));
  void_cell.material = CellMaterial::void_();
  m.cells.push_back(std::move(void_cell));

  Cell outer;
  outer.id = world_id + 1;
  outer.name = "outer";
  outer.region = SenseRef{world_id, Sign::Positive};
  outer.material = CellMaterial::outer();
  m.cells.push_back(std::move(outer));
  return m;
}

}  // namespace fitsgeo
