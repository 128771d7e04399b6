#pragma once

#include "fitsgeo/materials.hpp"
#include "fitsgeo/model.hpp"

namespace fitsgeo {

/// Parameters of the "snake" example: sphere segments placed along
///   z(x) = amplitude * sin(frequency * x) * damping_scale * exp(-damping_rate * x)
/// with radii r(x) = r0 * exp(growth * x), for x evenly spaced on [0, x_max].
struct SnakeParams {
  int n_segments = 50;
  double x_max = 5.0;
  double amplitude = 5.0;
  double frequency = 3.0;
  double damping_scale = 0.3;
  double damping_rate = 0.4;
  double r0 = 0.02;
  double growth = 0.2;

  double x(int i) const { return x_max * i / (n_segments - 1); }
  double z(double xv) const;
  double r(double xv) const;
};

/// Builds the snake model: one ICRP-skin sphere cell per segment, a
/// polyethylene TRC hat seated on the head (last) segment, a void world
/// sphere around everything and the outer region. Segment and hat cells
/// exclude the spheres they overlap so cells stay disjoint.
/// Throws PreconditionFailed on invalid parameters and NotFound if the
/// database lacks the two materials.
Model example_snake(const SnakeParams& p, const MaterialDb& db);

}  // namespace fitsgeo
