#pragma once

#include "musielak/grid.hpp"

namespace musielak {

struct SmoothingParams {
  double delta = 0.0;
  int j = 1;
  double epsilon = 0.0;
  double sigma = 0.0;
};

/// (T_h u)(x) = u(x + h) if x and x + h lie in dom, 0 otherwise.
/// h must be an integer multiple of the grid spacing on every axis.
GridFunction translate(const GridFunction& gf, const Point& h, const Domain& dom);

/// Smooth step: 1 for t <= 0, 0 for t >= 1, C-infinity in between.
double smooth_step(double t);

/// max |d/dt smooth_step|, the j-independent gradient bound of the cut-offs.
double cutoff_slope_constant();

/// tau_j(x) = smooth_step(|x| - j): 1 on B_j, 0 outside B_{j+1}.
GridFunction cutoff(int j, const GridSpec& spec);

/// Unnormalised Friedrichs kernel exp(-1 / (1 - |z|^2)) on the unit ball.
double friedrichs_kernel(double z2);

/// Discrete convolution with J_eps, weights renormalised to unit sum.
GridFunction mollify(const GridFunction& gf, double epsilon);

/// Minkowski inflation; radii add.
Region inflate(const Region& region, double r);

/// Largest a (up to grid resolution) with B_R cap (region + B_a) inside the
/// hypograph dom, tested on the lattice of grid nodes extended past the box.
/// 0 when the region touches the boundary; R for an empty region.
double hypograph_margin(const Region& region, double R, const Domain& dom);

}  // namespace musielak
