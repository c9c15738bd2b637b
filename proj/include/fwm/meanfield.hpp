#pragma once

#include <vector>

#include "fwm/core.hpp"

namespace fwm {

// Quartic effective potential V(b) = -(2/b0^2) (b^2 + b - b0)(b - b0)(b - b0 - 1)
// governing the pump occupation b(xi) through b'' = -V'(b); the trajectory
// obeys b'^2 = -2 V(b) when started at rest at b = b0.
struct QuarticPotential {
  double b0;
  double value(double b) const;
  double deriv(double b) const;
};

// Inner turning point b_min = (-1 + sqrt(1 + 4 b0)) / 2 of the orbit
// starting at b0.
double quartic_inner_turning_point(double b0);

// Fraction of the pump converted at maximum depletion, 1 - b_min / b0.
double conversion_efficiency(double b0);

// Propagation distance from b0 down to b_min by quadrature; the turning-point
// singularities are removed with b = mid + amp * sin(theta).
double conversion_distance(double b0);

// Reduced second-order evolution from rest at b(0) = b0, sampled on xi_grid
// (grid[0] is the initial coordinate).
std::vector<double> integrate_meanfield_reduced(double b0,
                                                const std::vector<double>& xi_grid,
                                                double tol = 1e-12);

// Full pair-amplitude evolution. u is the pump-pair amplitude, v the
// generated-pair amplitude; the generated pair is seeded with magnitude
// delta * b0 and relative phase -pi/2 so conversion starts from near-vacuum.
struct MeanfieldPoint {
  double xi = 0.0;
  double b = 0.0;
  complex u;
  complex v;
};

std::vector<MeanfieldPoint> integrate_meanfield_full(
    double b0, double delta, const std::vector<double>& xi_grid,
    double tol = 1e-12);

}  // namespace fwm
