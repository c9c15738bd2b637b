#pragma once

#include <utility>
#include <vector>

#include "fwm/core.hpp"

namespace fwm {

// Right-hand side of the four coupled field equations in the dimensionless
// propagation coordinate xi = (kappa/delta) * zeta. Throws on a singular
// EIT denominator (|Omega1|^2 + |E1|^2 vanishing while other fields remain).
FieldState classical_rhs(const FieldState& f);

// Adaptive trajectory from xi = 0 to xi_end; rows at accepted step points,
// initial point included. All four Manley-Rowe quantities are conserved to
// ~10*tol relative along the result.
std::vector<std::pair<double, FieldState>> integrate_classical(const FieldState& f0,
                                                               double xi_end,
                                                               double tol);

// Same integration sampled exactly at a strictly increasing grid (grid[0] is
// the initial coordinate of f0).
std::vector<FieldState> integrate_classical_grid(const FieldState& f0,
                                                 const std::vector<double>& grid,
                                                 double tol);

// Normalized pump intensity y = |Omega1|^2 / (|Omega1|^2 + |E1|^2).
double normalized_intensity(const FieldState& f);

// Pendulum potential V(y) = -4 y^2 (y-1)^2 and its derivative.
double pendulum_potential(double y);
double pendulum_potential_deriv(double y);

// Integrates the reduced second-order equation y'' = -V'(y)/2 starting at
// rest at y0 (effective mass 2: energy y'^2 + V(y) is conserved); returns y
// at the requested grid (grid[0] = initial coordinate).
std::vector<double> pendulum_evolve(double y0, const std::vector<double>& xi_grid,
                                    double tol = 1e-12);

// Closed-orbit period through (y0, 0) by quadrature over the orbit
// [1-y0, y0]; the square-root turning-point singularities are removed by the
// substitution y = 1/2 + (y0-1/2) sin(theta). y0 in {0, 1/2, 1} is a
// degenerate orbit and rejected.
double pendulum_period(double y0);

}  // namespace fwm
