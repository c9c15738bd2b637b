#include "fwm/meanfield.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fwm/ode.hpp"
#include "fwm/quadrature.hpp"

namespace fwm {

namespace {

void require_positive_b0(double b0) {
  if (!(b0 > 0.0)) {
    throw std::invalid_argument("initial pump occupation must be positive, got " +
                                std::to_string(b0));
  }
}

}  // namespace

double QuarticPotential::value(double b) const {
  const double p1 = b * b + b - b0;
  const double p2 = b - b0;
  const double p3 = b - b0 - 1.0;
  return -2.0 / (b0 * b0) * p1 * p2 * p3;
}

double QuarticPotential::deriv(double b) const {
  const double p1 = b * b + b - b0;
  const double p2 = b - b0;
  const double p3 = b - b0 - 1.0;
  return -2.0 / (b0 * b0) *
         ((2.0 * b + 1.0) * p2 * p3 + p1 * p3 + p1 * p2);
}

double quartic_inner_turning_point(double b0) {
  require_positive_b0(b0);
  return 0.5 * (-1.0 + std::sqrt(1.0 + 4.0 * b0));
}

double conversion_efficiency(double b0) {
  return 1.0 - quartic_inner_turning_point(b0) / b0;
}

double conversion_distance(double b0) {
  require_positive_b0(b0);
  const double b_min = quartic_inner_turning_point(b0);
  // second root of b^2 + b - b0, below the physical orbit
  const double b_neg = 0.5 * (-1.0 - std::sqrt(1.0 + 4.0 * b0));
  const double mid = 0.5 * (b_min + b0);
  const double amp = 0.5 * (b0 - b_min);
  // -2V = (4/b0^2) (b - b_min)(b - b_neg)(b0 - b)(b0 + 1 - b); the first and
  // third factors become amp^2 cos^2(theta) under the substitution, cancelling
  // the turning-point singularities.
  auto integrand = [b0, b_neg, mid, amp](double theta) {
    const double b = mid + amp * std::sin(theta);
    return 0.5 * b0 / std::sqrt((b - b_neg) * (b0 + 1.0 - b));
  };
  constexpr double kHalfPi = 1.5707963267948966;
  return integrate_adaptive(integrand, -kHalfPi, kHalfPi, 1e-13);
}

std::vector<double> integrate_meanfield_reduced(double b0,
                                                const std::vector<double>& xi_grid,
                                                double tol) {
  require_positive_b0(b0);
  const QuarticPotential pot{b0};
  OdeStepper<2> stepper;
  stepper.rtol = tol;
  stepper.atol = tol * 1e-2;

  auto rhs = [&pot](double, const OdeStepper<2>::State& s,
                    OdeStepper<2>::State& ds) {
    ds[0] = s[1];
    ds[1] = -pot.deriv(s[0]);
  };

  const auto states = stepper.at_grid(rhs, {b0, 0.0}, xi_grid);
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(s[0]);
  return out;
}

std::vector<MeanfieldPoint> integrate_meanfield_full(
    double b0, double delta, const std::vector<double>& xi_grid, double tol) {
  require_positive_b0(b0);
  if (!(delta > 0.0 && delta < 1e-2)) {
    throw std::invalid_argument("seed fraction must lie in (0, 1e-2), got " +
                                std::to_string(delta));
  }
  // state: (Re u, Im u, Re v, Im v, b)
  using State5 = OdeStepper<5>::State;
  OdeStepper<5> stepper;
  stepper.rtol = tol;
  stepper.atol = tol * delta;  // v starts at delta*b0; keep it resolved

  const double d = b0;
  auto rhs = [d](double, const State5& s, State5& ds) {
    const complex u(s[0], s[1]);
    const complex v(s[2], s[3]);
    const double b = s[4];
    const complex i_unit(0.0, 1.0);
    const complex du = -i_unit / d * (2.0 * b + 1.0) * v;
    const complex dv = -i_unit / d * (2.0 * (d - b) + 1.0) * u;
    ds[0] = du.real();
    ds[1] = du.imag();
    ds[2] = dv.real();
    ds[3] = dv.imag();
    ds[4] = 2.0 / d * std::imag(std::conj(u) * v);
  };

  // pump pair amplitude |u| = b0 at b = b0; generated pair seeded at phase
  // -pi/2 relative to u so the conversion term grows rather than oscillates
  State5 y0{b0, 0.0, 0.0, -delta * b0, b0};
  const auto states = stepper.at_grid(rhs, y0, xi_grid);

  std::vector<MeanfieldPoint> out;
  out.reserve(states.size());
  for (size_t i = 0; i < states.size(); ++i) {
    const State5& s = states[i];
    out.push_back({xi_grid[i], s[4], complex(s[0], s[1]), complex(s[2], s[3])});
  }
  return out;
}

}  // namespace fwm
