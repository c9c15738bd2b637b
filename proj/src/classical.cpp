#include "fwm/classical.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "fwm/ode.hpp"
#include "fwm/quadrature.hpp"

namespace fwm {

namespace {

constexpr double kSingularFraction = 1e-30;

using State8 = OdeStepper<8>::State;

State8 pack(const FieldState& f) {
  return {f.omega1.real(), f.omega1.imag(), f.omega2.real(), f.omega2.imag(),
          f.e1.real(),     f.e1.imag(),     f.e2.real(),     f.e2.imag()};
}

FieldState unpack(const State8& y) {
  return {complex(y[0], y[1]), complex(y[2], y[3]), complex(y[4], y[5]),
          complex(y[6], y[7])};
}

}  // namespace

FieldState classical_rhs(const FieldState& f) {
  const double i_o1 = std::norm(f.omega1);
  const double i_e1 = std::norm(f.e1);
  const double total =
      i_o1 + i_e1 + std::norm(f.omega2) + std::norm(f.e2);
  if (total == 0.0) return {0.0, 0.0, 0.0, 0.0};

  const double den = i_o1 + i_e1;
  if (den < kSingularFraction * total) {
    throw SolverError("singular field configuration: |omega1|^2 + |e1|^2 = " +
                      std::to_string(den) +
                      " is below 1e-30 of the total intensity");
  }
  const double den2 = den * den;
  const complex i_unit(0.0, 1.0);

  const complex de1 =
      -i_unit *
      (i_o1 * f.omega1 * f.omega2 * std::conj(f.e2) -
       f.e1 * f.e1 * f.e2 * std::conj(f.omega1) * std::conj(f.omega2)) /
      den2;
  const complex de2 = -i_unit * f.omega1 * f.omega2 * std::conj(f.e1) / den;
  const complex do1 =
      i_unit *
      (f.omega1 * f.omega1 * f.omega2 * std::conj(f.e1) * std::conj(f.e2) -
       i_e1 * f.e1 * f.e2 * std::conj(f.omega2)) /
      den2;
  const complex do2 = -i_unit * f.e1 * f.e2 * std::conj(f.omega1) / den;

  return {do1, do2, de1, de2};
}

std::vector<std::pair<double, FieldState>> integrate_classical(
    const FieldState& f0, double xi_end, double tol) {
  OdeStepper<8> stepper;
  stepper.rtol = tol;
  stepper.atol = tol * 1e-2;

  auto rhs = [](double, const State8& y, State8& dy) {
    const FieldState d = classical_rhs(unpack(y));
    dy = pack(d);
  };

  std::vector<std::pair<double, FieldState>> rows;
  auto sink = [&rows](double xi, const State8& y) {
    rows.emplace_back(xi, unpack(y));
  };
  State8 y = pack(f0);
  sink(0.0, y);
  stepper.integrate(rhs, 0.0, y, xi_end, sink);
  return rows;
}

std::vector<FieldState> integrate_classical_grid(const FieldState& f0,
                                                 const std::vector<double>& grid,
                                                 double tol) {
  OdeStepper<8> stepper;
  stepper.rtol = tol;
  stepper.atol = tol * 1e-2;

  auto rhs = [](double, const State8& y, State8& dy) {
    const FieldState d = classical_rhs(unpack(y));
    dy = pack(d);
  };

  const auto states = stepper.at_grid(rhs, pack(f0), grid);
  std::vector<FieldState> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(unpack(s));
  return out;
}

double normalized_intensity(const FieldState& f) {
  const double i_o1 = std::norm(f.omega1);
  const double den = i_o1 + std::norm(f.e1);
  if (den == 0.0) {
    throw SolverError("normalized intensity undefined: pump 1 and field 1 both vanish");
  }
  return i_o1 / den;
}

double pendulum_potential(double y) {
  const double w = y * (y - 1.0);
  return -4.0 * w * w;
}

double pendulum_potential_deriv(double y) {
  return -8.0 * y * (y - 1.0) * (2.0 * y - 1.0);
}

std::vector<double> pendulum_evolve(double y0, const std::vector<double>& xi_grid,
                                    double tol) {
  if (!(y0 >= 0.0 && y0 <= 1.0)) {
    throw std::invalid_argument("pendulum start must lie in [0, 1], got " +
                                std::to_string(y0));
  }
  OdeStepper<2> stepper;
  stepper.rtol = tol;
  stepper.atol = tol * 1e-2;

  auto rhs = [](double, const OdeStepper<2>::State& s, OdeStepper<2>::State& ds) {
    ds[0] = s[1];
    ds[1] = -0.5 * pendulum_potential_deriv(s[0]);
  };

  const auto states = stepper.at_grid(rhs, {y0, 0.0}, xi_grid);
  std::vector<double> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back(s[0]);
  return out;
}

double pendulum_period(double y0) {
  if (!(y0 >= 0.0 && y0 <= 1.0)) {
    throw std::invalid_argument("pendulum period requires y0 in [0, 1], got " +
                                std::to_string(y0));
  }
  if (y0 == 0.0 || y0 == 0.5 || y0 == 1.0) {
    throw std::invalid_argument(
        "y0 = " + std::to_string(y0) +
        " is a stationary point of the pendulum potential, the orbit is degenerate");
  }
  // Energy conservation gives y'^2 = V(y0) - V(y) = 2 (f(y) + f(y0)) *
  // (y0 - 1/2)^2 cos^2(theta) with f(y) = 2 y (1 - y), so the integrand in
  // theta is bounded on the closed orbit.
  const double f0 = 2.0 * y0 * (1.0 - y0);
  const double amp = y0 - 0.5;
  auto integrand = [f0, amp](double theta) {
    const double y = 0.5 + amp * std::sin(theta);
    const double f = 2.0 * y * (1.0 - y);
    return 1.0 / std::sqrt(2.0 * (f + f0));
  };
  constexpr double kHalfPi = 1.5707963267948966;
  // near the separatrix the integrand peaks at 1/(2 sqrt(f0)); the absolute
  // tolerance must sit above that peak's roundoff floor or the refinement
  // never terminates
  const double tol = 1e-12 * (1.0 + 0.5 / std::sqrt(f0));
  return 2.0 * integrate_adaptive(integrand, -kHalfPi, kHalfPi, tol);
}

}  // namespace fwm
