#include "doctest.h"
#include "fwm/five_level.hpp"

#include <cmath>

using namespace fwm;

TEST_CASE("five-level matrix layout for a lone upper pump") {
  PhysicalParams p;
  p.delta = 10.0;
  FieldState f;
  f.omega2 = 1.0;
  const auto m = build_five_level(f, p);
  const auto& b = m.bracket;
  CHECK(b(0, 2) == complex(1.0, 0.0));
  CHECK(b(0, 3) == complex(1.0, 0.0));
  CHECK(b(0, 4) == complex(0.0, 0.0));
  CHECK(b(2, 0) == complex(1.0, 0.0));
  CHECK(b(3, 0) == complex(1.0, 0.0));
  CHECK(b(2, 2) == complex(-10.0, 0.0));
  CHECK(b(3, 3) == complex(10.0, 0.0));
  CHECK(b(4, 4) == complex(0.0, 0.0));
  int nonzeros = 0;
  for (int r = 0; r < 5; ++r)
    for (int c = 0; c < 5; ++c)
      if (b(r, c) != complex(0.0, 0.0)) ++nonzeros;
  CHECK(nonzeros == 6);
}

TEST_CASE("hermiticity defect equals twice the larger decay rate") {
  PhysicalParams p;
  p.delta = 5.0;
  p.gamma1 = 0.3;
  p.gamma2 = 0.7;
  const FieldState f{0.4, 0.9, 0.2, 0.6};
  CHECK(hermiticity_defect(build_five_level(f, p)) == doctest::Approx(1.4).epsilon(1e-12));
  p.gamma1 = p.gamma2 = 0.0;
  CHECK(hermiticity_defect(build_five_level(f, p)) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("upper-pump-only configuration carries no level shift") {
  // the +/- delta pair makes the quadratic Stark contributions cancel exactly
  PhysicalParams p;
  p.delta = 10.0;
  FieldState f;
  f.omega2 = 1.0;
  const complex lam = adiabatic_branch(build_five_level(f, p));
  CHECK(std::abs(lam) < 1e-12);
}

TEST_CASE("both-pumps-only configuration carries no level shift") {
  PhysicalParams p;
  p.delta = 10.0;
  FieldState f;
  f.omega1 = 0.7;
  f.omega2 = 1.0;
  const complex lam = adiabatic_branch(build_five_level(f, p));
  CHECK(std::abs(lam) < 1e-12);
}

TEST_CASE("empty field configuration reports a zero branch without error") {
  PhysicalParams p;
  p.delta = 4.0;
  p.gamma1 = 0.2;
  const FieldState f{};
  CHECK(std::abs(adiabatic_branch(build_five_level(f, p))) < 1e-14);
}

TEST_CASE("closed-form branch value") {
  PhysicalParams p;
  p.delta = 5.0;
  const FieldState f{1.0, 2.0, 0.5, 0.25};
  // 2 * (2 * 1*2*0.5*0.25) / (5 * (1 + 0.25))
  CHECK(lambda0(f, p) == doctest::Approx(0.16).epsilon(1e-14));
  FieldState undefined{};
  undefined.omega2 = 1.0;
  CHECK_THROWS_AS(lambda0(undefined, p), std::invalid_argument);
}

TEST_CASE("closed form converges quadratically in the field scale") {
  // all four amplitudes shrink together at fixed detuning; the branch
  // eigenvalue is O(s^2) and the closed form misses it by O(s^2) relatively,
  // so the error drops fourfold per halving
  PhysicalParams p;
  p.delta = 8.0;
  auto rot = [](double amp, double phi) {
    return amp * complex(std::cos(phi), std::sin(phi));
  };
  const FieldState base{rot(1.0, 0.0), rot(0.9, 0.3), rot(0.5, 0.0), rot(0.6, -0.2)};
  double prev = 0.0;
  const double scales[] = {0.1, 0.05, 0.025};
  for (int i = 0; i < 3; ++i) {
    FieldState f = base;
    f.omega1 *= scales[i];
    f.omega2 *= scales[i];
    f.e1 *= scales[i];
    f.e2 *= scales[i];
    const complex exact = adiabatic_branch(build_five_level(f, p));
    CHECK(std::abs(exact.imag()) < 1e-12);
    const double approx = lambda0(f, p);
    const double rel = std::abs(exact.real() - approx) / std::abs(approx);
    if (i > 0) {
      const double ratio = prev / rel;
      CHECK(ratio > 3.3);
      CHECK(ratio < 4.7);
    }
    prev = rel;
  }
}
