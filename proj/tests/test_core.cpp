#include "doctest.h"
#include "fwm/core.hpp"

#include <cmath>

using namespace fwm;

TEST_CASE("parameter validation") {
  PhysicalParams p;
  CHECK_NOTHROW(p.validate());
  p.kappa = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.kappa = 1.0;
  p.delta = 0.0;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
  p.delta = -2.0;
  CHECK_NOTHROW(p.validate());
  p.gamma1 = -0.1;
  CHECK_THROWS_AS(p.validate(), std::invalid_argument);
}

TEST_CASE("dimensionless rate keeps sign") {
  PhysicalParams p;
  p.kappa = 2.0;
  p.delta = -4.0;
  CHECK(dimensionless_rate(p) == doctest::Approx(-0.5));
  CHECK(to_dimensionless(3.0, p) == doctest::Approx(-1.5));
  p.delta = 0.0;
  CHECK_THROWS_AS(dimensionless_rate(p), std::invalid_argument);
}

TEST_CASE("conserved quantities definitions") {
  const FieldState f{complex(1.0, 0.0), complex(0.0, 2.0), complex(0.5, 0.5),
                     complex(1.0, -1.0)};
  const auto m = manley_rowe(f);
  CHECK(m[0] == doctest::Approx(1.0 + 0.5));
  CHECK(m[1] == doctest::Approx(4.0 + 2.0));
  CHECK(m[2] == doctest::Approx(1.0 - 4.0));
  const complex g = f.omega1 * f.omega2 * std::conj(f.e1) * std::conj(f.e2);
  CHECK(m[3] == doctest::Approx(2.0 * g.real()));
}

TEST_CASE("conserved quantities invariant under balanced phase rotations") {
  const FieldState base{complex(0.8, 0.1), complex(-0.3, 0.9), complex(0.4, -0.2),
                        complex(0.7, 0.6)};
  const auto m0 = manley_rowe(base);
  const double rots[][3] = {{0.3, -1.1, 0.7}, {2.0, 0.5, -0.9}, {-0.4, 1.3, 2.2}};
  for (const auto& r : rots) {
    const double a = r[0], b = r[1], c = r[2];
    // phases (a, b, a+c, b-c) leave the quadrilinear product unchanged
    auto rot = [](complex z, double phi) {
      return z * complex(std::cos(phi), std::sin(phi));
    };
    const FieldState f{rot(base.omega1, a), rot(base.omega2, b),
                       rot(base.e1, a + c), rot(base.e2, b - c)};
    const auto m = manley_rowe(f);
    for (int i = 0; i < 4; ++i) CHECK(m[i] == doctest::Approx(m0[i]).epsilon(1e-12));
  }
}

TEST_CASE("trajectory records reject non-monotone coordinates") {
  TrajectoryRecord r;
  r.labels = {"xi", "v"};
  r.rows = {{0.0, 1.0}, {0.5, 2.0}, {1.0, 3.0}};
  CHECK_NOTHROW(r.check_monotone());
  r.rows.push_back({1.0, 4.0});
  CHECK_THROWS_AS(r.check_monotone(), SolverError);
}
