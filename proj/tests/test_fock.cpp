#include "doctest.h"
#include "fwm/ensemble.hpp"
#include "fwm/sector.hpp"
#include "oracle_fourmode.hpp"

#include <cmath>
#include <vector>

using namespace fwm;

namespace {

std::vector<double> make_grid(double a, double b, double step) {
  std::vector<double> g;
  for (double t = a; t <= b + 1e-12; t += step) g.push_back(t);
  return g;
}

// least-squares residual of a + b cos(wt) + c sin(wt)
double sinusoid_rms(const std::vector<double>& t, const std::vector<double>& v,
                    double omega) {
  double s[3][3] = {{0}}, rhs[3] = {0};
  for (size_t i = 0; i < t.size(); ++i) {
    const double basis[3] = {1.0, std::cos(omega * t[i]), std::sin(omega * t[i])};
    for (int r = 0; r < 3; ++r) {
      rhs[r] += basis[r] * v[i];
      for (int c = 0; c < 3; ++c) s[r][c] += basis[r] * basis[c];
    }
  }
  // Cramer solve
  auto det3 = [](double m[3][3]) {
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  };
  const double d = det3(s);
  double coef[3];
  for (int k = 0; k < 3; ++k) {
    double mk[3][3];
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c) mk[r][c] = (c == k) ? rhs[r] : s[r][c];
    coef[k] = det3(mk) / d;
  }
  double acc = 0.0;
  for (size_t i = 0; i < t.size(); ++i) {
    const double fit = coef[0] + coef[1] * std::cos(omega * t[i]) +
                       coef[2] * std::sin(omega * t[i]);
    acc += (v[i] - fit) * (v[i] - fit);
  }
  return std::sqrt(acc / t.size());
}

double refine_omega(const std::vector<double>& t, const std::vector<double>& v,
                    double lo, double hi) {
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
  double f1 = sinusoid_rms(t, v, x1), f2 = sinusoid_rms(t, v, x2);
  for (int it = 0; it < 80; ++it) {
    if (f1 < f2) {
      b = x2; x2 = x1; f2 = f1;
      x1 = b - gr * (b - a);
      f1 = sinusoid_rms(t, v, x1);
    } else {
      a = x1; x1 = x2; f1 = f2;
      x2 = a + gr * (b - a);
      f2 = sinusoid_rms(t, v, x2);
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

TEST_CASE("sector bookkeeping") {
  const FockSector s = build_sector(3, 5, 2, 7);
  CHECK(s.d == 5);
  CHECK(s.n_lo == -2);
  CHECK(s.n_hi == 3);
  CHECK(s.dim == 6);
  CHECK(s.seed_index == 2);
  // coupling between n = -2 and n = -1
  CHECK(s.offdiag(0) == doctest::Approx(std::sqrt(5.0 * 7.0 * 1.0 * 6.0)).epsilon(1e-14));
  CHECK_THROWS_AS(build_sector(-1, 2, 0, 0), std::invalid_argument);
}

TEST_CASE("spectrum comes in plus-minus pairs") {
  for (auto occ : {std::array<long long, 4>{6, 6, 0, 0},
                   std::array<long long, 4>{30, 27, 2, 5}}) {
    const FockSector s = build_sector(occ[0], occ[1], occ[2], occ[3]);
    for (int k = 0; k < s.dim; ++k) {
      CHECK(std::abs(s.lambda(k) + s.lambda(s.dim - 1 - k)) < 1e-9);
    }
  }
}

TEST_CASE("evolution is unitary at large dimension") {
  const FockSector s = build_sector(1999, 1999, 0, 0);
  CHECK(s.dim == 2000);
  Eigen::VectorXcd c0 = Eigen::VectorXcd::Zero(s.dim);
  c0(s.seed_index) = 1.0;
  const Eigen::VectorXcd c = evolve_sector(s, c0, 3.7, static_cast<double>(s.d));
  CHECK(std::abs(c.norm() - 1.0) < 1e-10);
  for (int k = 0; k < s.dim; ++k) {
    CHECK(std::abs(s.lambda(k) + s.lambda(s.dim - 1 - k)) < 1e-9 * (1.0 + std::abs(s.lambda(k))));
  }
}

TEST_CASE("one- and two-pair sectors have closed-form pump expectations") {
  const auto grid = make_grid(0.0, 20.0, 0.01);
  {
    const FockSector s = build_sector(1, 1, 0, 0);
    const MomentSeries m = moment_series(s, grid, static_cast<double>(s.d));
    for (size_t i = 0; i < grid.size(); ++i) {
      const double c = std::cos(grid[i]);
      CHECK(std::abs(m.pump_m1[i] - c * c) < 1e-10);
    }
  }
  {
    const FockSector s = build_sector(2, 2, 0, 0);
    const MomentSeries m = moment_series(s, grid, static_cast<double>(s.d));
    for (size_t i = 0; i < grid.size(); ++i) {
      const double expected = 1.0 + std::cos(std::sqrt(2.0) * grid[i]);
      CHECK(std::abs(m.pump_m1[i] - expected) < 1e-10);
    }
  }
}

TEST_CASE("sector evolution matches the unreduced four-mode reference") {
  const std::array<long long, 4> seeds[] = {
      {1, 1, 0, 0}, {2, 1, 0, 0}, {2, 2, 1, 0}, {3, 2, 1, 2}, {2, 3, 2, 1},
      {4, 4, 0, 0}};
  const double tau = 1.3;
  for (const auto& seed : seeds) {
    oracle::FourMode ref(seed);
    ref.evolve(tau, 2e-4);
    const FockSector s = build_sector(seed[0], seed[1], seed[2], seed[3]);
    Eigen::VectorXcd c0 = Eigen::VectorXcd::Zero(s.dim);
    c0(s.seed_index) = 1.0;
    const Eigen::VectorXcd c = evolve_sector(s, c0, tau, static_cast<double>(s.d));
    double mass = 0.0;
    for (int j = 0; j < s.dim; ++j) {
      const long long n = s.n_lo + j;
      CHECK(std::abs(c(j) - ref.amplitude(n)) < 1e-9);
      mass += std::norm(ref.amplitude(n));
    }
    // the reference never leaks probability out of the sector states
    CHECK(std::abs(mass - 1.0) < 1e-9);
  }
}

TEST_CASE("statistics helpers") {
  CHECK(mandel_q(2.0, 6.0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(mandel_q(1.0, 1.0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK_THROWS_AS(mandel_q(0.0, 0.0), SolverError);
  CHECK(intensity_difference_variance(1.0, 3.0) == doctest::Approx(2.0));
}

TEST_CASE("generated number difference is pinned in every sector") {
  const auto grid = make_grid(0.0, 5.0, 0.1);
  for (auto occ : {std::array<long long, 4>{4, 2, 0, 0},
                   std::array<long long, 4>{3, 5, 2, 7}}) {
    const FockSector s = build_sector(occ[0], occ[1], occ[2], occ[3]);
    const MomentSeries m = moment_series(s, grid, static_cast<double>(s.d));
    for (size_t i = 0; i < grid.size(); ++i) {
      CHECK(m.diff_m1[i] == doctest::Approx(double(occ[2] - occ[3])).epsilon(1e-12));
      CHECK(std::abs(intensity_difference_variance(m.diff_m1[i], m.diff_m2[i])) < 1e-12);
    }
  }
}

TEST_CASE("conditional phase at twice the conversion length") {
  const double pi = 3.14159265358979323846;
  const auto tt = phase_gate_truth_table(pi);
  CHECK(std::abs(tt[0] - complex(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(tt[1] - complex(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(tt[2] - complex(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(tt[3] - complex(-1.0, 0.0)) < 1e-12);
  const auto half = phase_gate_truth_table(pi / 2.0);
  CHECK(std::abs(half[3]) < 1e-12);
  CHECK(std::abs(half[0] - complex(1.0, 0.0)) < 1e-12);
}

TEST_CASE("first conversion minimum moves out with pump number") {
  const auto grid = make_grid(0.0, 6.0, 0.005);
  const long long ns[] = {1, 2, 3, 5, 15};
  const double expected[] = {1.5708, 2.2215, 2.614, 3.169, 4.2965};
  double prev = 0.0;
  for (int i = 0; i < 5; ++i) {
    const FockSector s = build_sector(ns[i], ns[i], 0, 0);
    const MomentSeries m = moment_series(s, grid, static_cast<double>(s.d));
    const Minimum mn = first_minimum(grid, m.pump_m1);
    CHECK(mn.tau == doctest::Approx(expected[i]).epsilon(0.01));
    CHECK(mn.tau > prev);
    prev = mn.tau;
  }
}

TEST_CASE("small sectors recur almost perfectly") {
  const auto grid = make_grid(1.0, 200.0, 0.01);
  // deficit bounds and near-recurrence locations are regression pins on the
  // fixed scan grid; the spectrum is incommensurate, so recurrences are only
  // approximate and degrade with sector size
  const long long ns[] = {3, 4, 5};
  const double bound[] = {1e-3, 1e-3, 2e-2};
  const double where[] = {23.53, 182.20, 188.55};
  for (int i = 0; i < 3; ++i) {
    const FockSector s = build_sector(ns[i], ns[i], 0, 0);
    const MomentSeries m = moment_series(s, grid, static_cast<double>(s.d));
    double best = 1.0, at = 0.0;
    for (size_t j = 0; j < grid.size(); ++j) {
      const double deficit = (ns[i] - m.pump_m1[j]) / ns[i];
      if (deficit < best) {
        best = deficit;
        at = grid[j];
      }
    }
    CHECK(best > 0.0);
    CHECK(best < bound[i]);
    CHECK(at == doctest::Approx(where[i]).epsilon(0.01));
  }
}

TEST_CASE("pump expectation is a single sinusoid only for one and two pairs") {
  const auto grid = make_grid(0.0, 20.0, 0.01);
  {
    const FockSector s = build_sector(1, 1, 0, 0);
    const MomentSeries m = moment_series(s, grid, 1.0);
    const double w = refine_omega(grid, m.pump_m1, 1.8, 2.2);
    CHECK(sinusoid_rms(grid, m.pump_m1, w) < 1e-8);
  }
  {
    const FockSector s = build_sector(2, 2, 0, 0);
    const MomentSeries m = moment_series(s, grid, 2.0);
    const double w = refine_omega(grid, m.pump_m1, 1.3, 1.5);
    CHECK(sinusoid_rms(grid, m.pump_m1, w) < 1e-8);
  }
  {
    const FockSector s = build_sector(3, 3, 0, 0);
    const MomentSeries m = moment_series(s, grid, 3.0);
    double best = 1e9;
    for (double w0 = 0.2; w0 < 3.0; w0 += 0.005) {
      best = std::min(best, sinusoid_rms(grid, m.pump_m1, w0));
    }
    CHECK(best > 0.1);
  }
}

TEST_CASE("generated light from small number states is sub-Poissonian early") {
  const auto grid = make_grid(0.05, 1.5, 0.005);
  for (long long n : {1LL, 2LL}) {
    const FockSector s = build_sector(n, n, 0, 0);
    const MomentSeries m = moment_series(s, grid, static_cast<double>(s.d));
    double qmax = -1e9;
    for (size_t i = 0; i < grid.size(); ++i) {
      qmax = std::max(qmax, mandel_q(m.gen_m1[i], m.gen_m2[i]));
    }
    CHECK(qmax < -5e-4);
  }
}

TEST_CASE("amplitude vector size is checked") {
  const FockSector s = build_sector(2, 2, 0, 0);
  Eigen::VectorXcd wrong = Eigen::VectorXcd::Zero(s.dim + 1);
  CHECK_THROWS_AS(evolve_sector(s, wrong, 1.0, 2.0), std::invalid_argument);
}
