#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

#include "fwm/core.hpp"

namespace fwm {

// One conserved four-mode number sector. Basis states are indexed by the
// number of converted photon pairs n in [n_lo, n_hi] and carry occupations
// (n1-n, n2-n, n3+n, n4+n). The stored eigensystem is that of the
// unit-denominator tridiagonal coupling matrix; physical phases divide its
// eigenvalues by the chosen denominator.
struct FockSector {
  long long n1 = 0, n2 = 0, n3 = 0, n4 = 0;
  long long d = 0;      // resonant denominator n1 + n3
  long long n_lo = 0, n_hi = 0;
  int dim = 0;
  int seed_index = 0;   // basis index of n = 0 (the unconverted input state)
  Eigen::VectorXd offdiag;   // coupling strengths, size dim-1
  Eigen::VectorXd lambda;    // eigenvalues, ascending
  Eigen::MatrixXd vecs;      // orthonormal eigenvectors, columns
};

FockSector build_sector(long long n1, long long n2, long long n3, long long n4);

// Amplitudes at time tau starting from c0, using the given denominator
// (defaults to the sector's resonant d when denom <= 0 is passed as 0).
Eigen::VectorXcd evolve_sector(const FockSector& s, const Eigen::VectorXcd& c0,
                               double tau, double denom);

// Occupation probabilities |c_n(tau)|^2 for every basis state and every grid
// point, starting from the unconverted input state. Result is dim x ntau.
Eigen::MatrixXd occupation_probabilities(const FockSector& s,
                                         const std::vector<double>& tau,
                                         double denom);

// First and second moments of the pump-1 occupation, the generated-3
// occupation, and the generated number difference (mode 3 minus mode 4)
// along a tau grid.
struct MomentSeries {
  std::vector<double> tau;
  std::vector<double> pump_m1, pump_m2;
  std::vector<double> gen_m1, gen_m2;
  std::vector<double> diff_m1, diff_m2;
};

MomentSeries moment_series(const FockSector& s, const std::vector<double>& tau,
                           double denom);

// Mandel Q = (variance - mean) / mean; zero mean has no defined statistics.
double mandel_q(double m1, double m2);

// Var(n_gen1 - n_gen2) from first and second moments of the difference;
// vanishes identically for vacuum-seeded generated modes.
double intensity_difference_variance(double diff_m1, double diff_m2);

// Amplitude retained by the unconverted input state at time tau for the four
// single-photon pump inputs (0,0), (0,1), (1,0), (1,1), each seeded with no
// generated photons. At tau = pi this is the (1, 1, 1, -1) truth table.
std::array<complex, 4> phase_gate_truth_table(double tau);

}  // namespace fwm
