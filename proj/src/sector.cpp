#include "fwm/sector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fwm {

FockSector build_sector(long long n1, long long n2, long long n3, long long n4) {
  if (n1 < 0 || n2 < 0 || n3 < 0 || n4 < 0) {
    throw std::invalid_argument(
        "occupations must be nonnegative, got (" + std::to_string(n1) + ", " +
        std::to_string(n2) + ", " + std::to_string(n3) + ", " +
        std::to_string(n4) + ")");
  }
  FockSector s;
  s.n1 = n1;
  s.n2 = n2;
  s.n3 = n3;
  s.n4 = n4;
  s.d = n1 + n3;
  s.n_lo = -std::min(n3, n4);
  s.n_hi = std::min(n1, n2);
  s.dim = static_cast<int>(s.n_hi - s.n_lo + 1);
  s.seed_index = static_cast<int>(-s.n_lo);

  s.offdiag.resize(s.dim - 1);
  for (int j = 0; j + 1 < s.dim; ++j) {
    // coupling between n = n_lo + j and n + 1
    const long long n = s.n_lo + j + 1;
    const double w = static_cast<double>(n1 - n + 1) *
                     static_cast<double>(n2 - n + 1) *
                     static_cast<double>(n3 + n) * static_cast<double>(n4 + n);
    s.offdiag(j) = std::sqrt(w);
  }

  Eigen::VectorXd diag = Eigen::VectorXd::Zero(s.dim);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, s.offdiag, Eigen::ComputeEigenvectors);
  if (es.info() != Eigen::Success) {
    throw SolverError("tridiagonal eigensolve failed for sector (" +
                      std::to_string(n1) + ", " + std::to_string(n2) + ", " +
                      std::to_string(n3) + ", " + std::to_string(n4) + ")");
  }
  s.lambda = es.eigenvalues();
  s.vecs = es.eigenvectors();
  return s;
}

Eigen::VectorXcd evolve_sector(const FockSector& s, const Eigen::VectorXcd& c0,
                               double tau, double denom) {
  if (c0.size() != s.dim) {
    throw std::invalid_argument("amplitude vector size " +
                                std::to_string(c0.size()) +
                                " does not match sector dimension " +
                                std::to_string(s.dim));
  }
  // denom = 0 only arises for the empty-coupling sector, whose Hamiltonian
  // vanishes; the state is frozen there.
  if (denom == 0.0) return c0;
  const Eigen::VectorXcd proj = s.vecs.transpose() * c0;
  Eigen::VectorXcd phased(s.dim);
  for (int k = 0; k < s.dim; ++k) {
    const double phi = -s.lambda(k) * tau / denom;
    phased(k) = proj(k) * complex(std::cos(phi), std::sin(phi));
  }
  return s.vecs * phased;
}

Eigen::MatrixXd occupation_probabilities(const FockSector& s,
                                         const std::vector<double>& tau,
                                         double denom) {
  const int nt = static_cast<int>(tau.size());
  if (denom == 0.0) {
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(s.dim, nt);
    p.row(s.seed_index).setOnes();
    return p;
  }
  const Eigen::VectorXd alpha = s.vecs.row(s.seed_index).transpose();
  Eigen::MatrixXd ca(s.dim, nt), cb(s.dim, nt);
  bool uniform = nt >= 3;
  const double h = nt >= 2 ? tau[1] - tau[0] : 0.0;
  for (int t = 2; uniform && t < nt; ++t) {
    if (std::abs((tau[t] - tau[t - 1]) - h) > 1e-12 * (1.0 + std::abs(h))) {
      uniform = false;
    }
  }
  if (uniform) {
    // rotation recurrence along each eigenvalue row, re-anchored with exact
    // trig every 64 points to bound drift
    for (int k = 0; k < s.dim; ++k) {
      const double w = s.lambda(k) / denom;
      const double dc = std::cos(w * h);
      const double ds = std::sin(w * h);
      double c = 1.0, sn = 0.0;
      for (int t = 0; t < nt; ++t) {
        if ((t & 63) == 0) {
          const double phi = w * tau[t];
          c = std::cos(phi);
          sn = std::sin(phi);
        }
        ca(k, t) = alpha(k) * c;
        cb(k, t) = alpha(k) * sn;
        const double cn = c * dc - sn * ds;
        sn = c * ds + sn * dc;
        c = cn;
      }
    }
  } else {
    for (int t = 0; t < nt; ++t) {
      for (int k = 0; k < s.dim; ++k) {
        const double phi = s.lambda(k) * tau[t] / denom;
        ca(k, t) = alpha(k) * std::cos(phi);
        cb(k, t) = alpha(k) * std::sin(phi);
      }
    }
  }
  const Eigen::MatrixXd a = s.vecs * ca;
  const Eigen::MatrixXd b = s.vecs * cb;
  return a.cwiseProduct(a) + b.cwiseProduct(b);
}

MomentSeries moment_series(const FockSector& s, const std::vector<double>& tau,
                           double denom) {
  const Eigen::MatrixXd p = occupation_probabilities(s, tau, denom);
  Eigen::VectorXd occ_pump(s.dim), occ_gen(s.dim), occ_diff(s.dim);
  for (int j = 0; j < s.dim; ++j) {
    const long long n = s.n_lo + j;
    occ_pump(j) = static_cast<double>(s.n1 - n);
    occ_gen(j) = static_cast<double>(s.n3 + n);
    // both generated modes gain the same n, so their difference is pinned
    occ_diff(j) = static_cast<double>(s.n3 - s.n4);
  }

  MomentSeries m;
  m.tau = tau;
  const int nt = static_cast<int>(tau.size());
  m.pump_m1.resize(nt);
  m.pump_m2.resize(nt);
  m.gen_m1.resize(nt);
  m.gen_m2.resize(nt);
  m.diff_m1.resize(nt);
  m.diff_m2.resize(nt);
  const Eigen::VectorXd pump_sq = occ_pump.cwiseProduct(occ_pump);
  const Eigen::VectorXd gen_sq = occ_gen.cwiseProduct(occ_gen);
  const Eigen::VectorXd diff_sq = occ_diff.cwiseProduct(occ_diff);
  for (int t = 0; t < nt; ++t) {
    const Eigen::VectorXd col = p.col(t);
    m.pump_m1[t] = occ_pump.dot(col);
    m.pump_m2[t] = pump_sq.dot(col);
    m.gen_m1[t] = occ_gen.dot(col);
    m.gen_m2[t] = gen_sq.dot(col);
    m.diff_m1[t] = occ_diff.dot(col);
    m.diff_m2[t] = diff_sq.dot(col);
  }
  return m;
}

double mandel_q(double m1, double m2) {
  if (m1 == 0.0) {
    throw SolverError("Mandel Q undefined: mode has zero mean occupation");
  }
  return (m2 - m1 * m1 - m1) / m1;
}

double intensity_difference_variance(double diff_m1, double diff_m2) {
  return diff_m2 - diff_m1 * diff_m1;
}

std::array<complex, 4> phase_gate_truth_table(double tau) {
  std::array<complex, 4> out;
  int idx = 0;
  for (long long q1 : {0LL, 1LL}) {
    for (long long q2 : {0LL, 1LL}) {
      const FockSector s = build_sector(q1, q2, 0, 0);
      Eigen::VectorXcd c0 = Eigen::VectorXcd::Zero(s.dim);
      c0(s.seed_index) = 1.0;
      const Eigen::VectorXcd c = evolve_sector(s, c0, tau, static_cast<double>(s.d));
      out[idx++] = c(s.seed_index);
    }
  }
  return out;
}

}  // namespace fwm
