#pragma once

#include <string>
#include <vector>

#include "fwm/core.hpp"

namespace fwm {

// Contiguous Poisson occupation window grown greedily from the mode until the
// captured mass reaches 1 - eps_tail.
struct PoissonWindow {
  long long lo = 0;
  std::vector<double> weight;
  double mass = 0.0;
};

PoissonWindow poisson_window(double mean, double eps_tail);

// Ensemble moments along a tau grid. Moments are renormalized by the captured
// product mass; weight_mass is that mass and tail_mass = 1 - weight_mass.
struct EnsembleSeries {
  std::vector<double> tau;
  std::vector<double> pump_m1, pump_m2;
  std::vector<double> gen_m1, gen_m2;
  std::vector<double> diff_m1, diff_m2;
  double weight_mass = 0.0;
  double tail_mass = 0.0;
};

struct EnsembleOptions {
  double eps_tail = 1e-8;
  int workers = 1;
  bool resonant = true;     // per-sector denominator n1 + n3
  bool constant = false;    // single fixed denominator for every sector
  long long constant_d = 0; // 0 means round(mean)
};

struct EnsembleResult {
  EnsembleSeries resonant;
  EnsembleSeries constant;
  bool has_resonant = false;
  bool has_constant = false;
};

// Two-pump coherent-state ensemble, both pumps with the given mean, generated
// modes seeded empty. Sector contributions are reduced in fixed chunk order
// so the result is bit-identical for any worker count.
EnsembleResult coherent_ensemble(double mean, const std::vector<double>& tau,
                                 const EnsembleOptions& opt);

// First interior local minimum of v(tau), refined by a quadratic through the
// bracketing triple.
struct Minimum {
  double tau = 0.0;
  double value = 0.0;
};

Minimum first_minimum(const std::vector<double>& tau,
                      const std::vector<double>& v);

// Conversion-distance scan over pump means. mode is "resonant", "constant",
// or "both"; the constant denominator is round(means[0]) for every row so the
// two columns differ only by the removed intensity dependence.
struct ScanRow {
  double mean = 0.0;
  double tau_min = 0.0;
  double value = 0.0;
  std::string mode;
};

std::vector<ScanRow> conversion_scan(const std::vector<double>& means,
                                     const std::string& mode, double eps_tail,
                                     int workers);

// Grid used by the scan for a given mean; exposed so regressions can pin it.
std::vector<double> scan_tau_grid(double mean);

}  // namespace fwm
