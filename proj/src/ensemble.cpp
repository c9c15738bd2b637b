#include "fwm/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "fwm/sector.hpp"

namespace fwm {

namespace {

double poisson_pmf(double mean, long long k) {
  return std::exp(-mean + static_cast<double>(k) * std::log(mean) -
                  std::lgamma(static_cast<double>(k) + 1.0));
}

inline void kahan_add(double& sum, double& comp, double value) {
  const double y = value - comp;
  const double t = sum + y;
  comp = (t - sum) - y;
  sum = t;
}

// Adds wt-scaled sector moments into six length-nt accumulators laid out
// back to back at out/comp.
void accumulate_sector(double* out, double* comp, const FockSector& sec,
                       const std::vector<double>& tau, double denom,
                       double wt) {
  const MomentSeries m = moment_series(sec, tau, denom);
  const int nt = static_cast<int>(tau.size());
  const std::vector<double>* src[6] = {&m.pump_m1, &m.pump_m2, &m.gen_m1,
                                       &m.gen_m2,  &m.diff_m1, &m.diff_m2};
  for (int q = 0; q < 6; ++q) {
    double* s = out + q * nt;
    double* c = comp + q * nt;
    const std::vector<double>& v = *src[q];
    for (int t = 0; t < nt; ++t) kahan_add(s[t], c[t], wt * v[t]);
  }
}

}  // namespace

PoissonWindow poisson_window(double mean, double eps_tail) {
  if (!(mean > 0.0)) {
    throw std::invalid_argument("Poisson mean must be positive, got " +
                                std::to_string(mean));
  }
  if (!(eps_tail > 0.0 && eps_tail < 1.0)) {
    throw std::invalid_argument("tail tolerance must lie in (0, 1), got " +
                                std::to_string(eps_tail));
  }
  long long lo = static_cast<long long>(std::floor(mean));
  long long hi = lo;
  double mass = poisson_pmf(mean, lo);
  while (mass < 1.0 - eps_tail) {
    const double pl = lo > 0 ? poisson_pmf(mean, lo - 1) : -1.0;
    const double ph = poisson_pmf(mean, hi + 1);
    if (pl <= 0.0 && ph <= 0.0) {
      throw SolverError("tail tolerance " + std::to_string(eps_tail) +
                        " unreachable: remaining Poisson mass underflows");
    }
    if (pl >= ph) {
      --lo;
      mass += pl;
    } else {
      ++hi;
      mass += ph;
    }
  }

  PoissonWindow w;
  w.lo = lo;
  w.weight.resize(static_cast<size_t>(hi - lo + 1));
  w.mass = 0.0;
  double comp = 0.0;
  for (long long k = lo; k <= hi; ++k) {
    const double p = poisson_pmf(mean, k);
    w.weight[static_cast<size_t>(k - lo)] = p;
    kahan_add(w.mass, comp, p);
  }
  return w;
}

EnsembleResult coherent_ensemble(double mean, const std::vector<double>& tau,
                                 const EnsembleOptions& opt) {
  if (tau.empty()) throw std::invalid_argument("tau grid is empty");
  if (opt.workers < 1 || opt.workers > 64) {
    throw std::invalid_argument("worker count must lie in [1, 64], got " +
                                std::to_string(opt.workers));
  }
  if (!opt.resonant && !opt.constant) {
    throw std::invalid_argument("at least one denominator mode must be requested");
  }
  long long d0 = opt.constant_d;
  if (opt.constant) {
    if (d0 == 0) d0 = std::llround(mean);
    if (d0 < 1) {
      throw std::invalid_argument("constant denominator must be positive, got " +
                                  std::to_string(d0));
    }
  }

  const PoissonWindow w = poisson_window(mean, opt.eps_tail);
  const size_t nw = w.weight.size();
  const size_t nsec = nw * nw;
  const int nmodes = (opt.resonant ? 1 : 0) + (opt.constant ? 1 : 0);
  const int nt = static_cast<int>(tau.size());
  const size_t stride = static_cast<size_t>(nmodes) * 6 * nt;

  // Fixed contiguous chunks with an ordered final reduction keep the result
  // bit-identical for any worker count.
  constexpr size_t kChunk = 64;
  const size_t nchunks = (nsec + kChunk - 1) / kChunk;
  std::vector<double> partial(nchunks * stride, 0.0);
  std::atomic<size_t> next{0};

  auto process = [&]() {
    std::vector<double> comp(stride);
    for (;;) {
      const size_t c = next.fetch_add(1);
      if (c >= nchunks) break;
      double* out = partial.data() + c * stride;
      std::fill(comp.begin(), comp.end(), 0.0);
      const size_t s0 = c * kChunk;
      const size_t s1 = std::min(nsec, s0 + kChunk);
      for (size_t si = s0; si < s1; ++si) {
        const size_t i1 = si / nw;
        const size_t i2 = si % nw;
        const long long n1 = w.lo + static_cast<long long>(i1);
        const long long n2 = w.lo + static_cast<long long>(i2);
        const double wt = w.weight[i1] * w.weight[i2];
        const FockSector sec = build_sector(n1, n2, 0, 0);
        int m = 0;
        if (opt.resonant) {
          accumulate_sector(out + static_cast<size_t>(m) * 6 * nt,
                            comp.data() + static_cast<size_t>(m) * 6 * nt, sec,
                            tau, static_cast<double>(sec.d), wt);
          ++m;
        }
        if (opt.constant) {
          accumulate_sector(out + static_cast<size_t>(m) * 6 * nt,
                            comp.data() + static_cast<size_t>(m) * 6 * nt, sec,
                            tau, static_cast<double>(d0), wt);
        }
      }
    }
  };

  if (opt.workers == 1) {
    process();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(opt.workers);
    for (int i = 0; i < opt.workers; ++i) pool.emplace_back(process);
    for (auto& th : pool) th.join();
  }

  const double wtot = w.mass * w.mass;
  auto reduce_mode = [&](int m) {
    EnsembleSeries s;
    s.tau = tau;
    s.weight_mass = wtot;
    s.tail_mass = 1.0 - wtot;
    std::vector<double>* dst[6] = {&s.pump_m1, &s.pump_m2, &s.gen_m1,
                                   &s.gen_m2,  &s.diff_m1, &s.diff_m2};
    for (int q = 0; q < 6; ++q) {
      dst[q]->resize(nt);
      for (int t = 0; t < nt; ++t) {
        double sum = 0.0, comp = 0.0;
        const size_t off = (static_cast<size_t>(m) * 6 + q) * nt + t;
        for (size_t c = 0; c < nchunks; ++c) {
          kahan_add(sum, comp, partial[c * stride + off]);
        }
        (*dst[q])[t] = sum / wtot;
      }
    }
    return s;
  };

  EnsembleResult result;
  int m = 0;
  if (opt.resonant) {
    result.resonant = reduce_mode(m++);
    result.has_resonant = true;
  }
  if (opt.constant) {
    result.constant = reduce_mode(m);
    result.has_constant = true;
  }
  return result;
}

Minimum first_minimum(const std::vector<double>& tau,
                      const std::vector<double>& v) {
  if (tau.size() != v.size()) {
    throw std::invalid_argument("grid and value series differ in length");
  }
  const size_t n = v.size();
  for (size_t i = 1; i + 1 < n; ++i) {
    if (v[i - 1] > v[i] && v[i] < v[i + 1]) {
      // quadratic through the bracketing triple
      const double x0 = tau[i - 1], x1 = tau[i], x2 = tau[i + 1];
      const double y0 = v[i - 1], y1 = v[i], y2 = v[i + 1];
      const double d01 = (y1 - y0) / (x1 - x0);
      const double d12 = (y2 - y1) / (x2 - x1);
      const double a = (d12 - d01) / (x2 - x0);
      if (a <= 0.0) return {x1, y1};
      const double xv = 0.5 * (x0 + x1 - d01 / a);
      const double yv = y0 + (xv - x0) * (d01 + a * (xv - x1));
      return {xv, yv};
    }
  }
  throw SolverError("no interior minimum bracketed in the requested range");
}

std::vector<double> scan_tau_grid(double mean) {
  const double tau_max = 1.6 * std::log(std::max(mean, 2.0)) + 2.4;
  const double step = 0.04;
  const int n = static_cast<int>(std::ceil(tau_max / step)) + 1;
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = step * i;
  return grid;
}

std::vector<ScanRow> conversion_scan(const std::vector<double>& means,
                                     const std::string& mode, double eps_tail,
                                     int workers) {
  if (means.empty()) throw std::invalid_argument("scan needs at least one mean");
  for (double m : means) {
    if (!(m > 0.0)) {
      throw std::invalid_argument("scan means must be positive, got " +
                                  std::to_string(m));
    }
  }
  const bool want_res = mode == "resonant" || mode == "both";
  const bool want_con = mode == "constant" || mode == "both";
  if (!want_res && !want_con) {
    throw std::invalid_argument("unknown scan mode '" + mode +
                                "', expected resonant, constant, or both");
  }
  const long long d0 = std::max<long long>(1, std::llround(means[0]));

  std::vector<ScanRow> res_rows, con_rows;
  for (double m : means) {
    const std::vector<double> grid = scan_tau_grid(m);
    EnsembleOptions opt;
    opt.eps_tail = eps_tail;
    opt.workers = workers;
    opt.resonant = want_res;
    opt.constant = want_con;
    opt.constant_d = d0;
    const EnsembleResult r = coherent_ensemble(m, grid, opt);
    if (want_res) {
      const Minimum mn = first_minimum(grid, r.resonant.pump_m1);
      res_rows.push_back({m, mn.tau, mn.value, "resonant"});
    }
    if (want_con) {
      const Minimum mn = first_minimum(grid, r.constant.pump_m1);
      con_rows.push_back({m, mn.tau, mn.value, "constant"});
    }
  }
  std::vector<ScanRow> rows = std::move(res_rows);
  rows.insert(rows.end(), con_rows.begin(), con_rows.end());
  return rows;
}

}  // namespace fwm
