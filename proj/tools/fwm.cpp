#include <chrono>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fwm/classical.hpp"
#include "fwm/config.hpp"
#include "fwm/core.hpp"
#include "fwm/emit.hpp"
#include "fwm/ensemble.hpp"
#include "fwm/five_level.hpp"
#include "fwm/meanfield.hpp"
#include "fwm/sector.hpp"
#include "fwm/version.hpp"

namespace {

using fwm::ConfigError;
using fwm::RunConfig;

struct OutputTracker {
  std::filesystem::path dir;
  std::vector<std::pair<std::string, size_t>> outputs;  // file name, data rows

  std::string path(const std::string& name) const { return (dir / name).string(); }
  void record(const std::string& name, size_t rows) { outputs.emplace_back(name, rows); }
};

std::vector<double> linspace(double a, double b, int n) {
  std::vector<double> v(n);
  const double step = (b - a) / (n - 1);
  for (int i = 0; i < n; ++i) v[i] = a + step * i;
  return v;
}

fwm::complex polar(double amp, double phase) {
  return amp * fwm::complex(std::cos(phase), std::sin(phase));
}

fwm::FieldState config_fields(const RunConfig& cfg) {
  return {polar(cfg.omega1, cfg.omega1_phase), polar(cfg.omega2, cfg.omega2_phase),
          polar(cfg.e1, cfg.e1_phase), polar(cfg.e2, cfg.e2_phase)};
}

// Occupations this small are pure accumulation roundoff (ensemble sums leave
// ~1e-30 where the exact value is zero) and carry no statistics.
double safe_q(double m1, double m2) {
  if (m1 <= 1e-12) return std::nan("");
  return fwm::mandel_q(m1, m2);
}

std::string fd(double v) { return fwm::format_double(v); }

void run_lambda0_check(const RunConfig& cfg, OutputTracker& out) {
  fwm::PhysicalParams p;
  p.delta = cfg.detuning;
  const fwm::FieldState base = config_fields(cfg);
  fwm::CsvWriter csv(out.path("lambda0-check.csv"), {"s", "exact", "approx", "rel_err"});
  for (double s : cfg.s_values) {
    fwm::FieldState f = base;
    f.omega1 *= s;
    f.omega2 *= s;
    f.e1 *= s;
    f.e2 *= s;
    const fwm::complex exact = fwm::adiabatic_branch(fwm::build_five_level(f, p));
    const double approx = fwm::lambda0(f, p);
    const double scale = std::max(std::abs(approx), 1e-300);
    const double rel = std::abs(exact.real() - approx) / scale;
    csv.row({fd(s), fd(exact.real()), fd(approx), fd(rel)});
  }
  csv.close();
  out.record("lambda0-check.csv", cfg.s_values.size());
}

void run_classical(const RunConfig& cfg, OutputTracker& out) {
  const std::vector<double> grid = linspace(0.0, cfg.xi_max, cfg.samples);
  const auto states = fwm::integrate_classical_grid(config_fields(cfg), grid, cfg.tol);
  fwm::CsvWriter csv(out.path("classical.csv"),
                     {"xi", "I_omega1", "I_omega2", "I_e1", "I_e2", "m1", "m2",
                      "m3", "m4"});
  for (size_t i = 0; i < states.size(); ++i) {
    const fwm::FieldState& f = states[i];
    const auto m = fwm::manley_rowe(f);
    csv.row({fd(grid[i]), fd(std::norm(f.omega1)), fd(std::norm(f.omega2)),
             fd(std::norm(f.e1)), fd(std::norm(f.e2)), fd(m[0]), fd(m[1]),
             fd(m[2]), fd(m[3])});
  }
  csv.close();
  out.record("classical.csv", states.size());
}

void moment_rows(fwm::CsvWriter& csv, const std::vector<double>& tau,
                 const std::vector<double>& pm1, const std::vector<double>& pm2,
                 const std::vector<double>& gm1, const std::vector<double>& gm2,
                 const std::vector<double>& dm1, const std::vector<double>& dm2,
                 const std::vector<std::string>& extra) {
  for (size_t i = 0; i < tau.size(); ++i) {
    const double pvar = pm2[i] - pm1[i] * pm1[i];
    const double gvar = gm2[i] - gm1[i] * gm1[i];
    std::vector<std::string> cells = {
        fd(tau[i]),          fd(pm1[i]),
        fd(gm1[i]),          fd(pvar),
        fd(gvar),            fd(safe_q(pm1[i], pm2[i])),
        fd(safe_q(gm1[i], gm2[i])),
        fd(fwm::intensity_difference_variance(dm1[i], dm2[i]))};
    cells.insert(cells.end(), extra.begin(), extra.end());
    csv.row(cells);
  }
}

void run_fock(const RunConfig& cfg, OutputTracker& out) {
  const fwm::FockSector sec = fwm::build_sector(cfg.n1, cfg.n2, cfg.n3, cfg.n4);
  double denom = static_cast<double>(sec.d);
  if (cfg.denominator_mode == "constant" && cfg.constant_d > 0) {
    denom = static_cast<double>(cfg.constant_d);
  }
  const std::vector<double> grid = linspace(0.0, cfg.tau_max, cfg.samples);
  const fwm::MomentSeries m = fwm::moment_series(sec, grid, denom);
  fwm::CsvWriter csv(out.path("fock.csv"),
                     {"tau", "pump_mean", "gen_mean", "pump_var", "gen_var",
                      "q_pump", "q_gen", "var_diff"});
  moment_rows(csv, grid, m.pump_m1, m.pump_m2, m.gen_m1, m.gen_m2, m.diff_m1,
              m.diff_m2, {});
  csv.close();
  out.record("fock.csv", grid.size());
}

void run_coherent(const RunConfig& cfg, OutputTracker& out, int workers) {
  fwm::EnsembleOptions opt;
  opt.eps_tail = cfg.eps_tail;
  opt.workers = workers;
  opt.resonant = cfg.denominator_mode == "resonant";
  opt.constant = cfg.denominator_mode == "constant";
  opt.constant_d = cfg.constant_d;
  const std::vector<double> grid = linspace(0.0, cfg.tau_max, cfg.samples);
  const fwm::EnsembleResult r = fwm::coherent_ensemble(cfg.mean, grid, opt);
  const fwm::EnsembleSeries& s = opt.resonant ? r.resonant : r.constant;
  fwm::CsvWriter csv(out.path("coherent.csv"),
                     {"tau", "pump_mean", "gen_mean", "pump_var", "gen_var",
                      "q_pump", "q_gen", "var_diff", "weight_mass", "tail_mass"});
  moment_rows(csv, grid, s.pump_m1, s.pump_m2, s.gen_m1, s.gen_m2, s.diff_m1,
              s.diff_m2, {fd(s.weight_mass), fd(s.tail_mass)});
  csv.close();
  out.record("coherent.csv", grid.size());
}

void run_scan(const RunConfig& cfg, OutputTracker& out, int workers) {
  const auto rows = fwm::conversion_scan(cfg.means, cfg.modes, cfg.eps_tail, workers);
  fwm::CsvWriter csv(out.path("scan.csv"), {"mean", "tau_min", "value", "mode"});
  for (const auto& r : rows) {
    csv.row({fd(r.mean), fd(r.tau_min), fd(r.value), r.mode});
  }
  csv.close();
  out.record("scan.csv", rows.size());
}

void run_meanfield(const RunConfig& cfg, OutputTracker& out) {
  const std::vector<double> grid = linspace(0.0, cfg.xi_max, cfg.samples);
  fwm::CsvWriter csv(out.path("meanfield.csv"), {"xi", "b"});
  if (cfg.form == "reduced") {
    const auto b = fwm::integrate_meanfield_reduced(cfg.b0, grid, cfg.tol);
    for (size_t i = 0; i < b.size(); ++i) csv.row({fd(grid[i]), fd(b[i])});
  } else {
    const auto pts = fwm::integrate_meanfield_full(cfg.b0, cfg.seed, grid, cfg.tol);
    for (const auto& p : pts) csv.row({fd(p.xi), fd(p.b)});
  }
  csv.close();
  out.record("meanfield.csv", grid.size());
}

void run_mf_scan(const RunConfig& cfg, OutputTracker& out) {
  fwm::CsvWriter csv(out.path("mf-scan.csv"), {"b0", "z_conv", "efficiency"});
  for (double b0 : cfg.b0_values) {
    csv.row({fd(b0), fd(fwm::conversion_distance(b0)),
             fd(fwm::conversion_efficiency(b0))});
  }
  csv.close();
  out.record("mf-scan.csv", cfg.b0_values.size());
}

void run_phase_gate(const RunConfig& cfg, OutputTracker& out) {
  const auto tt = fwm::phase_gate_truth_table(cfg.tau_gate);
  fwm::CsvWriter csv(out.path("phase-gate.csv"), {"n1", "n2", "amp_re", "amp_im"});
  int idx = 0;
  for (int q1 : {0, 1}) {
    for (int q2 : {0, 1}) {
      csv.row({std::to_string(q1), std::to_string(q2), fd(tt[idx].real()),
               fd(tt[idx].imag())});
      ++idx;
    }
  }
  csv.close();
  out.record("phase-gate.csv", 4);
}

void run_compare(const RunConfig& cfg, OutputTracker& out, int workers) {
  const std::vector<double> grid = linspace(0.0, cfg.tau_max, cfg.samples);
  fwm::EnsembleOptions opt;
  opt.eps_tail = cfg.eps_tail;
  opt.workers = workers;
  const fwm::EnsembleResult r = fwm::coherent_ensemble(cfg.mean, grid, opt);
  const auto mf = fwm::integrate_meanfield_full(cfg.mean, cfg.seed, grid);
  fwm::CsvWriter csv(out.path("compare.csv"),
                     {"tau", "pump_quantum", "pump_meanfield"});
  for (size_t i = 0; i < grid.size(); ++i) {
    csv.row({fd(grid[i]), fd(r.resonant.pump_m1[i]), fd(mf[i].b)});
  }
  csv.close();
  out.record("compare.csv", grid.size());
}

// Ensemble sums over every populated number sector; cost grows quickly with
// the mean, so large runs must be requested explicitly.
void check_long_running(const RunConfig& cfg, bool long_running) {
  double largest = 0.0;
  if (cfg.scenario == "coherent" || cfg.scenario == "compare") largest = cfg.mean;
  for (double m : cfg.means) largest = std::max(largest, m);
  if (largest > 300.0 && !long_running) {
    throw ConfigError("mean " + std::to_string(largest) +
                      " exceeds 300; pass --long-running to confirm");
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"double-lambda four-wave mixing simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = "out";
  int workers = 1;
  bool long_running = false;

  const std::vector<std::pair<std::string, std::string>> subs = {
      {"lambda0-check", "weak-field eigenvalue against its closed form"},
      {"classical", "classical field propagation"},
      {"fock", "single number-sector dynamics"},
      {"coherent", "coherent-state ensemble dynamics"},
      {"scan", "conversion distance vs pump mean"},
      {"meanfield", "pair-amplitude mean-field propagation"},
      {"mf-scan", "mean-field conversion distance vs input"},
      {"phase-gate", "single-photon conditional-phase truth table"},
      {"compare", "quantum ensemble vs mean-field overlay"}};
  for (const auto& [name, desc] : subs) {
    CLI::App* sub = app.add_subcommand(name, desc);
    sub->add_option("--config", config_path, "config file")->required();
    sub->add_option("--out", out_dir, "output directory");
    sub->add_option("--workers", workers, "worker threads")
        ->check(CLI::Range(1, 64));
    sub->add_flag("--long-running", long_running, "allow expensive runs");
  }

  CLI11_PARSE(app, argc, argv);
  const std::string chosen = app.get_subcommands().front()->get_name();

  OutputTracker out;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const RunConfig cfg = fwm::parse_config(config_path);
    if (cfg.scenario != chosen) {
      throw ConfigError("config declares scenario '" + cfg.scenario +
                        "' but the subcommand is '" + chosen + "'");
    }
    check_long_running(cfg, long_running);

    out.dir = out_dir;
    std::filesystem::create_directories(out.dir);

    if (chosen == "lambda0-check") run_lambda0_check(cfg, out);
    else if (chosen == "classical") run_classical(cfg, out);
    else if (chosen == "fock") run_fock(cfg, out);
    else if (chosen == "coherent") run_coherent(cfg, out, workers);
    else if (chosen == "scan") run_scan(cfg, out, workers);
    else if (chosen == "meanfield") run_meanfield(cfg, out);
    else if (chosen == "mf-scan") run_mf_scan(cfg, out);
    else if (chosen == "phase-gate") run_phase_gate(cfg, out);
    else if (chosen == "compare") run_compare(cfg, out, workers);

    const double wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    nlohmann::ordered_json manifest;
    manifest["app"] = "fwm";
    manifest["version"] = fwm::kVersion;
    manifest["scenario"] = chosen;
    manifest["config_hash"] = cfg.config_hash;
    manifest["workers"] = workers;
    manifest["outputs"] = nlohmann::ordered_json::array();
    for (const auto& [name, rows] : out.outputs) {
      manifest["outputs"].push_back({{"file", name}, {"rows", rows}});
    }
    manifest["wall_time_ms"] = wall_ms;
    std::ofstream mf(out.dir / "manifest.json", std::ios::binary);
    mf << manifest.dump(2) << '\n';
    if (!mf) throw fwm::SolverError("cannot write manifest.json");
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: invalid input: " << e.what() << '\n';
    return 1;
  } catch (const fwm::SolverError& e) {
    // do not leave partial results behind
    if (!out.dir.empty()) {
      std::error_code ec;
      for (const auto& [name, rows] : out.outputs) {
        std::filesystem::remove(out.dir / name, ec);
      }
      std::filesystem::remove(out.dir / (chosen + ".csv"), ec);
    }
    std::cerr << "error: solver failure: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
