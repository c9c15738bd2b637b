#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace fwm {

// Invalid or inconsistent run configuration. The message carries every
// problem found, one per line, each tagged with its config line number where
// one exists.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

struct RunConfig {
  std::string scenario;
  std::string config_hash;  // FNV-1a 64 of the raw config bytes, hex

  // field amplitudes and phases (classical, lambda0-check)
  double omega1 = 0.0, omega2 = 0.0, e1 = 0.0, e2 = 0.0;
  double omega1_phase = 0.0, omega2_phase = 0.0, e1_phase = 0.0, e2_phase = 0.0;

  // lambda0-check
  double detuning = 1.0;
  std::vector<double> s_values;

  // classical / meanfield propagation
  double xi_max = 0.0;
  double tol = 1e-10;

  // number sectors (fock)
  long long n1 = 0, n2 = 0, n3 = 0, n4 = 0;

  // quantum time grids
  double tau_max = 0.0;
  int samples = 501;

  // coherent / scan / compare
  double mean = 0.0;
  double eps_tail = 1e-8;
  std::string denominator_mode = "resonant";
  long long constant_d = 0;
  std::vector<double> means;
  std::string modes = "both";

  // meanfield / mf-scan
  double b0 = 0.0;
  double seed = 1e-8;
  std::string form = "full";
  std::vector<double> b0_values;

  // phase-gate
  double tau_gate = 3.14159265358979323846;
};

// Names accepted as scenario values and CLI subcommands.
const std::vector<std::string>& known_scenarios();

// Parses and fully validates a config file; collects every error before
// throwing ConfigError.
RunConfig parse_config(const std::string& path);

// FNV-1a 64-bit hash of a byte string, lowercase hex.
std::string fnv1a_hex(const std::string& bytes);

}  // namespace fwm
