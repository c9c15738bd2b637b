#include "fwm/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

namespace fwm {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

struct Entry {
  std::string value;
  int line = 0;
  bool used = false;
};

// Collects typed lookups against the raw key/value map, appending one message
// per problem so a bad file reports everything at once.
class Reader {
 public:
  Reader(std::map<std::string, Entry>& entries, std::vector<std::string>& errors)
      : entries_(entries), errors_(errors) {}

  bool has(const std::string& key) const { return entries_.count(key) != 0; }

  void fail(const std::string& key, const std::string& msg) {
    auto it = entries_.find(key);
    if (it != entries_.end()) {
      errors_.push_back("line " + std::to_string(it->second.line) + ": " + msg);
    } else {
      errors_.push_back(msg);
    }
  }

  double real(const std::string& key, double lo, double hi, double def,
              bool required) {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      if (required) errors_.push_back("missing required key '" + key + "'");
      return def;
    }
    it->second.used = true;
    double v = 0.0;
    if (!parse_real(it->second.value, v)) {
      fail(key, "key '" + key + "' expects a number, got '" + it->second.value + "'");
      return def;
    }
    if (!(v >= lo && v <= hi)) {
      fail(key, "key '" + key + "' out of range [" + fmt(lo) + ", " + fmt(hi) +
                    "], got " + it->second.value);
      return def;
    }
    return v;
  }

  long long integer(const std::string& key, long long lo, long long hi,
                    long long def, bool required) {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      if (required) errors_.push_back("missing required key '" + key + "'");
      return def;
    }
    it->second.used = true;
    long long v = 0;
    if (!parse_int(it->second.value, v)) {
      fail(key, "key '" + key + "' expects an integer, got '" + it->second.value + "'");
      return def;
    }
    if (v < lo || v > hi) {
      fail(key, "key '" + key + "' out of range [" + std::to_string(lo) + ", " +
                    std::to_string(hi) + "], got " + it->second.value);
      return def;
    }
    return v;
  }

  std::string enumeration(const std::string& key,
                          const std::vector<std::string>& allowed,
                          const std::string& def, bool required) {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      if (required) errors_.push_back("missing required key '" + key + "'");
      return def;
    }
    it->second.used = true;
    const std::string v = it->second.value;
    if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
      std::string opts;
      for (size_t i = 0; i < allowed.size(); ++i) {
        opts += (i ? ", " : "") + allowed[i];
      }
      fail(key, "key '" + key + "' must be one of {" + opts + "}, got '" + v + "'");
      return def;
    }
    return v;
  }

  std::vector<double> real_list(const std::string& key, double lo, double hi,
                                bool required) {
    auto it = entries_.find(key);
    if (it == entries_.end()) {
      if (required) errors_.push_back("missing required key '" + key + "'");
      return {};
    }
    it->second.used = true;
    std::vector<double> out;
    std::string token;
    std::string normalized = it->second.value;
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::istringstream in(normalized);
    while (in >> token) {
      double v = 0.0;
      if (!parse_real(token, v)) {
        fail(key, "key '" + key + "' expects numbers, got '" + token + "'");
        return {};
      }
      if (!(v >= lo && v <= hi)) {
        fail(key, "key '" + key + "' entry out of range [" + fmt(lo) + ", " +
                      fmt(hi) + "], got " + token);
        return {};
      }
      out.push_back(v);
    }
    if (out.empty()) fail(key, "key '" + key + "' expects a nonempty list");
    return out;
  }

  void reject_unused(const std::string& scenario) {
    for (const auto& [key, entry] : entries_) {
      if (!entry.used && key != "scenario") {
        errors_.push_back("line " + std::to_string(entry.line) +
                          ": unknown key '" + key + "' for scenario '" +
                          scenario + "'");
      }
    }
  }

 private:
  static std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
  }

  static bool parse_real(const std::string& s, double& out) {
    try {
      size_t pos = 0;
      out = std::stod(s, &pos);
      return pos == s.size() && std::isfinite(out);
    } catch (const std::exception&) {
      return false;
    }
  }

  static bool parse_int(const std::string& s, long long& out) {
    try {
      size_t pos = 0;
      out = std::stoll(s, &pos);
      return pos == s.size();
    } catch (const std::exception&) {
      return false;
    }
  }

  std::map<std::string, Entry>& entries_;
  std::vector<std::string>& errors_;
};

void read_field_amplitudes(Reader& r, RunConfig& c, bool phases) {
  c.omega1 = r.real("omega1", -1e6, 1e6, 0.0, true);
  c.omega2 = r.real("omega2", -1e6, 1e6, 0.0, true);
  c.e1 = r.real("e1", -1e6, 1e6, 0.0, true);
  c.e2 = r.real("e2", -1e6, 1e6, 0.0, true);
  if (phases) {
    c.omega1_phase = r.real("omega1_phase", -100.0, 100.0, 0.0, false);
    c.omega2_phase = r.real("omega2_phase", -100.0, 100.0, 0.0, false);
    c.e1_phase = r.real("e1_phase", -100.0, 100.0, 0.0, false);
    c.e2_phase = r.real("e2_phase", -100.0, 100.0, 0.0, false);
  }
}

void read_samples(Reader& r, RunConfig& c) {
  c.samples = static_cast<int>(r.integer("samples", 2, 1000000, 501, false));
}

std::string join(const std::vector<std::string>& errors) {
  std::string out = "invalid configuration:";
  for (const auto& e : errors) out += "\n  " + e;
  return out;
}

}  // namespace

const std::vector<std::string>& known_scenarios() {
  static const std::vector<std::string> names = {
      "lambda0-check", "classical", "fock",    "coherent", "scan",
      "meanfield",     "mf-scan",   "phase-gate", "compare"};
  return names;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

RunConfig parse_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string raw = buffer.str();

  std::vector<std::string> errors;
  std::map<std::string, Entry> entries;
  {
    std::istringstream lines(raw);
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
      ++lineno;
      const size_t hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      const std::string stripped = trim(line);
      if (stripped.empty()) continue;
      const size_t eq = stripped.find('=');
      if (eq == std::string::npos) {
        errors.push_back("line " + std::to_string(lineno) +
                         ": expected 'key = value', got '" + stripped + "'");
        continue;
      }
      const std::string key = trim(stripped.substr(0, eq));
      const std::string value = trim(stripped.substr(eq + 1));
      if (key.empty()) {
        errors.push_back("line " + std::to_string(lineno) + ": empty key");
        continue;
      }
      auto [it, inserted] = entries.emplace(key, Entry{value, lineno, false});
      if (!inserted) {
        errors.push_back("line " + std::to_string(lineno) + ": duplicate key '" +
                         key + "' (first on line " +
                         std::to_string(it->second.line) + ")");
      }
    }
  }

  RunConfig cfg;
  cfg.config_hash = fnv1a_hex(raw);

  auto scenario_it = entries.find("scenario");
  if (scenario_it == entries.end()) {
    errors.push_back("missing required key 'scenario'");
    throw ConfigError(join(errors));
  }
  cfg.scenario = scenario_it->second.value;
  const auto& names = known_scenarios();
  if (std::find(names.begin(), names.end(), cfg.scenario) == names.end()) {
    std::string opts;
    for (size_t i = 0; i < names.size(); ++i) opts += (i ? ", " : "") + names[i];
    errors.push_back("line " + std::to_string(scenario_it->second.line) +
                     ": unknown scenario '" + cfg.scenario + "', expected one of {" +
                     opts + "}");
    throw ConfigError(join(errors));
  }

  Reader r(entries, errors);
  const std::string& sc = cfg.scenario;

  if (sc == "lambda0-check") {
    read_field_amplitudes(r, cfg, true);
    cfg.detuning = r.real("detuning", -1e12, 1e12, 1.0, true);
    if (r.has("detuning") && cfg.detuning == 0.0) {
      r.fail("detuning", "key 'detuning' must be nonzero");
    }
    cfg.s_values = r.has("s_values")
                       ? r.real_list("s_values", 1e-6, 1.0, false)
                       : std::vector<double>{0.1, 0.05, 0.025};
  } else if (sc == "classical") {
    read_field_amplitudes(r, cfg, true);
    cfg.xi_max = r.real("xi_max", 1e-9, 1e6, 0.0, true);
    read_samples(r, cfg);
    cfg.tol = r.real("tol", 1e-14, 1e-4, 1e-10, false);
  } else if (sc == "fock") {
    const bool has_n = r.has("n");
    const bool has_split = r.has("n1") || r.has("n2") || r.has("n3") || r.has("n4");
    if (has_n && has_split) {
      r.fail("n", "key 'n' conflicts with explicit n1..n4");
    }
    if (has_n) {
      const long long n = r.integer("n", 0, 2000, 0, true);
      cfg.n1 = cfg.n2 = n;
      cfg.n3 = cfg.n4 = 0;
    }
    if (has_split || !has_n) {
      cfg.n1 = r.integer("n1", 0, 2000, cfg.n1, !has_n);
      cfg.n2 = r.integer("n2", 0, 2000, cfg.n2, !has_n);
      cfg.n3 = r.integer("n3", 0, 2000, cfg.n3, false);
      cfg.n4 = r.integer("n4", 0, 2000, cfg.n4, false);
    }
    cfg.tau_max = r.real("tau_max", 1e-9, 1e6, 0.0, true);
    read_samples(r, cfg);
    cfg.denominator_mode =
        r.enumeration("denominator_mode", {"resonant", "constant"}, "resonant", false);
    cfg.constant_d = r.integer("constant_d", 1, 10000000, 0, false);
  } else if (sc == "coherent") {
    cfg.mean = r.real("mean", 1e-6, 10000.0, 0.0, true);
    cfg.tau_max = r.real("tau_max", 1e-9, 1e6, 0.0, true);
    read_samples(r, cfg);
    cfg.eps_tail = r.real("eps_tail", 1e-14, 0.1, 1e-8, false);
    cfg.denominator_mode =
        r.enumeration("denominator_mode", {"resonant", "constant"}, "resonant", false);
    cfg.constant_d = r.integer("constant_d", 1, 10000000, 0, false);
  } else if (sc == "scan") {
    cfg.means = r.real_list("means", 1e-6, 10000.0, true);
    cfg.modes = r.enumeration("modes", {"resonant", "constant", "both"}, "both", false);
    cfg.eps_tail = r.real("eps_tail", 1e-14, 0.1, 1e-8, false);
  } else if (sc == "meanfield") {
    cfg.b0 = r.real("b0", 1e-6, 1e7, 0.0, true);
    cfg.xi_max = r.real("xi_max", 1e-9, 1e6, 0.0, true);
    read_samples(r, cfg);
    cfg.seed = r.real("seed", 1e-14, 1e-2, 1e-8, false);
    cfg.form = r.enumeration("form", {"full", "reduced"}, "full", false);
    cfg.tol = r.real("tol", 1e-14, 1e-4, 1e-12, false);
  } else if (sc == "mf-scan") {
    cfg.b0_values = r.real_list("b0_values", 1e-6, 1e7, true);
  } else if (sc == "phase-gate") {
    cfg.tau_gate = r.real("tau", 1e-9, 1e6, cfg.tau_gate, false);
  } else if (sc == "compare") {
    cfg.mean = r.real("mean", 1e-6, 10000.0, 0.0, true);
    cfg.tau_max = r.real("tau_max", 1e-9, 1e6, 0.0, true);
    read_samples(r, cfg);
    cfg.eps_tail = r.real("eps_tail", 1e-14, 0.1, 1e-8, false);
    cfg.seed = r.real("seed", 1e-14, 1e-2, 1e-8, false);
  }

  r.reject_unused(sc);

  if (!errors.empty()) throw ConfigError(join(errors));
  return cfg;
}

}  // namespace fwm
