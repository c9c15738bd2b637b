#pragma once

#include <array>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace fwm {

using complex = std::complex<double>;

// Thrown when a numerical routine cannot deliver its contract (stiffness,
// non-convergence, domain overshoot). The CLI maps this to exit code 2.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

struct PhysicalParams {
    double kappa = 1.0;   // coupling, inverse length
    double delta = 1.0;   // one-photon detuning, angular frequency units
    double gamma1 = 0.0;  // upper-state decay rates
    double gamma2 = 0.0;

    void validate() const {
        if (!(kappa > 0.0)) throw std::invalid_argument("kappa must be > 0");
        if (delta == 0.0) throw std::invalid_argument("delta must be nonzero");
        if (gamma1 < 0.0 || gamma2 < 0.0)
            throw std::invalid_argument("decay rates must be >= 0");
    }
};

// All solvers consume only kappa/delta; sign is preserved.
inline double dimensionless_rate(const PhysicalParams& p) {
    if (p.delta == 0.0) throw std::invalid_argument("delta must be nonzero");
    return p.kappa / p.delta;
}

// xi = (kappa/delta) * zeta, strictly proportional to the lab coordinate.
inline double to_dimensionless(double zeta, const PhysicalParams& p) {
    return dimensionless_rate(p) * zeta;
}

struct FieldState {
    complex omega1{};  // pump Rabi amplitudes
    complex omega2{};
    complex e1{};      // generated-field Rabi amplitudes
    complex e2{};
};

// Classical c-number versions of the four conserved quantities:
// m1 = |O1|^2+|E1|^2, m2 = |O2|^2+|E2|^2, m3 = |O1|^2-|O2|^2,
// m4 = 2 Re(O1 O2 E1* E2*).
inline std::array<double, 4> manley_rowe(const FieldState& f) {
    const double i_o1 = std::norm(f.omega1);
    const double i_o2 = std::norm(f.omega2);
    const double i_e1 = std::norm(f.e1);
    const double i_e2 = std::norm(f.e2);
    const complex g = f.omega1 * f.omega2 * std::conj(f.e1) * std::conj(f.e2);
    return {i_o1 + i_e1, i_o2 + i_e2, i_o1 - i_o2, 2.0 * g.real()};
}

struct TrajectoryRecord {
    std::vector<std::string> labels;            // column names, coordinate first
    std::vector<std::vector<double>> rows;      // coordinate strictly increasing

    void check_monotone() const {
        for (std::size_t i = 1; i < rows.size(); ++i)
            if (!(rows[i][0] > rows[i - 1][0]))
                throw SolverError("trajectory coordinates not strictly increasing");
    }
};

}  // namespace fwm
