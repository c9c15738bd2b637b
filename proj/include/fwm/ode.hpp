#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>

#include "fwm/core.hpp"

namespace fwm {

// Adaptive embedded Dormand-Prince 5(4) pair over a fixed-size real state.
// The error estimate uses the standard 5th/4th order difference; step-size
// control is plain PI-free EPS scaling with safety factor 0.9.
template <std::size_t N>
struct OdeStepper {
    using State = std::array<double, N>;
    using Rhs = std::function<void(double, const State&, State&)>;

    double rtol = 1e-10;
    double atol = 1e-12;

    // Integrates from (t, y) to t_end, invoking sink(t, y) at every accepted
    // step boundary including t_end. sink is not called for the initial point.
    template <typename Sink>
    void integrate(const Rhs& rhs, double t, State y, double t_end, Sink&& sink) const {
        static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
        static constexpr double a21 = 1.0 / 5;
        static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
        static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
        static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                                a53 = 64448.0 / 6561, a54 = -212.0 / 729;
        static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                                a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                                a65 = -5103.0 / 18656;
        static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                                b5 = -2187.0 / 6784, b6 = 11.0 / 84;
        static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                                e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

        const double span = t_end - t;
        if (span <= 0.0) return;
        double h = span / 100.0;
        State k1, k2, k3, k4, k5, k6, k7, yt, ynew;
        rhs(t, y, k1);
        const double hmin = span * 1e-14;
        int rejects_in_row = 0;

        while (t < t_end) {
            h = std::min(h, t_end - t);
            for (std::size_t i = 0; i < N; ++i) yt[i] = y[i] + h * a21 * k1[i];
            rhs(t + c2 * h, yt, k2);
            for (std::size_t i = 0; i < N; ++i)
                yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
            rhs(t + c3 * h, yt, k3);
            for (std::size_t i = 0; i < N; ++i)
                yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
            rhs(t + c4 * h, yt, k4);
            for (std::size_t i = 0; i < N; ++i)
                yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
            rhs(t + c5 * h, yt, k5);
            for (std::size_t i = 0; i < N; ++i)
                yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                                    a64 * k4[i] + a65 * k5[i]);
            rhs(t + h, yt, k6);
            for (std::size_t i = 0; i < N; ++i)
                ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] +
                                      b5 * k5[i] + b6 * k6[i]);
            rhs(t + h, ynew, k7);

            double err = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const double ei = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] +
                                       e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
                const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(ynew[i]));
                err = std::max(err, std::abs(ei) / sc);
            }

            if (err <= 1.0) {
                t += h;
                y = ynew;
                k1 = k7;  // FSAL
                sink(t, y);
                rejects_in_row = 0;
                const double grow = err > 0.0 ? 0.9 * std::pow(err, -0.2) : 5.0;
                h *= std::clamp(grow, 0.2, 5.0);
            } else {
                h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
                if (++rejects_in_row > 60 || h < hmin)
                    throw SolverError("step-size underflow (stiffness) at t = " +
                                      std::to_string(t));
            }
        }
    }

    // Convenience: returns the state at a strictly increasing grid, stepping
    // exactly onto every grid point.
    std::vector<State> at_grid(const Rhs& rhs, State y0, const std::vector<double>& grid) const {
        std::vector<State> out;
        out.reserve(grid.size());
        double t = grid.empty() ? 0.0 : grid.front();
        State y = y0;
        if (!grid.empty()) out.push_back(y);
        for (std::size_t g = 1; g < grid.size(); ++g) {
            integrate(rhs, t, y, grid[g], [&](double, const State& s) { y = s; });
            t = grid[g];
            out.push_back(y);
        }
        return out;
    }
};

}  // namespace fwm
