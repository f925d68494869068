#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "thzmix/errors.hpp"

namespace thzmix {

// Embedded Dormand-Prince 5(4) integrator with adaptive step size and an
// optional per-step monitor. Returning false from the monitor rejects the
// accepted step and retries with half the step size (used to enforce
// invariant-drift budgets that the local error estimate cannot see).
struct Rk45Options {
    double rtol = 1e-9;
    double atol = 1e-12;
    double h_initial = 0.0;   // 0 => choose automatically
    double h_min_factor = 1e-14;  // h_min = factor * span
    std::size_t max_steps = 50'000'000;
};

struct Rk45Stats {
    std::size_t n_accepted = 0;
    std::size_t n_rejected = 0;
    std::size_t n_rhs_evals = 0;
};

using Rk45Rhs = std::function<void(double t, const std::vector<double>& y, std::vector<double>& dydt)>;
// monitor(t_new, y_new) -> accept?
using Rk45Monitor = std::function<bool(double t, const std::vector<double>& y)>;
// observer(t, y) called after every accepted step (and at t0)
using Rk45Observer = std::function<void(double t, const std::vector<double>& y)>;

inline Rk45Stats integrate_rk45(const Rk45Rhs& rhs, double t0, double t1, std::vector<double>& y,
                                const Rk45Options& opt = {}, const Rk45Monitor& monitor = {},
                                const Rk45Observer& observer = {}) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 35.0 / 384 - 5179.0 / 57600, e3 = 500.0 / 1113 - 7571.0 / 16695,
                            e4 = 125.0 / 192 - 393.0 / 640, e5 = -2187.0 / 6784 + 92097.0 / 339200,
                            e6 = 11.0 / 84 - 187.0 / 2100, e7 = -1.0 / 40;

    const std::size_t n = y.size();
    const double span = t1 - t0;
    if (span == 0.0) return {};
    const double dir = span > 0 ? 1.0 : -1.0;
    const double h_min = opt.h_min_factor * std::fabs(span);

    Rk45Stats stats;
    std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), ytmp(n), ynew(n);

    rhs(t0, y, k1);
    ++stats.n_rhs_evals;

    double h = opt.h_initial;
    if (h == 0.0) {
        double ynorm = 0.0, fnorm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            ynorm = std::max(ynorm, std::fabs(y[i]));
            fnorm = std::max(fnorm, std::fabs(k1[i]));
        }
        h = (fnorm > 0.0) ? 0.01 * std::max(ynorm, opt.atol) / fnorm : 1e-6 * std::fabs(span);
        h = std::min(h, 0.1 * std::fabs(span));
    }
    h *= dir;

    if (observer) observer(t0, y);

    double t = t0;
    bool k1_fresh = true;  // FSAL
    std::size_t attempts = 0;
    while (dir * (t1 - t) > 0.0) {
        if (++attempts > opt.max_steps)
            throw SolverError("integrate_rk45: step budget exhausted at t = " + std::to_string(t));

        if (dir * (t + h) > dir * t1) h = t1 - t;
        if (std::fabs(h) < h_min)
            throw SolverError("integrate_rk45: step size underflow at t = " + std::to_string(t));

        if (!k1_fresh) {
            rhs(t, y, k1);
            ++stats.n_rhs_evals;
            k1_fresh = true;
        }
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * a21 * k1[i];
        rhs(t + c2 * h, ytmp, k2);
        for (std::size_t i = 0; i < n; ++i) ytmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
        rhs(t + c3 * h, ytmp, k3);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
        rhs(t + c4 * h, ytmp, k4);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
        rhs(t + c5 * h, ytmp, k5);
        for (std::size_t i = 0; i < n; ++i)
            ytmp[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
        rhs(t + h, ytmp, k6);
        for (std::size_t i = 0; i < n; ++i)
            ynew[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        rhs(t + h, ynew, k7);
        stats.n_rhs_evals += 6;

        double err = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double sc = opt.atol + opt.rtol * std::max(std::fabs(y[i]), std::fabs(ynew[i]));
            const double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] +
                                  e7 * k7[i]);
            err = std::max(err, std::fabs(e) / sc);
        }

        if (err <= 1.0) {
            if (monitor && !monitor(t + h, ynew)) {
                ++stats.n_rejected;
                h *= 0.5;
                continue;
            }
            t += h;
            y = ynew;
            k1 = k7;  // FSAL
            ++stats.n_accepted;
            if (observer) observer(t, y);
            const double fac = std::clamp(0.9 * std::pow(err > 0 ? err : 1e-16, -0.2), 0.2, 5.0);
            h *= fac;
        } else {
            ++stats.n_rejected;
            k1_fresh = true;  // k1 still valid at unchanged t
            h *= std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
        }
    }
    return stats;
}

}  // namespace thzmix
