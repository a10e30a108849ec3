#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

#include "qicc/scenario.hpp"

namespace qicc {

/// Bracket and stopping rule for a monotone 1-D root search. The search
/// stops once |f(x) - target| <= tolerance * max(1, |target|).
struct BisectionSpec {
    double lo = 0.0;
    double hi = 1.0;
    double tolerance = 1e-6;
    int max_steps = 200;
};

struct RootResult {
    double root = 0.0;
    /// f(root) - target at the returned point.
    double residual = 0.0;
    int steps = 0;
    /// The equality has no root in range and the returned value is the
    /// boundary where the inequality constraint is already slack.
    bool capped = false;
};

/// Residual band tolerance * max(1, |target|) shared by every solver here.
inline double residual_band(double tolerance, double target) noexcept {
    return tolerance * std::max(1.0, std::abs(target));
}

/// Bisection for a strictly monotone f on [spec.lo, spec.hi]. Throws
/// std::invalid_argument when the bracket does not straddle `target`.
template <typename F>
RootResult bisect_monotone(F&& f, double target, const BisectionSpec& spec) {
    if (!(spec.lo <= spec.hi) || !(spec.tolerance > 0.0)) {
        throw std::invalid_argument("bisection: need lo <= hi and tolerance > 0");
    }
    const double band = residual_band(spec.tolerance, target);
    double lo = spec.lo;
    double hi = spec.hi;
    const double r_lo = f(lo) - target;
    if (std::abs(r_lo) <= band) {
        return {lo, r_lo, 0, false};
    }
    const double r_hi = f(hi) - target;
    if (std::abs(r_hi) <= band) {
        return {hi, r_hi, 0, false};
    }
    if ((r_lo < 0.0) == (r_hi < 0.0)) {
        throw std::invalid_argument("bisection: target is not bracketed");
    }
    const bool increasing = r_lo < 0.0;
    RootResult out;
    for (int step = 1; step <= spec.max_steps; ++step) {
        const double mid = 0.5 * (lo + hi);
        const double r = f(mid) - target;
        out = {mid, r, step, false};
        if (std::abs(r) <= band || mid == lo || mid == hi) {
            break;
        }
        if ((r < 0.0) == increasing) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return out;
}

/// Smallest aggregate communication power N_sig in [0, N_sig^max] with
/// rate_gap(N_sig, n_eff) = r_sum. Returns nullopt when r_sum is out of
/// reach even at N_sig^max (beyond one residual band).
std::optional<RootResult> solve_nsig(const Scenario& scenario, double n_eff, double r_sum,
                                     double tolerance, int max_steps = 200);

/// Largest aggregate OAC power Gamma = N_eff - N_0 compatible with r_sum
/// when the communication devices transmit at full power, capped at
/// sum_k eta_k P_c. Throws std::invalid_argument when r_sum exceeds
/// max_sum_rate by more than one residual band.
RootResult solve_gamma_max(const Scenario& scenario, double r_sum, double tolerance,
                           int max_steps = 200);

}  // namespace qicc
