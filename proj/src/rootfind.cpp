#include "qicc/rootfind.hpp"

#include <string>

#include "qicc/entropy.hpp"

namespace qicc {

std::optional<RootResult> solve_nsig(const Scenario& scenario, double n_eff, double r_sum,
                                     double tolerance, int max_steps) {
    if (r_sum <= 0.0) {
        return RootResult{0.0, 0.0, 0, false};
    }
    const double n_max = scenario.max_comm_power();
    const double reach = detail::rate_gap(n_max, n_eff);
    if (reach < r_sum - residual_band(tolerance, r_sum)) {
        return std::nullopt;
    }
    return bisect_monotone([n_eff](double n) { return detail::rate_gap(n, n_eff); }, r_sum,
                           BisectionSpec{0.0, n_max, tolerance, max_steps});
}

RootResult solve_gamma_max(const Scenario& scenario, double r_sum, double tolerance, int max_steps) {
    const double r_max = max_sum_rate(scenario);
    if (r_sum > r_max + residual_band(tolerance, r_sum)) {
        throw std::invalid_argument("requested sum-rate " + std::to_string(r_sum) +
                                    " exceeds the maximum " + std::to_string(r_max));
    }
    const double n_max = scenario.max_comm_power();
    const double cap = scenario.max_oac_power();
    const auto rate_at = [&](double gamma) { return detail::rate_gap(n_max, scenario.N0 + gamma); };
    const double slack_rate = rate_at(cap);
    if (slack_rate >= r_sum) {
        return RootResult{cap, slack_rate - r_sum, 0, true};
    }
    return bisect_monotone(rate_at, r_sum, BisectionSpec{0.0, cap, tolerance, max_steps});
}

}  // namespace qicc
