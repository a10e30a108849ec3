#include "qicc/projgrad.hpp"

#include <algorithm>
#include <numeric>

namespace qicc {

namespace {

void clip_to_box(std::vector<double>& g, double cap) {
    for (double& gk : g) {
        gk = std::clamp(gk, 0.0, cap);
    }
}

// Solves sum_k eta_k max(0, g_bar_k - lambda eta_k) = gamma for lambda >= 0.
// The left side is continuous, piecewise linear and non-increasing with
// breakpoints at g_bar_k / eta_k.
double water_level(std::span<const double> eta, std::span<const double> g_bar, double gamma) {
    const std::size_t n = g_bar.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return g_bar[a] / eta[a] < g_bar[b] / eta[b];
    });

    // Suffix sums over devices still above zero once lambda passes each breakpoint.
    double weighted = 0.0;
    double squares = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        weighted += eta[k] * std::max(g_bar[k], 0.0);
        squares += eta[k] * eta[k];
    }
    double segment_start = 0.0;
    for (std::size_t idx = 0; idx < n; ++idx) {
        const std::size_t k = order[idx];
        const double breakpoint = std::max(g_bar[k], 0.0) / eta[k];
        if (breakpoint > segment_start && squares > 0.0) {
            const double lambda = (weighted - gamma) / squares;
            if (lambda <= breakpoint) {
                return std::max(lambda, segment_start);
            }
            segment_start = breakpoint;
        }
        weighted -= eta[k] * std::max(g_bar[k], 0.0);
        squares -= eta[k] * eta[k];
    }
    return segment_start;
}

}  // namespace

std::vector<double> pg_step(const Scenario& scenario, std::span<const double> g, double n_sig,
                            const PgParams& params) {
    const auto grad = mse_gradient(scenario, g, n_sig, params.epsilon_floor);
    std::vector<double> out(g.begin(), g.end());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] -= params.mu * grad[k];
    }
    clip_to_box(out, scenario.Pc);
    return out;
}

std::vector<double> halfspace_closed_form(const Scenario& scenario, std::span<const double> g_bar,
                                          double gamma_max) {
    const auto eta = scenario.oac_eta();
    double squares = 0.0;
    for (double e : eta) {
        squares += e * e;
    }
    const double delta = (aggregate_oac_power(scenario, g_bar) - gamma_max) / squares;
    std::vector<double> out(g_bar.begin(), g_bar.end());
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] -= eta[k] * delta;
    }
    return out;
}

std::vector<double> project_halfspace(const Scenario& scenario, std::span<const double> g_bar,
                                      double gamma_max) {
    if (aggregate_oac_power(scenario, g_bar) <= gamma_max) {
        return {g_bar.begin(), g_bar.end()};
    }
    auto out = halfspace_closed_form(scenario, g_bar, gamma_max);
    if (std::all_of(out.begin(), out.end(), [](double gk) { return gk >= 0.0; })) {
        clip_to_box(out, scenario.Pc);
        return out;
    }
    const auto eta = scenario.oac_eta();
    const double lambda = water_level(eta, g_bar, gamma_max);
    for (std::size_t k = 0; k < out.size(); ++k) {
        out[k] = g_bar[k] - lambda * eta[k];
    }
    clip_to_box(out, scenario.Pc);
    return out;
}

}  // namespace qicc
