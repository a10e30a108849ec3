#pragma once

// Test-only helpers: scenario generators and oracles that do not share
// code paths with the library.

#include <cmath>
#include <cstddef>
#include <random>
#include <vector>

#include "qicc/scenario.hpp"

namespace qicc::testing {

/// Scenario family used throughout the numerical studies: N0 = 2,
/// transmissivity 0.6 split over K and 0.4 over M, Pc = Pt.
inline Scenario standard_scenario(std::size_t K, std::size_t M, double power) {
    return Scenario::from_share_rule(K, M, 0.6, 2.0, power, power);
}

/// The eight (K, M, P) combinations of the standard suite.
inline std::vector<Scenario> standard_suite() {
    std::vector<Scenario> out;
    for (double p : {5.0, 10.0}) {
        for (auto [K, M] : {std::pair<std::size_t, std::size_t>{2, 2}, {2, 4}, {4, 2}, {4, 4}}) {
            out.push_back(standard_scenario(K, M, p));
        }
    }
    return out;
}

/// Random valid scenario with asymmetric transmissivities.
inline Scenario random_scenario(std::mt19937_64& rng, std::size_t max_k = 4, std::size_t max_m = 4) {
    std::uniform_int_distribution<std::size_t> k_dist(1, max_k);
    std::uniform_int_distribution<std::size_t> m_dist(0, max_m);
    std::uniform_real_distribution<double> weight(0.2, 1.0);
    std::uniform_real_distribution<double> power(1.0, 20.0);
    std::uniform_real_distribution<double> noise(0.5, 4.0);
    Scenario s;
    s.K = k_dist(rng);
    s.M = m_dist(rng);
    double total = 0.0;
    for (std::size_t i = 0; i < s.K + s.M; ++i) {
        s.eta.push_back(weight(rng));
        total += s.eta.back();
    }
    for (double& e : s.eta) e /= total;
    s.N0 = noise(rng);
    s.Pc = power(rng);
    s.Pt = power(rng);
    return s;
}

/// Random valid scenario whose OAC devices share one transmissivity.
inline Scenario random_equal_oac_scenario(std::mt19937_64& rng, std::size_t max_k = 4, std::size_t max_m = 4) {
    Scenario s = random_scenario(rng, max_k, max_m);
    std::uniform_real_distribution<double> share(0.1, 0.9);
    const double oac = s.M == 0 ? 1.0 : share(rng);
    return Scenario::from_share_rule(s.K, s.M, oac, s.N0, s.Pc, s.Pt);
}

/// Box-feasible powers with each component drawn from [lo, hi] * Pc.
inline std::vector<double> random_powers(std::mt19937_64& rng, const Scenario& s, double lo = 0.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    std::vector<double> g(s.K);
    for (double& gk : g) gk = u(rng) * s.Pc;
    return g;
}

/// Entropy of a thermal state straight from the definition in long double.
inline long double naive_entropy(long double x) {
    if (x == 0.0L) return 0.0L;
    return ((x + 1.0L) * std::log(x + 1.0L) - x * std::log(x)) / std::log(2.0L);
}

inline long double naive_rate_gap(long double s, long double e) { return naive_entropy(s + e) - naive_entropy(e); }

/// Reduced MSE from its definition, for finite differences and grid searches.
inline double mse_by_definition(const Scenario& s, const std::vector<double>& g, double n_sig) {
    double a = 0.0;
    double d = s.N0 + n_sig;
    for (std::size_t k = 0; k < s.K; ++k) {
        a += std::sqrt(s.eta[k] * g[k]);
        d += s.eta[k] * g[k];
    }
    return static_cast<double>(s.K) - a * a / d;
}

/// Plain 200-step bisection for an increasing function.
template <typename F>
double bisect_increasing(F f, double target, double lo, double hi) {
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        (f(mid) < target ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

}  // namespace qicc::testing
