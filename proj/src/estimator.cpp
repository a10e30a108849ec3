#include "qicc/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

namespace qicc {

DerivedQuantities derived_quantities(const Scenario& scenario, std::span<const double> g, double n_sig) {
    DerivedQuantities q;
    const auto eta = scenario.oac_eta();
    double oac_power = 0.0;
    for (std::size_t k = 0; k < eta.size(); ++k) {
        q.A += std::sqrt(eta[k] * g[k]);
        oac_power += eta[k] * g[k];
    }
    q.n_eff = scenario.N0 + oac_power;
    q.D = q.n_eff + n_sig;
    return q;
}

double lmmse_coefficient(const Scenario& scenario, std::span<const double> g, double n_sig) {
    const auto q = derived_quantities(scenario, g, n_sig);
    return q.A / q.D;
}

double full_mse(const Scenario& scenario, const Allocation& alloc) {
    const auto eta = scenario.oac_eta();
    double mse = 0.0;
    for (std::size_t k = 0; k < eta.size(); ++k) {
        mse += std::norm(alloc.h * std::sqrt(eta[k] * alloc.g[k]) - 1.0);
    }
    mse += std::norm(alloc.h) * (alloc.n_sig + scenario.N0);
    return mse;
}

double reduced_mse(const Scenario& scenario, std::span<const double> g, double n_sig) {
    const auto q = derived_quantities(scenario, g, n_sig);
    return static_cast<double>(scenario.K) - q.A * q.A / q.D;
}

double mse_min(const Scenario& scenario) {
    double amplitude = 0.0;
    double power = 0.0;
    for (double e : scenario.oac_eta()) {
        amplitude += std::sqrt(e * scenario.Pc);
        power += e * scenario.Pc;
    }
    return static_cast<double>(scenario.K) - amplitude * amplitude / (power + scenario.N0);
}

double mse_max(const Scenario& scenario) { return static_cast<double>(scenario.K); }

std::vector<double> mse_gradient(const Scenario& scenario, std::span<const double> g, double n_sig,
                                 double floor) {
    std::vector<double> lifted(g.begin(), g.end());
    for (double& gk : lifted) {
        gk = std::max(gk, floor);
    }
    const auto q = derived_quantities(scenario, lifted, n_sig);
    const auto eta = scenario.oac_eta();
    std::vector<double> grad(lifted.size());
    for (std::size_t k = 0; k < lifted.size(); ++k) {
        grad[k] = -(q.D * q.A * std::sqrt(eta[k] / lifted[k]) - q.A * q.A * eta[k]) / (q.D * q.D);
    }
    return grad;
}

}  // namespace qicc
