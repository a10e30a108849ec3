#include "qicc/scenario.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace qicc {

namespace {

void require(bool condition, const std::string& message) {
    if (!condition) {
        throw std::invalid_argument("invalid scenario: " + message);
    }
}

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

void Scenario::validate() const {
    require(K >= 1, "K must be at least 1");
    require(eta.size() == K + M, "eta has " + std::to_string(eta.size()) + " entries, expected K+M = " +
                                     std::to_string(K + M));
    for (std::size_t i = 0; i < eta.size(); ++i) {
        require(std::isfinite(eta[i]) && eta[i] > 0.0 && eta[i] <= 1.0,
                "eta[" + std::to_string(i) + "] must lie in (0, 1]");
    }
    const double total = std::accumulate(eta.begin(), eta.end(), 0.0);
    require(std::abs(total - 1.0) <= 1e-9, "transmissivities must sum to 1, got " + std::to_string(total));
    require(positive_finite(N0), "N0 must be positive");
    require(positive_finite(Pc), "Pc must be positive");
    require(positive_finite(Pt), "Pt must be positive");
}

double Scenario::max_comm_power() const noexcept {
    double total = 0.0;
    for (double e : comm_eta()) {
        total += e * Pt;
    }
    return total;
}

double Scenario::max_oac_power() const noexcept {
    double total = 0.0;
    for (double e : oac_eta()) {
        total += e * Pc;
    }
    return total;
}

Scenario Scenario::from_share_rule(std::size_t K, std::size_t M, double oac_share, double N0, double Pc,
                                   double Pt) {
    Scenario s;
    s.K = K;
    s.M = M;
    s.N0 = N0;
    s.Pc = Pc;
    s.Pt = Pt;
    // With no communication devices the whole unit of transmissivity goes to OAC.
    const double oac = M == 0 ? 1.0 : oac_share;
    s.eta.assign(K, K == 0 ? 0.0 : oac / static_cast<double>(K));
    s.eta.insert(s.eta.end(), M, M == 0 ? 0.0 : (1.0 - oac) / static_cast<double>(M));
    return s;
}

double aggregate_oac_power(const Scenario& scenario, std::span<const double> g) {
    double total = 0.0;
    const auto eta = scenario.oac_eta();
    for (std::size_t k = 0; k < g.size() && k < eta.size(); ++k) {
        total += eta[k] * g[k];
    }
    return total;
}

bool within_box(const Scenario& scenario, std::span<const double> g, double slack) {
    if (g.size() != scenario.K) {
        return false;
    }
    for (double gk : g) {
        if (!(gk >= -slack && gk <= scenario.Pc + slack)) {
            return false;
        }
    }
    return true;
}

}  // namespace qicc
