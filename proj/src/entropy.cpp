#include "qicc/entropy.hpp"

#include <stdexcept>
#include <string>

#include "qicc/scenario.hpp"

namespace qicc {

PhotonNumber::PhotonNumber(double value) : value_(value) {
    if (!std::isfinite(value) || value < 0.0) {
        throw std::domain_error("photon number must be finite and non-negative, got " +
                                std::to_string(value));
    }
}

double von_neumann_g(PhotonNumber x) { return detail::thermal_entropy(x.value()); }

double rate_gap(PhotonNumber n_sig, PhotonNumber n_eff) {
    return detail::rate_gap(n_sig.value(), n_eff.value());
}

double max_sum_rate(const Scenario& scenario) {
    return detail::rate_gap(scenario.max_comm_power(), scenario.N0);
}

}  // namespace qicc
