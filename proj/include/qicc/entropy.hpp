#pragma once

#include <cmath>
#include <numbers>

namespace qicc {

struct Scenario;

/// Mean photon number of a single bosonic mode. Construction rejects
/// negative and non-finite values with std::domain_error.
class PhotonNumber {
public:
    explicit PhotonNumber(double value);
    double value() const noexcept { return value_; }

private:
    double value_;
};

namespace detail {

// Below this the two-term form loses 1/x to overflow for subnormal x.
inline constexpr double kSmallPhotonNumber = 1e-12;

/// Thermal-state entropy in bits, no argument checking. Written as
/// log1p(x) + x*log1p(1/x) so neither term cancels for large x.
inline double thermal_entropy(double x) noexcept {
    if (x <= 0.0) {
        return 0.0;
    }
    if (x < kSmallPhotonNumber) {
        // g(x) = x*(log2(e) - log2(x)) + x^2/(2 ln 2) + O(x^3)
        return x * (std::numbers::log2e - std::log(x) * std::numbers::log2e) +
               0.5 * x * x * std::numbers::log2e;
    }
    return (std::log1p(x) + x * std::log1p(1.0 / x)) * std::numbers::log2e;
}

inline double rate_gap(double n_sig, double n_eff) noexcept {
    return thermal_entropy(n_sig + n_eff) - thermal_entropy(n_eff);
}

}  // namespace detail

/// g(x) = (x+1)log2(x+1) - x log2(x): von Neumann entropy of a thermal
/// state with mean photon number x, bits per channel use. g(0) = 0.
double von_neumann_g(PhotonNumber x);

/// Capacity of the phase-insensitive bosonic channel with signal power
/// n_sig over thermal background n_eff: g(n_sig + n_eff) - g(n_eff).
double rate_gap(PhotonNumber n_sig, PhotonNumber n_eff);

/// Largest sum-rate the communication devices can reach: all of them at
/// P_t and no OAC interference.
double max_sum_rate(const Scenario& scenario);

}  // namespace qicc
