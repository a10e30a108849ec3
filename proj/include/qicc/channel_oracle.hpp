#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

#include "qicc/scenario.hpp"

namespace qicc {

enum class SymbolDistribution {
    CircularGaussian,      // CN(0, 1)
    UniformPhaseQpskLike,  // (+-1 +- j) / sqrt(2), equiprobable
};

SymbolDistribution parse_distribution(std::string_view name);
const char* to_string(SymbolDistribution d) noexcept;

struct SymbolModel {
    SymbolDistribution distribution = SymbolDistribution::CircularGaussian;
    std::uint64_t seed = 0;
};

struct McEstimate {
    double mse_hat = 0.0;
    double std_err = 0.0;
    std::size_t n_samples = 0;
};

/// Counter-based stream: draw j of key k is splitmix64's finalizer applied to
/// k + (j + 1) * golden, so any sample's draws can be produced in isolation.
class CounterRng {
public:
    CounterRng(std::uint64_t key, std::uint64_t counter) noexcept : key_(key), counter_(counter) {}

    std::uint64_t next_u64() noexcept;
    /// Uniform on (0, 1].
    double next_unit() noexcept;
    std::complex<double> complex_gaussian(double variance) noexcept;
    std::complex<double> symbol(SymbolDistribution d) noexcept;

    static std::uint64_t mix(std::uint64_t z) noexcept;

private:
    std::uint64_t key_;
    std::uint64_t counter_;
};

/// Monte-Carlo estimate of E|S - h y|^2 on the equivalent classical channel
///   y = sum_k sqrt(eta_k g_k) s_k + sum_m sqrt(eta_{K+m} P_m) d_m + z,
/// with S = sum_k s_k and z ~ CN(0, N_0). Samples are processed in fixed
/// batches; results do not depend on `threads` (0 picks hardware_concurrency).
McEstimate simulate_mse(const Scenario& scenario, const Allocation& alloc, std::span<const double> comm_powers,
                        const SymbolModel& model, std::size_t n_samples, unsigned threads = 0);

}  // namespace qicc
