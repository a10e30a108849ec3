#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace qicc {

/// Static problem instance. Device order in `eta` is the K OAC devices
/// followed by the M communication devices.
struct Scenario {
    std::size_t K = 1;
    std::size_t M = 0;
    std::vector<double> eta;
    double N0 = 1.0;
    double Pc = 1.0;
    double Pt = 1.0;

    /// Throws std::invalid_argument describing the first violated invariant.
    void validate() const;

    std::span<const double> oac_eta() const noexcept { return {eta.data(), K}; }
    std::span<const double> comm_eta() const noexcept { return {eta.data() + K, M}; }

    /// N_sig^max = sum_m eta_{K+m} P_t.
    double max_comm_power() const noexcept;
    /// Aggregate OAC power when every OAC device transmits at P_c.
    double max_oac_power() const noexcept;

    /// Transmissivities from the share rule: `oac_share / K` for each OAC
    /// device and `(1 - oac_share) / M` for each communication device.
    static Scenario from_share_rule(std::size_t K, std::size_t M, double oac_share, double N0,
                                    double Pc, double Pt);

    friend bool operator==(const Scenario&, const Scenario&) = default;
};

/// Decision variables. `h` is complex to mirror the channel model; the
/// LMMSE solution for real non-negative gains is real.
struct Allocation {
    std::vector<double> g;
    double n_sig = 0.0;
    std::complex<double> h{0.0, 0.0};
};

/// Sum-of-transmissivity-weighted OAC power, sum_k eta_k g_k.
double aggregate_oac_power(const Scenario& scenario, std::span<const double> g);

/// True when 0 <= g_k <= P_c for all k and g has K entries, with `slack`
/// absolute tolerance on each bound.
bool within_box(const Scenario& scenario, std::span<const double> g, double slack = 0.0);

}  // namespace qicc
