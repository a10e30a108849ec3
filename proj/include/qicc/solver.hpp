#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qicc/rootfind.hpp"
#include "qicc/scenario.hpp"

namespace qicc {

/// Starting point for the OAC powers. Every policy is projected onto the
/// aggregate constraint before the first iteration.
struct InitPolicy {
    enum class Kind { FullPower, HalfPower, Explicit };
    Kind kind = Kind::FullPower;
    std::vector<double> g;  // used by Kind::Explicit only

    static InitPolicy full_power() { return {}; }
    static InitPolicy half_power() { return {Kind::HalfPower, {}}; }
    static InitPolicy explicit_powers(std::vector<double> g) { return {Kind::Explicit, std::move(g)}; }

    friend bool operator==(const InitPolicy&, const InitPolicy&) = default;
};

struct SolverParams {
    double r_sum = 0.0;
    double mu = 1e-3;
    double eps_ao = 1e-6;
    double eps_mse = 1e-6;
    int n_max = 1000;
    InitPolicy g_init;
    /// Halve the step (up to `max_guard_halvings` times) whenever it would
    /// raise the MSE; keep the current point if no halving helps.
    bool monotone_guard = false;
    int max_guard_halvings = 40;
    int max_bisection_steps = 200;

    void validate() const;

    friend bool operator==(const SolverParams&, const SolverParams&) = default;
};

enum class Termination { ToleranceMet, MaxIterations, Infeasible };

const char* to_string(Termination t) noexcept;

struct TraceRecord {
    int iter = 0;
    double mse = 0.0;
    std::vector<double> g;
    double n_sig = 0.0;
    double h = 0.0;
    double aggregate = 0.0;  // sum_k eta_k g_k
    /// rate_gap(n_sig, n_eff) - r_sum for the N_sig root of this iterate.
    double nsig_residual = 0.0;
    int nsig_steps = 0;
    /// The rate was unreachable at this n_eff and n_sig was pinned at its maximum.
    bool nsig_clamped = false;
};

struct ConvergenceTrace {
    std::vector<TraceRecord> iterations;
    Termination terminated_by = Termination::MaxIterations;
};

struct Solution {
    Allocation alloc;
    double mse = 0.0;
    std::vector<double> comm_powers;
    ConvergenceTrace trace;
    RootResult gamma_max;
    double r_max = 0.0;

    /// Number of projected-gradient updates performed.
    int iterations() const noexcept {
        return trace.iterations.empty() ? 0 : trace.iterations.back().iter;
    }
};

/// Requested sum-rate above what the scenario can support.
class InfeasibleError : public std::runtime_error {
public:
    InfeasibleError(double r_sum, double r_max);
    double r_sum() const noexcept { return r_sum_; }
    double r_max() const noexcept { return r_max_; }

private:
    double r_sum_;
    double r_max_;
};

/// Alternating optimization over (h, N_sig, g). Each iteration refreshes
/// the LMMSE coefficient, solves the sum-rate equation for N_sig at the
/// current interference level, then takes one projected-gradient step on g.
/// Stops when consecutive MSE values differ by at most eps_ao or after
/// n_max steps. Throws InfeasibleError if r_sum > max_sum_rate.
Solution ao_solve(const Scenario& scenario, const SolverParams& params);

/// Uniform split P_m = n_sig / sum_j eta_{K+j}. Throws std::invalid_argument
/// when n_sig exceeds the communication power budget.
std::vector<double> split_comm_powers(const Scenario& scenario, double n_sig);

/// ||g - P(g - mu * grad)|| / mu, the projected-gradient displacement at g.
double projected_gradient_norm(const Scenario& scenario, std::span<const double> g, double n_sig,
                               double mu, double gamma_max);

}  // namespace qicc
