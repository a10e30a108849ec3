#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "qicc/config.hpp"
#include "qicc/solver.hpp"

namespace qicc::cli {

enum ExitCode : int {
    kSuccess = 0,
    kConfigError = 1,
    kInfeasible = 2,
    kValidationFailed = 3,
};

struct TradeoffPoint {
    double r_sum = 0.0;
    double mse = 0.0;
    int iterations = 0;
    std::string status;
};

/// Solves at `grid` r_sum values spread uniformly over [0, R_max], both ends
/// included, or at `config.sweep.r_sum` when that list is non-empty. Points
/// are independent unless warm_start is set, and may run on `threads`
/// workers; the result is in grid order either way.
std::vector<TradeoffPoint> run_sweep(const Config& config, std::size_t grid, bool warm_start, unsigned threads);

/// Sweep as CSV: `r_sum_bits,mse,iterations,status`.
std::string sweep_csv(const std::vector<TradeoffPoint>& points);

/// Trace as CSV: `iter,mse,n_sig,aggregate_oac_power`.
std::string trace_csv(const ConvergenceTrace& trace);

/// `%.12g` formatting used by every emitted number.
std::string format_number(double x);

/// Parses `FLOAT`, `half-max` or `max` against the scenario's R_max.
double resolve_r_sum(const std::string& text, const Scenario& scenario);

/// Worker count from QICC_THREADS (unset or 0 means hardware concurrency).
unsigned threads_from_env();

/// Entry point shared by the `qicc` executable and the tests. `args[0]` is
/// the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace qicc::cli
