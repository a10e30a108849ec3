#include "qicc/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "qicc/channel_oracle.hpp"
#include "qicc/entropy.hpp"
#include "qicc/estimator.hpp"

namespace qicc::cli {

namespace {

struct Options {
    std::string config_path;
    std::string r_sum;
    std::optional<std::size_t> grid;
    std::string out_path;
    std::optional<std::size_t> samples;
    std::optional<std::uint64_t> seed;
    bool warm_start = false;
    bool monotone_guard = false;
    double h_offset = 0.0;
    std::string reference = "full";
};

Config load(const Options& opt) {
    Config cfg = opt.config_path.empty() ? parse_config(default_config_text(), "<default>")
                                         : load_config(opt.config_path);
    if (opt.monotone_guard) {
        cfg.solver.monotone_guard = true;
    }
    if (!opt.r_sum.empty()) {
        cfg.solver.r_sum = resolve_r_sum(opt.r_sum, cfg.scenario);
    }
    return cfg;
}

std::string join(const std::vector<double>& xs) {
    std::string s = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ", ";
        s += format_number(xs[i]);
    }
    return s + "]";
}

// Writes to --out when given, otherwise to `out`.
bool emit(const Options& opt, const std::string& text, std::ostream& out, std::ostream& err) {
    if (opt.out_path.empty()) {
        out << text;
        return true;
    }
    std::ofstream file(opt.out_path, std::ios::binary);
    file << text;
    if (!file) {
        err << "error: cannot write " << opt.out_path << "\n";
        return false;
    }
    return true;
}

int cmd_solve(const Options& opt, std::ostream& out, std::ostream& err) {
    const Config cfg = load(opt);
    const Solution sol = ao_solve(cfg.scenario, cfg.solver);
    std::ostringstream os;
    os << "status: " << to_string(sol.trace.terminated_by) << "\n"
       << "iterations: " << sol.iterations() << "\n"
       << "r_sum_bits: " << format_number(cfg.solver.r_sum) << "\n"
       << "r_max_bits: " << format_number(sol.r_max) << "\n"
       << "mse: " << format_number(sol.mse) << "\n"
       << "mse_min: " << format_number(mse_min(cfg.scenario)) << "\n"
       << "mse_max: " << format_number(mse_max(cfg.scenario)) << "\n"
       << "gamma_max: " << format_number(sol.gamma_max.root) << "\n"
       << "h: " << format_number(sol.alloc.h.real()) << "\n"
       << "n_sig: " << format_number(sol.alloc.n_sig) << "\n"
       << "g: " << join(sol.alloc.g) << "\n"
       << "comm_powers: " << join(sol.comm_powers) << "\n";
    out << os.str();
    if (!opt.out_path.empty()) {
        nlohmann::json j = {{"status", to_string(sol.trace.terminated_by)},
                            {"iterations", sol.iterations()},
                            {"r_sum_bits", cfg.solver.r_sum},
                            {"r_max_bits", sol.r_max},
                            {"mse", sol.mse},
                            {"h", sol.alloc.h.real()},
                            {"n_sig", sol.alloc.n_sig},
                            {"g", sol.alloc.g},
                            {"comm_powers", sol.comm_powers}};
        if (!emit(opt, j.dump(2) + "\n", out, err)) return kConfigError;
    }
    return kSuccess;
}

int cmd_sweep(const Options& opt, std::ostream& out, std::ostream& err) {
    const Config cfg = load(opt);
    const std::size_t grid = opt.grid.value_or(cfg.sweep.grid);
    if (grid < 2 && cfg.sweep.r_sum.empty()) {
        err << "error: --grid must be at least 2\n";
        return kConfigError;
    }
    const auto points = run_sweep(cfg, grid, opt.warm_start || cfg.sweep.warm_start, threads_from_env());
    return emit(opt, sweep_csv(points), out, err) ? kSuccess : kConfigError;
}

int cmd_converge(const Options& opt, std::ostream& out, std::ostream& err) {
    const Config cfg = load(opt);
    const Solution sol = ao_solve(cfg.scenario, cfg.solver);
    if (!emit(opt, trace_csv(sol.trace), out, err)) return kConfigError;
    err << "terminated: " << to_string(sol.trace.terminated_by) << " after " << sol.iterations()
        << " iterations\n";
    return kSuccess;
}

int cmd_validate(const Options& opt, std::ostream& out, std::ostream& err) {
    const Config cfg = load(opt);
    if (opt.reference != "full" && opt.reference != "reduced") {
        err << "error: --reference must be 'full' or 'reduced'\n";
        return kConfigError;
    }
    const Solution sol = ao_solve(cfg.scenario, cfg.solver);
    Allocation alloc = sol.alloc;
    alloc.h += opt.h_offset;
    SymbolModel model{cfg.oracle.distribution, opt.seed.value_or(cfg.oracle.seed)};
    const std::size_t n = opt.samples.value_or(cfg.oracle.n_samples);
    if (n < 1) {
        err << "error: --samples must be at least 1\n";
        return kConfigError;
    }
    const McEstimate est = simulate_mse(cfg.scenario, alloc, sol.comm_powers, model, n, threads_from_env());
    const double full = full_mse(cfg.scenario, alloc);
    const double reduced = reduced_mse(cfg.scenario, alloc.g, alloc.n_sig);
    const double analytic = opt.reference == "full" ? full : reduced;
    const double deviation = std::abs(est.mse_hat - analytic);
    const bool pass = deviation <= 4.0 * est.std_err;
    out << "r_sum_bits: " << format_number(cfg.solver.r_sum) << "\n"
        << "h: " << format_number(alloc.h.real()) << "\n"
        << "analytic_full_mse: " << format_number(full) << "\n"
        << "analytic_reduced_mse: " << format_number(reduced) << "\n"
        << "empirical_mse: " << format_number(est.mse_hat) << "\n"
        << "std_err: " << format_number(est.std_err) << "\n"
        << "samples: " << est.n_samples << "\n"
        << "reference: " << opt.reference << "\n"
        << "deviation_sigmas: " << format_number(est.std_err > 0 ? deviation / est.std_err : 0.0) << "\n"
        << "result: " << (pass ? "PASS" : "FAIL") << "\n";
    return pass ? kSuccess : kValidationFailed;
}

}  // namespace

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double resolve_r_sum(const std::string& text, const Scenario& scenario) {
    if (text == "half-max") return 0.5 * max_sum_rate(scenario);
    if (text == "max") return max_sum_rate(scenario);
    std::size_t used = 0;
    double value = 0.0;
    try {
        value = std::stod(text, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != text.size() || !std::isfinite(value) || value < 0.0) {
        throw ConfigError("--r-sum: expected a non-negative number, 'half-max' or 'max', got '" + text + "'");
    }
    return value;
}

unsigned threads_from_env() {
    const char* env = std::getenv("QICC_THREADS");
    unsigned n = 0;
    if (env != nullptr) {
        n = static_cast<unsigned>(std::strtoul(env, nullptr, 10));
    }
    return n == 0 ? std::max(1U, std::thread::hardware_concurrency()) : n;
}

std::vector<TradeoffPoint> run_sweep(const Config& config, std::size_t grid, bool warm_start, unsigned threads) {
    const double r_max = max_sum_rate(config.scenario);
    std::vector<double> levels = config.sweep.r_sum;
    if (levels.empty()) {
        levels.resize(grid);
        for (std::size_t i = 0; i < grid; ++i) {
            levels[i] = i + 1 == grid ? r_max : r_max * static_cast<double>(i) / static_cast<double>(grid - 1);
        }
    }

    std::vector<TradeoffPoint> points(levels.size());
    std::optional<std::vector<double>> previous_g;
    const auto solve_point = [&](std::size_t i) {
        TradeoffPoint& pt = points[i];
        pt.r_sum = levels[i];
        SolverParams params = config.solver;
        params.r_sum = levels[i];
        if (warm_start && previous_g) {
            params.g_init = InitPolicy::explicit_powers(*previous_g);
        }
        try {
            const Solution sol = ao_solve(config.scenario, params);
            pt.mse = sol.mse;
            pt.iterations = sol.iterations();
            pt.status = to_string(sol.trace.terminated_by);
            if (warm_start) previous_g = sol.alloc.g;
        } catch (const InfeasibleError&) {
            pt.mse = std::numeric_limits<double>::quiet_NaN();
            pt.status = to_string(Termination::Infeasible);
        } catch (const std::exception&) {
            pt.mse = std::numeric_limits<double>::quiet_NaN();
            pt.status = "error";
        }
    };

    const unsigned workers = warm_start ? 1U : std::min<unsigned>(std::max(1U, threads),
                                                                   static_cast<unsigned>(levels.size()));
    if (workers <= 1) {
        for (std::size_t i = 0; i < levels.size(); ++i) solve_point(i);
    } else {
        std::atomic<std::size_t> cursor{0};
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i = cursor++; i < levels.size(); i = cursor++) solve_point(i);
            });
        }
    }
    return points;
}

std::string sweep_csv(const std::vector<TradeoffPoint>& points) {
    std::string csv = "r_sum_bits,mse,iterations,status\n";
    for (const auto& p : points) {
        csv += format_number(p.r_sum) + ',' + format_number(p.mse) + ',' + std::to_string(p.iterations) + ',' +
               p.status + '\n';
    }
    return csv;
}

std::string trace_csv(const ConvergenceTrace& trace) {
    std::string csv = "iter,mse,n_sig,aggregate_oac_power\n";
    for (const auto& r : trace.iterations) {
        csv += std::to_string(r.iter) + ',' + format_number(r.mse) + ',' + format_number(r.n_sig) + ',' +
               format_number(r.aggregate) + '\n';
    }
    return csv;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Power allocation for over-the-air computation sharing a bosonic multiple-access channel", "qicc"};
    app.require_subcommand(1);
    Options opt;

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "JSON configuration (built-in defaults if omitted)");
        sub->add_option("--out", opt.out_path, "Write output to this path instead of stdout");
        sub->add_flag("--monotone-guard", opt.monotone_guard, "Reject-and-halve steps that raise the MSE");
    };
    auto* solve = app.add_subcommand("solve", "Solve at one requested sum-rate");
    add_common(solve);
    solve->add_option("--r-sum", opt.r_sum, "Requested sum-rate in bits, or half-max / max");

    auto* sweep = app.add_subcommand("sweep", "MSE versus sum-rate trade-off over [0, R_max]");
    add_common(sweep);
    sweep->add_option("--grid", opt.grid, "Number of uniformly spaced r_sum values, endpoints included");
    sweep->add_flag("--warm-start", opt.warm_start, "Start each point from the previous solution");

    auto* converge = app.add_subcommand("converge", "Per-iteration trace at one sum-rate");
    add_common(converge);
    converge->add_option("--r-sum", opt.r_sum, "Requested sum-rate in bits, or half-max / max");

    auto* validate = app.add_subcommand("validate", "Check the analytic MSE against a Monte-Carlo channel");
    add_common(validate);
    validate->add_option("--r-sum", opt.r_sum, "Requested sum-rate in bits, or half-max / max");
    validate->add_option("--samples", opt.samples, "Monte-Carlo sample count");
    validate->add_option("--seed", opt.seed, "Random seed");
    validate->add_option("--h-offset", opt.h_offset, "Offset added to the receive coefficient before simulating");
    validate->add_option("--reference", opt.reference, "Analytic MSE to compare against: full or reduced");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kSuccess;
    } catch (const CLI::ParseError& ex) {
        err << "error: " << ex.what() << "\n" << app.help();
        return kConfigError;
    }

    try {
        if (solve->parsed()) return cmd_solve(opt, out, err);
        if (sweep->parsed()) return cmd_sweep(opt, out, err);
        if (converge->parsed()) return cmd_converge(opt, out, err);
        if (validate->parsed()) return cmd_validate(opt, out, err);
    } catch (const ConfigError& ex) {
        err << "config error: " << ex.what() << "\n";
        return kConfigError;
    } catch (const InfeasibleError& ex) {
        err << "infeasible: " << ex.what() << "\n";
        return kInfeasible;
    } catch (const std::invalid_argument& ex) {
        err << "error: " << ex.what() << "\n";
        return kConfigError;
    }
    return kConfigError;
}

}  // namespace qicc::cli
