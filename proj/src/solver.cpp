#include "qicc/solver.hpp"

#include <cmath>
#include <sstream>

#include "qicc/entropy.hpp"
#include "qicc/estimator.hpp"
#include "qicc/projgrad.hpp"

namespace qicc {

namespace {

std::string infeasible_message(double r_sum, double r_max) {
    std::ostringstream os;
    os.precision(12);
    os << "requested sum-rate " << r_sum << " bits exceeds the maximum supported sum-rate R_max = "
       << r_max << " bits";
    return os.str();
}

// One evaluation of the reduced objective at g: N_sig from the rate
// equation at the current interference, then K - A^2 / D.
struct Evaluation {
    double n_sig = 0.0;
    double mse = 0.0;
    double residual = 0.0;
    int steps = 0;
    bool clamped = false;
};

Evaluation evaluate(const Scenario& scenario, const SolverParams& params, std::span<const double> g) {
    Evaluation ev;
    const double n_eff = scenario.N0 + aggregate_oac_power(scenario, g);
    if (const auto root = solve_nsig(scenario, n_eff, params.r_sum, params.eps_mse, params.max_bisection_steps)) {
        ev.n_sig = root->root;
        ev.residual = root->residual;
        ev.steps = root->steps;
    } else {
        ev.n_sig = scenario.max_comm_power();
        ev.residual = detail::rate_gap(ev.n_sig, n_eff) - params.r_sum;
        ev.clamped = true;
    }
    ev.mse = reduced_mse(scenario, g, ev.n_sig);
    return ev;
}

TraceRecord make_record(const Scenario& scenario, int iter, std::vector<double> g, const Evaluation& ev) {
    TraceRecord rec;
    rec.iter = iter;
    rec.mse = ev.mse;
    rec.n_sig = ev.n_sig;
    rec.h = lmmse_coefficient(scenario, g, ev.n_sig);
    rec.aggregate = aggregate_oac_power(scenario, g);
    rec.nsig_residual = ev.residual;
    rec.nsig_steps = ev.steps;
    rec.nsig_clamped = ev.clamped;
    rec.g = std::move(g);
    return rec;
}

std::vector<double> initial_powers(const Scenario& scenario, const InitPolicy& init) {
    switch (init.kind) {
        case InitPolicy::Kind::FullPower:
            return std::vector<double>(scenario.K, scenario.Pc);
        case InitPolicy::Kind::HalfPower:
            return std::vector<double>(scenario.K, 0.5 * scenario.Pc);
        case InitPolicy::Kind::Explicit:
            if (!within_box(scenario, init.g)) {
                throw std::invalid_argument("explicit initial powers must have K entries in [0, Pc]");
            }
            return init.g;
    }
    return {};
}

}  // namespace

const char* to_string(Termination t) noexcept {
    switch (t) {
        case Termination::ToleranceMet: return "tolerance_met";
        case Termination::MaxIterations: return "max_iterations";
        case Termination::Infeasible: return "infeasible";
    }
    return "unknown";
}

InfeasibleError::InfeasibleError(double r_sum, double r_max)
    : std::runtime_error(infeasible_message(r_sum, r_max)), r_sum_(r_sum), r_max_(r_max) {}

void SolverParams::validate() const {
    const auto positive = [](double x) { return std::isfinite(x) && x > 0.0; };
    if (!(std::isfinite(r_sum) && r_sum >= 0.0)) throw std::invalid_argument("r_sum must be non-negative");
    if (!positive(mu)) throw std::invalid_argument("mu must be positive");
    if (!positive(eps_ao)) throw std::invalid_argument("eps_ao must be positive");
    if (!positive(eps_mse)) throw std::invalid_argument("eps_mse must be positive");
    if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
    if (max_bisection_steps < 1) throw std::invalid_argument("max_bisection_steps must be at least 1");
}

Solution ao_solve(const Scenario& scenario, const SolverParams& params) {
    scenario.validate();
    params.validate();

    Solution sol;
    sol.r_max = max_sum_rate(scenario);
    if (params.r_sum > sol.r_max + residual_band(params.eps_mse, params.r_sum)) {
        throw InfeasibleError(params.r_sum, sol.r_max);
    }
    sol.gamma_max = solve_gamma_max(scenario, params.r_sum, params.eps_mse, params.max_bisection_steps);
    const double gamma_max = sol.gamma_max.root;

    std::vector<double> g = project_halfspace(scenario, initial_powers(scenario, params.g_init), gamma_max);
    Evaluation current = evaluate(scenario, params, g);
    auto& records = sol.trace.iterations;
    records.reserve(static_cast<std::size_t>(params.n_max) + 1);
    records.push_back(make_record(scenario, 0, g, current));

    sol.trace.terminated_by = Termination::MaxIterations;
    for (int n = 0; n < params.n_max; ++n) {
        PgParams pg{params.mu, kGradientFloor};
        std::vector<double> next = project_halfspace(scenario, pg_step(scenario, g, current.n_sig, pg), gamma_max);
        Evaluation candidate = evaluate(scenario, params, next);
        if (params.monotone_guard) {
            int halvings = 0;
            while (candidate.mse > current.mse && halvings < params.max_guard_halvings) {
                pg.mu *= 0.5;
                ++halvings;
                next = project_halfspace(scenario, pg_step(scenario, g, current.n_sig, pg), gamma_max);
                candidate = evaluate(scenario, params, next);
            }
            if (candidate.mse > current.mse) {
                next = g;
                candidate = current;
            }
        }
        const double change = std::abs(candidate.mse - current.mse);
        g = std::move(next);
        current = candidate;
        records.push_back(make_record(scenario, n + 1, g, current));
        if (change <= params.eps_ao) {
            sol.trace.terminated_by = Termination::ToleranceMet;
            break;
        }
    }

    sol.alloc.g = g;
    sol.alloc.n_sig = current.n_sig;
    sol.alloc.h = lmmse_coefficient(scenario, g, current.n_sig);
    sol.mse = current.mse;
    sol.comm_powers = split_comm_powers(scenario, current.n_sig);
    return sol;
}

std::vector<double> split_comm_powers(const Scenario& scenario, double n_sig) {
    const auto eta = scenario.comm_eta();
    const double budget = scenario.max_comm_power();
    if (n_sig < 0.0 || n_sig > budget * (1.0 + 1e-12)) {
        throw std::invalid_argument("aggregate communication power outside [0, sum eta_m Pt]");
    }
    if (eta.empty()) {
        return {};
    }
    double eta_total = 0.0;
    for (double e : eta) {
        eta_total += e;
    }
    const double p = std::min(n_sig / eta_total, scenario.Pt);
    return std::vector<double>(eta.size(), p);
}

double projected_gradient_norm(const Scenario& scenario, std::span<const double> g, double n_sig, double mu,
                               double gamma_max) {
    const auto moved = project_halfspace(scenario, pg_step(scenario, g, n_sig, PgParams{mu, kGradientFloor}),
                                         gamma_max);
    double sq = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        sq += (moved[k] - g[k]) * (moved[k] - g[k]);
    }
    return std::sqrt(sq) / mu;
}

}  // namespace qicc
