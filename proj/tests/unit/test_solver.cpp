#include <doctest.h>

#include <cmath>
#include <random>

#include "qicc/entropy.hpp"
#include "qicc/estimator.hpp"
#include "qicc/solver.hpp"
#include "support.hpp"

using namespace qicc;
using testing::standard_scenario;
using testing::standard_suite;

namespace {

SolverParams at_rate(double r_sum) {
    SolverParams p;
    p.r_sum = r_sum;
    return p;
}

// Symmetric scenarios reduce to one variable, the aggregate OAC power G.
// For each G: N_sig from the rate equation by plain bisection, then the MSE
// from its definition. Returns the smallest MSE on a uniform grid.
double grid_min_over_aggregate(const Scenario& s, double r_sum, int n) {
    const double n_max = s.max_comm_power();
    const double eta_k = s.eta[0];
    double best = 1e300;
    for (int i = 0; i <= n; ++i) {
        const double G = s.max_oac_power() * i / n;
        const long double n_eff = s.N0 + G;
        if (testing::naive_rate_gap(n_max, n_eff) < r_sum) continue;
        const double n_sig = testing::bisect_increasing(
            [&](double x) { return static_cast<double>(testing::naive_rate_gap(x, n_eff)); }, r_sum, 0.0, n_max);
        const std::vector<double> g(s.K, G / (eta_k * static_cast<double>(s.K)));
        best = std::min(best, testing::mse_by_definition(s, g, n_sig));
    }
    return best;
}

void check_trace_feasible(const Scenario& s, const Solution& sol) {
    const auto& recs = sol.trace.iterations;
    REQUIRE_FALSE(recs.empty());
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(recs[i].iter == static_cast<int>(i));
        CHECK(within_box(s, recs[i].g));
        CHECK(recs[i].aggregate <= sol.gamma_max.root + 1e-9);
        CHECK(recs[i].n_sig >= 0.0);
        CHECK(recs[i].n_sig <= s.max_comm_power());
        CHECK(std::isfinite(recs[i].mse));
        CHECK(recs[i].mse >= 0.0);
        CHECK(recs[i].mse <= static_cast<double>(s.K));
    }
}

}  // namespace

TEST_CASE("zero rate requirement reaches the minimum MSE") {
    for (const auto& s : standard_suite()) {
        const Solution sol = ao_solve(s, at_rate(0.0));
        CHECK(sol.alloc.n_sig == 0.0);
        for (double gk : sol.alloc.g) CHECK(gk == doctest::Approx(s.Pc));
        CHECK(std::abs(sol.mse - mse_min(s)) <= 1e-3);
        CHECK(sol.trace.terminated_by == Termination::ToleranceMet);
    }
}

TEST_CASE("maximum rate requirement silences the OAC devices") {
    for (const auto& s : standard_suite()) {
        const Solution sol = ao_solve(s, at_rate(max_sum_rate(s)));
        CHECK(sol.gamma_max.root == doctest::Approx(0.0).epsilon(1e-6));
        CHECK(std::abs(sol.mse - static_cast<double>(s.K)) <= 1e-6);
        CHECK(sol.alloc.n_sig == doctest::Approx(s.max_comm_power()).epsilon(1e-9));
    }
}

TEST_CASE("half the maximum rate on the (2, 2) scenario") {
    const Scenario s{2, 2, {0.3, 0.3, 0.2, 0.2}, 2.0, 10.0, 10.0};
    const double r_sum = 0.5 * max_sum_rate(s);
    const Solution sol = ao_solve(s, at_rate(r_sum));
    CHECK(sol.trace.terminated_by == Termination::ToleranceMet);
    CHECK(sol.iterations() < 1000);
    CHECK(sol.mse > mse_min(s));
    CHECK(sol.mse < 2.0);
    const double grid = grid_min_over_aggregate(s, r_sum, 20000);
    CHECK(sol.mse <= grid + 1e-4);
    CHECK(std::abs(sol.mse - grid) <= 1e-3);
    check_trace_feasible(s, sol);
}

TEST_CASE("solver rejects unreachable rates and bad parameters") {
    const Scenario s = standard_scenario(2, 2, 10.0);
    const double r_max = max_sum_rate(s);
    try {
        ao_solve(s, at_rate(r_max + 0.1));
        FAIL("expected InfeasibleError");
    } catch (const InfeasibleError& e) {
        CHECK(e.r_max() == doctest::Approx(r_max));
    }
    SolverParams bad = at_rate(0.1);
    bad.n_max = 0;
    CHECK_THROWS_AS(ao_solve(s, bad), std::invalid_argument);
    bad = at_rate(0.1);
    bad.g_init = InitPolicy::explicit_powers({1.0, 11.0});
    CHECK_THROWS_AS(ao_solve(s, bad), std::invalid_argument);
}

TEST_CASE("split_comm_powers") {
    const Scenario s{2, 2, {0.3, 0.3, 0.2, 0.2}, 2.0, 10.0, 10.0};
    CHECK(split_comm_powers(s, 0.0) == std::vector<double>{0.0, 0.0});
    const auto p = split_comm_powers(s, 2.0);
    CHECK(p[0] == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(p[1] == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(std::abs(0.2 * p[0] + 0.2 * p[1] - 2.0) <= 1e-12);
    for (double pm : split_comm_powers(s, s.max_comm_power())) CHECK(pm == doctest::Approx(s.Pt));
    CHECK_THROWS_AS(split_comm_powers(s, 4.5), std::invalid_argument);
    CHECK(split_comm_powers(Scenario::from_share_rule(2, 0, 0.6, 2.0, 1.0, 1.0), 0.0).empty());
}

TEST_CASE("standard suite: termination, feasibility, monotone traces, block optimality") {
    for (const auto& s : standard_suite()) {
        const double r_max = max_sum_rate(s);
        for (double frac : {0.1, 0.25, 0.5, 0.75, 0.9}) {
            SolverParams params = at_rate(frac * r_max);
            const Solution sol = ao_solve(s, params);
            CHECK(sol.iterations() <= params.n_max);
            check_trace_feasible(s, sol);
            const auto& recs = sol.trace.iterations;
            for (std::size_t i = 1; i < recs.size(); ++i) CHECK(recs[i].mse <= recs[i - 1].mse + 1e-9);

            CHECK(std::abs(sol.mse - reduced_mse(s, sol.alloc.g, sol.alloc.n_sig)) <= 1e-12);
            CHECK(std::abs(full_mse(s, sol.alloc) - sol.mse) <= 1e-12);

            // Re-running the h and N_sig blocks at the returned point.
            Allocation again = sol.alloc;
            again.h = lmmse_coefficient(s, again.g, again.n_sig);
            CHECK(std::abs(full_mse(s, again) - sol.mse) < params.eps_ao);
            const double n_eff = s.N0 + aggregate_oac_power(s, again.g);
            const auto root = solve_nsig(s, n_eff, params.r_sum, params.eps_mse);
            REQUIRE(root);
            CHECK(std::abs(reduced_mse(s, again.g, root->root) - sol.mse) < params.eps_ao);

            CHECK(projected_gradient_norm(s, sol.alloc.g, sol.alloc.n_sig, params.mu, sol.gamma_max.root) <= 1e-3);
        }
    }
}

TEST_CASE("asymmetric scenarios converge to stationary feasible points") {
    std::mt19937_64 rng(29);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int interior = 0;
    for (int trial = 0; trial < 30; ++trial) {
        Scenario s = testing::random_scenario(rng);
        if (s.M == 0) continue;
        SolverParams params = at_rate(unit(rng) * max_sum_rate(s));
        // The default eps_ao only bounds the projected gradient by about
        // sqrt(eps_ao / mu); tighten it to observe stationarity.
        params.eps_ao = 1e-11;
        params.n_max = 200000;
        const Solution sol = ao_solve(s, params);
        check_trace_feasible(s, sol);
        const bool smooth = std::all_of(sol.alloc.g.begin(), sol.alloc.g.end(),
                                        [&](double gk) { return gk > 1e-3 * s.Pc; });
        if (smooth && sol.trace.terminated_by == Termination::ToleranceMet) {
            ++interior;
            CHECK(projected_gradient_norm(s, sol.alloc.g, sol.alloc.n_sig, params.mu, sol.gamma_max.root) <= 1e-3);
        }
    }
    CHECK(interior > 5);
}

TEST_CASE("monotone guard makes traces non-increasing") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        Scenario s = testing::random_scenario(rng);
        SolverParams params = at_rate(unit(rng) * max_sum_rate(s));
        params.mu = 1.0;  // deliberately large
        params.monotone_guard = true;
        params.g_init = InitPolicy::half_power();
        const Solution sol = ao_solve(s, params);
        const auto& recs = sol.trace.iterations;
        for (std::size_t i = 1; i < recs.size(); ++i) CHECK(recs[i].mse <= recs[i - 1].mse);
    }
}

TEST_CASE("initialisation policies all produce feasible starts") {
    const Scenario s = standard_scenario(4, 2, 10.0);
    const double r_sum = 0.5 * max_sum_rate(s);
    for (const auto& init : {InitPolicy::full_power(), InitPolicy::half_power(),
                             InitPolicy::explicit_powers({10.0, 0.0, 5.0, 1.0})}) {
        SolverParams params = at_rate(r_sum);
        params.g_init = init;
        const Solution sol = ao_solve(s, params);
        check_trace_feasible(s, sol);
        CHECK(sol.trace.iterations.front().aggregate <= sol.gamma_max.root + 1e-9);
    }
}
