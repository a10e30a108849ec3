#include <doctest.h>

#include <cmath>
#include <random>

#include "qicc/entropy.hpp"
#include "qicc/rootfind.hpp"
#include "support.hpp"

using namespace qicc;

namespace {

Scenario pair_devices() { return Scenario{2, 2, {0.3, 0.3, 0.2, 0.2}, 2.0, 10.0, 10.0}; }
constexpr double kTol = 1e-6;

int step_bound(double width, double tol) { return static_cast<int>(std::ceil(std::log2(width / tol))); }

}  // namespace

TEST_CASE("bisect_monotone requires a bracket") {
    const auto f = [](double x) { return x * x * x; };
    CHECK_THROWS_AS(bisect_monotone(f, 100.0, BisectionSpec{0.0, 1.0, 1e-9, 100}), std::invalid_argument);
    CHECK_THROWS_AS(bisect_monotone(f, 0.5, BisectionSpec{1.0, 0.0, 1e-9, 100}), std::invalid_argument);
    const auto r = bisect_monotone(f, 0.125, BisectionSpec{0.0, 1.0, 1e-12, 100});
    CHECK(r.root == doctest::Approx(0.5).epsilon(1e-10));
    // Decreasing functions work too.
    const auto d = bisect_monotone([](double x) { return -x; }, -0.25, BisectionSpec{0.0, 1.0, 1e-12, 100});
    CHECK(d.root == doctest::Approx(0.25).epsilon(1e-10));
}

TEST_CASE("solve_nsig examples") {
    const auto s = pair_devices();
    const auto zero = solve_nsig(s, 2.0, 0.0, kTol);
    REQUIRE(zero);
    CHECK(zero->root == 0.0);

    const double target = static_cast<double>(testing::naive_rate_gap(1.0L, 2.0L));
    const auto one = solve_nsig(s, 2.0, target, kTol);
    REQUIRE(one);
    CHECK(std::abs(one->residual) <= kTol);
    // Residual band translated through the slope g'(3) = log2(4/3).
    CHECK(std::abs(one->root - 1.0) <= kTol / std::log2(4.0 / 3.0));
    const auto tight = solve_nsig(s, 2.0, target, 1e-9);
    REQUIRE(tight);
    CHECK(std::abs(tight->root - 1.0) <= 1e-6);

    CHECK_FALSE(solve_nsig(s, 2.0, 10.0, kTol));
}

TEST_CASE("solve_nsig accepts the maximum rate exactly") {
    const auto s = pair_devices();
    const auto r = solve_nsig(s, s.N0, max_sum_rate(s), kTol);
    REQUIRE(r);
    CHECK(r->root == doctest::Approx(s.max_comm_power()));
}

TEST_CASE("solve_gamma_max examples") {
    const auto s = pair_devices();
    const double r_max = max_sum_rate(s);
    CHECK(solve_gamma_max(s, r_max, kTol).root == doctest::Approx(0.0).epsilon(kTol));

    const auto slack = solve_gamma_max(s, 0.0, kTol);
    CHECK(slack.capped);
    CHECK(slack.root == doctest::Approx(s.max_oac_power()));

    const double half = 0.5 * r_max;
    const auto mid = solve_gamma_max(s, half, kTol);
    CHECK_FALSE(mid.capped);
    CHECK(std::abs(rate_gap(PhotonNumber(4.0), PhotonNumber(s.N0 + mid.root)) - half) <= kTol);

    CHECK_THROWS_AS(solve_gamma_max(s, r_max + 1e-3, kTol), std::invalid_argument);
}

TEST_CASE("root residuals, step bounds and brackets on random problems") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int nsig_solved = 0;
    for (int trial = 0; trial < 300; ++trial) {
        Scenario s = testing::random_scenario(rng);
        if (s.M == 0) continue;
        s.N0 = 2.0;
        const double r_max = max_sum_rate(s);
        const double r_sum = unit(rng) * r_max;

        const auto gamma = solve_gamma_max(s, r_sum, kTol);
        const double at_gamma = detail::rate_gap(s.max_comm_power(), s.N0 + gamma.root);
        if (gamma.capped) {
            CHECK(at_gamma >= r_sum);
        } else {
            CHECK(std::abs(at_gamma - r_sum) <= residual_band(kTol, r_sum));
            CHECK(gamma.steps <= step_bound(s.max_oac_power(), kTol));
        }

        const double n_eff = s.N0 + unit(rng) * gamma.root;
        // Brackets: the rate at zero power is below the target, at full power above.
        CHECK(detail::rate_gap(0.0, n_eff) <= r_sum);
        CHECK(detail::rate_gap(s.max_comm_power(), n_eff) >= r_sum - residual_band(kTol, r_sum));
        const auto nsig = solve_nsig(s, n_eff, r_sum, kTol);
        REQUIRE(nsig);
        CHECK(nsig->root >= 0.0);
        CHECK(nsig->root <= s.max_comm_power());
        CHECK(std::abs(detail::rate_gap(nsig->root, n_eff) - r_sum) <= residual_band(kTol, r_sum));
        CHECK(nsig->steps <= step_bound(s.max_comm_power(), kTol));
        ++nsig_solved;
    }
    CHECK(nsig_solved > 200);
}
