#pragma once

#include <span>
#include <vector>

#include "qicc/estimator.hpp"
#include "qicc/scenario.hpp"

namespace qicc {

struct PgParams {
    double mu = 1e-3;
    double epsilon_floor = kGradientFloor;
};

/// Gradient step on reduced_mse (n_sig fixed) followed by a clip of each
/// component to [0, P_c].
std::vector<double> pg_step(const Scenario& scenario, std::span<const double> g, double n_sig,
                            const PgParams& params);

/// Projection onto {g : sum_k eta_k g_k <= gamma_max} within the box.
///
/// A point already in the half-space is returned unchanged. Otherwise the
/// closed-form half-space projection g_bar - eta * delta with
///   delta = (sum_j eta_j g_bar_j - gamma_max) / sum_j eta_j^2
/// is used when it stays non-negative. When it does not, the result is the
/// exact Euclidean projection onto box and half-space together,
/// g_k = clamp(g_bar_k - lambda eta_k, 0, P_c), which coincides with the
/// closed form whenever no lower bound binds.
std::vector<double> project_halfspace(const Scenario& scenario, std::span<const double> g_bar,
                                      double gamma_max);

/// The closed-form half-space projection alone, without any box handling.
std::vector<double> halfspace_closed_form(const Scenario& scenario, std::span<const double> g_bar,
                                          double gamma_max);

}  // namespace qicc
