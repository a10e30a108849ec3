#pragma once

#include <complex>
#include <span>
#include <vector>

#include "qicc/scenario.hpp"

namespace qicc {

/// Lift applied to g_k before evaluating the 1/sqrt(g_k) gradient term.
inline constexpr double kGradientFloor = 1e-12;

/// Sufficient statistics of the reduced MSE.
///   A     = sum_k sqrt(eta_k g_k)           (cross-correlation E[S y*])
///   D     = sum_k eta_k g_k + N_sig + N_0   (received power E[|y|^2])
///   n_eff = N_0 + sum_k eta_k g_k           (noise seen by the MAC decoder)
struct DerivedQuantities {
    double A = 0.0;
    double D = 0.0;
    double n_eff = 0.0;
};

DerivedQuantities derived_quantities(const Scenario& scenario, std::span<const double> g, double n_sig);

/// LMMSE receive coefficient A / D.
double lmmse_coefficient(const Scenario& scenario, std::span<const double> g, double n_sig);

/// E|S - h y|^2 for an arbitrary receive coefficient.
double full_mse(const Scenario& scenario, const Allocation& alloc);

/// MSE with h already replaced by its LMMSE value: K - A^2 / D.
double reduced_mse(const Scenario& scenario, std::span<const double> g, double n_sig);

/// MSE with communication silent and every OAC device at P_c. This is the
/// minimum of reduced_mse when the OAC transmissivities are equal; with
/// unequal ones a partial back-off can do better.
double mse_min(const Scenario& scenario);

/// MSE with all OAC devices silent. Always K.
double mse_max(const Scenario& scenario);

/// Partial derivatives of reduced_mse with respect to each g_k with n_sig
/// held fixed:
///   dMSE/dg_k = -(D A sqrt(eta_k / g_k) - A^2 eta_k) / D^2
/// Components with g_k below `floor` are evaluated at `floor`.
std::vector<double> mse_gradient(const Scenario& scenario, std::span<const double> g, double n_sig,
                                 double floor = kGradientFloor);

}  // namespace qicc
