#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "covparam/types.hpp"

namespace covparam {

/// Numerical abscissa lambda_max((A + A')/2): the initial growth rate of
/// ||exp(A t)|| at t = 0. Positive values mean the system is excitable.
double numerical_abscissa(const Eigen::MatrixXd& A);

/// omega(A(alpha)) over an alpha grid together with the linear-in-alpha
/// sandwich  lambda_min(P) + alpha lambda_max(M) <= omega <= lambda_max(P)
/// + alpha lambda_max(M), where P = -0.25 (Sigma_w Sigma^{-1} + Sigma^{-1}
/// Sigma_w) and M = 0.5 (S_bar Sigma^{-1} - Sigma^{-1} S_bar).
struct AbscissaSweep {
    std::vector<double> alphas;
    std::vector<double> omega;
    std::vector<double> lower_bound;
    std::vector<double> upper_bound;
    std::pair<double, double> P_eigs;  // (lambda_min, lambda_max)
    double M_lambda_max = 0.0;
    /// -lambda_min(P) / lambda_max(M): alpha beyond which omega(A) > 0 is
    /// guaranteed. Absent when M == 0 (the bounds are then flat in alpha and
    /// the system is never excitable through this mechanism).
    std::optional<double> sufficient_alpha;
};

AbscissaSweep abscissa_bounds(const Eigen::MatrixXd& Sigma,
                              const Eigen::MatrixXd& Sigma_w,
                              const Eigen::MatrixXd& S_bar,
                              const std::vector<double>& alphas,
                              const Tolerances& tol = {});

/// 2-D diagonal family: Sigma^{-1} = diag(d1, d2) with d1 >= d2 > 0,
/// Sigma_w = sigma2 * I, S = alpha * [[0,1],[-1,0]].
struct Abscissa2d {
    double omega = 0.0;
    /// alpha at which omega crosses zero: sigma2 * sqrt(d1 d2) / (d1 - d2).
    /// Absent when d1 == d2 (omega stays at -sigma2*d1/2 for every alpha).
    std::optional<double> threshold;
};

/// omega(A) for the 2-D family by direct eigencomputation of the symmetric
/// part (authoritative), plus the excitability threshold.
Abscissa2d abscissa_2d_closed_form(double sigma2, double d1, double d2, double alpha);

/// Locate the alpha where omega(A(alpha)) crosses zero by bisection on
/// [alpha_lo, alpha_hi]. Empty when omega does not change sign on the bracket.
std::optional<double> find_excitability_threshold(const Eigen::MatrixXd& Sigma,
                                                  const Eigen::MatrixXd& Sigma_w,
                                                  const Eigen::MatrixXd& S_bar,
                                                  double alpha_lo, double alpha_hi,
                                                  double alpha_tol = 1e-12,
                                                  const Tolerances& tol = {});

}  // namespace covparam
