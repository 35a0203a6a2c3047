#pragma once

#include <Eigen/Dense>

namespace covparam {

/// Numerical tolerances shared across the library. All values are relative.
struct Tolerances {
    /// SPD acceptance: smallest eigenvalue must exceed spd_eig_floor * largest.
    double spd_eig_floor = 1e-10;
    /// Lyapunov residual bound: ||AX + XA' + Q||_F / max(||Q||_F, 1).
    double lyap_residual = 1e-10;
    /// Skew-symmetry acceptance: ||S + S'|| / ||S||.
    double skew_sym = 1e-12;
    /// Agreement tolerance for analytic cross-checks and round trips.
    double match_rel = 1e-8;
};

/// Stable linear stochastic system  dx = A x dt + dw,  cov(dw) = Sigma_w dt.
/// A has units 1/time, Sigma_w state-units^2/time.
struct SystemModel {
    Eigen::MatrixXd A;
    Eigen::MatrixXd Sigma_w;
};

/// The (Sigma, S, Sigma_w) triple on the other side of the state-matrix
/// bijection: Sigma is the stationary covariance, S the skew-symmetric
/// degrees of freedom, Sigma_w the noise covariance.
struct Parametrization {
    Eigen::MatrixXd Sigma;
    Eigen::MatrixXd S;
    Eigen::MatrixXd Sigma_w;
};

/// Skew direction S_bar with a nonnegative scale alpha; S = alpha * S_bar.
struct ScaledSkewFamily {
    Eigen::MatrixXd S_bar;
    double alpha = 0.0;
};

/// Throw ValidationError unless m is square with positive size.
void require_square(const Eigen::MatrixXd& m, const char* name);

/// Throw ValidationError unless every tolerance is strictly positive.
void validate_tolerances(const Tolerances& tol);

/// Throw InvalidParametrization unless the triple satisfies its invariants
/// (Sigma, Sigma_w SPD; S skew up to tol.skew_sym), and IllConditioned when
/// Sigma is numerically singular.
void validate_parametrization(const Parametrization& p, const Tolerances& tol = {});

/// Throw NotStable / InvalidParametrization unless A is Hurwitz and
/// Sigma_w is SPD.
void validate_system(const SystemModel& m, const Tolerances& tol = {});

/// Build the parametrization (Sigma, alpha * S_bar, Sigma_w).
Parametrization scaled_parametrization(const Eigen::MatrixXd& Sigma,
                                       const Eigen::MatrixXd& Sigma_w,
                                       const ScaledSkewFamily& family);

}  // namespace covparam
