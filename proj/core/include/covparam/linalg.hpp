#pragma once

#include <Eigen/Dense>

#include "covparam/types.hpp"

namespace covparam {

/// ||A||_2 (largest singular value).
double spectral_norm(const Eigen::MatrixXd& A);

/// 0.5 * (A + A').
Eigen::MatrixXd symmetric_part(const Eigen::MatrixXd& A);

/// 0.5 * (A - A').
Eigen::MatrixXd skew_part(const Eigen::MatrixXd& A);

/// ||A - A'|| / max(||A||, 1), spectral norms.
double symmetry_defect(const Eigen::MatrixXd& A);

/// ||A + A'|| / max(||A||, 1), spectral norms.
double skewness_defect(const Eigen::MatrixXd& A);

/// Eigenvalues of a symmetric matrix, ascending.
Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& A);

/// Scale-free SPD test: symmetric up to tol.skew_sym and
/// lambda_min > tol.spd_eig_floor * lambda_max.
bool is_spd(const Eigen::MatrixXd& A, const Tolerances& tol = {});

/// Eigenvalues of a general real matrix.
Eigen::VectorXcd eigenvalues(const Eigen::MatrixXd& A);

/// max Re lambda(A); negative iff A is Hurwitz stable.
double hurwitz_margin(const Eigen::MatrixXd& A);

/// max |lambda(A)|.
double spectral_radius(const Eigen::MatrixXd& A);

/// Symmetric PD square root of an SPD matrix.
/// Throws IllConditioned when the spectrum collapses below the SPD floor.
Eigen::MatrixXd sym_sqrt(const Eigen::MatrixXd& Sigma, const Tolerances& tol = {});

/// Symmetric PD inverse square root M of an SPD matrix: M * Sigma * M = I.
Eigen::MatrixXd sym_inv_sqrt(const Eigen::MatrixXd& Sigma, const Tolerances& tol = {});

}  // namespace covparam
