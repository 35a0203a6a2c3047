#pragma once

#include <Eigen/Dense>

#include "covparam/types.hpp"

namespace covparam {

/// Solve the continuous algebraic Lyapunov equation  A X + X A' + Q = 0
/// for symmetric Q, via the Kronecker-vectorized linear system
/// (I (x) A + A (x) I) vec(X) = -vec(Q).
///
/// The result is exactly symmetric. Throws SingularLyapunov when some
/// eigenvalue pair of A satisfies lambda_i + lambda_j ~ 0, and SolverFailure
/// when the residual ||AX + XA' + Q||_F / max(||Q||_F, 1) exceeds
/// tol.lyap_residual.
///
/// Dense vectorization keeps this exact and simple at the intended sizes
/// (n <= 64); a Schur-based method is the upgrade path for larger n.
Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A,
                               const Eigen::MatrixXd& Q,
                               const Tolerances& tol = {});

/// Residual ||AX + XA' + Q||_F / max(||Q||_F, 1).
double lyapunov_residual(const Eigen::MatrixXd& A,
                         const Eigen::MatrixXd& X,
                         const Eigen::MatrixXd& Q);

}  // namespace covparam
