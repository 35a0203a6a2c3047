#include "covparam/lyapunov.hpp"

#include <string>

#include <Eigen/LU>

#include "covparam/errors.hpp"
#include "covparam/linalg.hpp"

namespace covparam {

double lyapunov_residual(const Eigen::MatrixXd& A,
                         const Eigen::MatrixXd& X,
                         const Eigen::MatrixXd& Q) {
    const Eigen::MatrixXd r = A * X + X * A.transpose() + Q;
    return r.norm() / std::max(Q.norm(), 1.0);
}

Eigen::MatrixXd solve_lyapunov(const Eigen::MatrixXd& A,
                               const Eigen::MatrixXd& Q,
                               const Tolerances& tol) {
    validate_tolerances(tol);
    require_square(A, "A");
    require_square(Q, "Q");
    const Eigen::Index n = A.rows();
    if (Q.rows() != n) throw ValidationError("A and Q must share one dimension");
    if (symmetry_defect(Q) > tol.skew_sym) throw ValidationError("Q is not symmetric");

    // The operator X |-> AX + XA' has spectrum {lambda_i + lambda_j};
    // a pair near zero means no (stable) solution.
    const Eigen::VectorXcd lam = eigenvalues(A);
    const double scale = std::max(lam.cwiseAbs().maxCoeff(), 1.0);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (std::abs(lam(i) + lam(j)) <= 1e-12 * scale)
                throw SingularLyapunov("eigenvalue pair lambda_i + lambda_j ~ 0 (i=" +
                                       std::to_string(i) + ", j=" + std::to_string(j) + ")");

    // vec(AX + XA') = (I (x) A + A (x) I) vec(X) with column-major vec.
    Eigen::MatrixXd op = Eigen::MatrixXd::Zero(n * n, n * n);
    for (Eigen::Index j = 0; j < n; ++j)
        op.block(j * n, j * n, n, n) += A;
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index k = 0; k < n; ++k)
                op(j * n + i, k * n + i) += A(j, k);

    const Eigen::VectorXd rhs = -Eigen::Map<const Eigen::VectorXd>(Q.data(), n * n);
    const Eigen::VectorXd x = op.partialPivLu().solve(rhs);
    Eigen::MatrixXd X = Eigen::Map<const Eigen::MatrixXd>(x.data(), n, n);
    X = 0.5 * (X + X.transpose()).eval();

    const double res = lyapunov_residual(A, X, Q);
    if (!(res <= tol.lyap_residual))
        throw SolverFailure("Lyapunov residual " + std::to_string(res) +
                            " exceeds tolerance " + std::to_string(tol.lyap_residual));
    return X;
}

}  // namespace covparam
