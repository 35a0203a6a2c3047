#include "covparam/parametrization.hpp"

#include <string>

#include <Eigen/Cholesky>

#include "covparam/errors.hpp"
#include "covparam/linalg.hpp"
#include "covparam/lyapunov.hpp"

namespace covparam {

SystemModel forward_param(const Parametrization& p, const Tolerances& tol) {
    validate_parametrization(p, tol);

    // A = (-0.5 Sigma_w + S) Sigma^{-1}; with Sigma symmetric this is
    // (Sigma^{-1} (-0.5 Sigma_w + S)')', solved through the Cholesky factor.
    const Eigen::MatrixXd rhs = (-0.5 * p.Sigma_w + p.S).transpose();
    const Eigen::MatrixXd A = p.Sigma.llt().solve(rhs).transpose();

    const double res = lyapunov_residual(A, p.Sigma, p.Sigma_w);
    if (!(res <= tol.lyap_residual))
        throw SolverFailure("forward parametrization residual " + std::to_string(res) +
                            " exceeds tolerance");
    const double margin = hurwitz_margin(A);
    if (!(margin < 0.0))
        throw SolverFailure("constructed A lost stability numerically: max Re lambda = " +
                            std::to_string(margin));
    return SystemModel{A, p.Sigma_w};
}

Parametrization inverse_param(const SystemModel& m, const Tolerances& tol) {
    validate_system(m, tol);

    const Eigen::MatrixXd Sigma = solve_lyapunov(m.A, m.Sigma_w, tol);
    Eigen::MatrixXd S = 0.5 * (m.A * Sigma - Sigma * m.A.transpose());
    S = 0.5 * (S - S.transpose()).eval();  // exact skewness for downstream ops
    return Parametrization{Sigma, S, m.Sigma_w};
}

}  // namespace covparam
