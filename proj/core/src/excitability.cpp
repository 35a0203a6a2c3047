#include "covparam/excitability.hpp"

#include <cmath>

#include "covparam/errors.hpp"
#include "covparam/linalg.hpp"
#include "covparam/parametrization.hpp"

namespace covparam {

double numerical_abscissa(const Eigen::MatrixXd& A) {
    require_square(A, "A");
    const Eigen::VectorXd eigs = symmetric_eigenvalues(symmetric_part(A));
    return eigs(eigs.size() - 1);
}

namespace {

Eigen::MatrixXd family_state_matrix(const Eigen::MatrixXd& Sigma,
                                    const Eigen::MatrixXd& Sigma_w,
                                    const Eigen::MatrixXd& S_bar,
                                    double alpha, const Tolerances& tol) {
    return forward_param(Parametrization{Sigma, alpha * S_bar, Sigma_w}, tol).A;
}

}  // namespace

AbscissaSweep abscissa_bounds(const Eigen::MatrixXd& Sigma,
                              const Eigen::MatrixXd& Sigma_w,
                              const Eigen::MatrixXd& S_bar,
                              const std::vector<double>& alphas,
                              const Tolerances& tol) {
    if (alphas.empty()) throw ValidationError("alpha grid is empty");
    for (double a : alphas)
        if (a < 0.0) throw ValidationError("alpha grid must be nonnegative");

    validate_parametrization(Parametrization{Sigma, S_bar, Sigma_w}, tol);
    const Eigen::MatrixXd R = sym_inv_sqrt(Sigma, tol);
    const Eigen::MatrixXd sigma_inv = R * R;

    // Symmetric part of A(alpha) splits as P + alpha M.
    const Eigen::MatrixXd P =
        -0.25 * (Sigma_w * sigma_inv + sigma_inv * Sigma_w);
    const Eigen::MatrixXd M = 0.5 * (S_bar * sigma_inv - sigma_inv * S_bar);

    AbscissaSweep sweep;
    sweep.alphas = alphas;
    const Eigen::VectorXd p_eigs = symmetric_eigenvalues(P);
    sweep.P_eigs = {p_eigs(0), p_eigs(p_eigs.size() - 1)};
    const Eigen::VectorXd m_eigs = symmetric_eigenvalues(M);
    sweep.M_lambda_max = m_eigs(m_eigs.size() - 1);

    const double m_scale = spectral_norm(S_bar) * spectral_norm(sigma_inv);
    const bool m_zero = spectral_norm(M) <= tol.skew_sym * std::max(m_scale, 1.0);
    if (!m_zero)
        sweep.sufficient_alpha = -sweep.P_eigs.first / sweep.M_lambda_max;

    for (double alpha : alphas) {
        sweep.omega.push_back(
            numerical_abscissa(family_state_matrix(Sigma, Sigma_w, S_bar, alpha, tol)));
        sweep.lower_bound.push_back(sweep.P_eigs.first + alpha * sweep.M_lambda_max);
        sweep.upper_bound.push_back(sweep.P_eigs.second + alpha * sweep.M_lambda_max);
    }
    return sweep;
}

Abscissa2d abscissa_2d_closed_form(double sigma2, double d1, double d2, double alpha) {
    if (!(d1 >= d2 && d2 > 0.0)) throw ValidationError("require d1 >= d2 > 0");
    if (!(sigma2 > 0.0)) throw ValidationError("require sigma2 > 0");
    if (alpha < 0.0) throw ValidationError("require alpha >= 0");

    Eigen::MatrixXd A(2, 2);
    A << -0.5 * sigma2 * d1, alpha * d2, -alpha * d1, -0.5 * sigma2 * d2;

    Abscissa2d out;
    out.omega = numerical_abscissa(A);
    if (d1 != d2) out.threshold = sigma2 * std::sqrt(d1 * d2) / (d1 - d2);
    return out;
}

std::optional<double> find_excitability_threshold(const Eigen::MatrixXd& Sigma,
                                                  const Eigen::MatrixXd& Sigma_w,
                                                  const Eigen::MatrixXd& S_bar,
                                                  double alpha_lo, double alpha_hi,
                                                  double alpha_tol,
                                                  const Tolerances& tol) {
    if (!(alpha_lo < alpha_hi)) throw ValidationError("need alpha_lo < alpha_hi");
    auto omega_at = [&](double a) {
        return numerical_abscissa(family_state_matrix(Sigma, Sigma_w, S_bar, a, tol));
    };
    double flo = omega_at(alpha_lo);
    double fhi = omega_at(alpha_hi);
    if (flo == 0.0) return alpha_lo;
    if (fhi == 0.0) return alpha_hi;
    if ((flo > 0.0) == (fhi > 0.0)) return std::nullopt;

    double lo = alpha_lo, hi = alpha_hi;
    while (hi - lo > alpha_tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = omega_at(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (fhi > 0.0)) {
            hi = mid;
            fhi = fm;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace covparam
