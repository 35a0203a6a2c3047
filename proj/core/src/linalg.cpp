#include "covparam/linalg.hpp"

#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "covparam/errors.hpp"

namespace covparam {

double spectral_norm(const Eigen::MatrixXd& A) {
    if (A.size() == 0) return 0.0;
    return A.jacobiSvd().singularValues()(0);
}

Eigen::MatrixXd symmetric_part(const Eigen::MatrixXd& A) {
    return 0.5 * (A + A.transpose());
}

Eigen::MatrixXd skew_part(const Eigen::MatrixXd& A) {
    return 0.5 * (A - A.transpose());
}

double symmetry_defect(const Eigen::MatrixXd& A) {
    return spectral_norm(A - A.transpose()) / std::max(spectral_norm(A), 1.0);
}

double skewness_defect(const Eigen::MatrixXd& A) {
    return spectral_norm(A + A.transpose()) / std::max(spectral_norm(A), 1.0);
}

Eigen::VectorXd symmetric_eigenvalues(const Eigen::MatrixXd& A) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw SolverFailure("symmetric eigensolver did not converge");
    return es.eigenvalues();
}

bool is_spd(const Eigen::MatrixXd& A, const Tolerances& tol) {
    if (A.rows() != A.cols() || A.size() == 0) return false;
    if (symmetry_defect(A) > tol.skew_sym) return false;
    const Eigen::VectorXd eigs = symmetric_eigenvalues(symmetric_part(A));
    const double lo = eigs(0);
    const double hi = eigs(eigs.size() - 1);
    return hi > 0.0 && lo > tol.spd_eig_floor * hi;
}

Eigen::VectorXcd eigenvalues(const Eigen::MatrixXd& A) {
    Eigen::EigenSolver<Eigen::MatrixXd> es(A, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success) throw SolverFailure("eigensolver did not converge");
    return es.eigenvalues();
}

double hurwitz_margin(const Eigen::MatrixXd& A) {
    return eigenvalues(A).real().maxCoeff();
}

double spectral_radius(const Eigen::MatrixXd& A) {
    return eigenvalues(A).cwiseAbs().maxCoeff();
}

namespace {

// Shared eigendecomposition for the symmetric matrix powers Sigma^{+-1/2}.
Eigen::MatrixXd sym_power(const Eigen::MatrixXd& Sigma, double exponent,
                          const Tolerances& tol, const char* what) {
    if (Sigma.rows() != Sigma.cols() || Sigma.size() == 0)
        throw ValidationError(std::string(what) + ": matrix must be square and nonempty");
    if (symmetry_defect(Sigma) > tol.skew_sym)
        throw ValidationError(std::string(what) + ": matrix is not symmetric");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(symmetric_part(Sigma));
    if (es.info() != Eigen::Success)
        throw SolverFailure(std::string(what) + ": eigensolver did not converge");
    const Eigen::VectorXd d = es.eigenvalues();
    const double hi = d(d.size() - 1);
    if (hi <= 0.0 || d(0) <= tol.spd_eig_floor * hi)
        throw IllConditioned(std::string(what) + ": eigenvalue " + std::to_string(d(0)) +
                             " below SPD floor relative to " + std::to_string(hi));
    const Eigen::VectorXd powered = d.array().pow(exponent);
    return es.eigenvectors() * powered.asDiagonal() * es.eigenvectors().transpose();
}

}  // namespace

Eigen::MatrixXd sym_sqrt(const Eigen::MatrixXd& Sigma, const Tolerances& tol) {
    return sym_power(Sigma, 0.5, tol, "sym_sqrt");
}

Eigen::MatrixXd sym_inv_sqrt(const Eigen::MatrixXd& Sigma, const Tolerances& tol) {
    return sym_power(Sigma, -0.5, tol, "sym_inv_sqrt");
}

void require_square(const Eigen::MatrixXd& m, const char* name) {
    if (m.size() == 0 || m.rows() != m.cols())
        throw ValidationError(std::string(name) + " must be a nonempty square matrix, got " +
                              std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
}

void validate_tolerances(const Tolerances& tol) {
    if (!(tol.spd_eig_floor > 0.0) || !(tol.lyap_residual > 0.0) ||
        !(tol.skew_sym > 0.0) || !(tol.match_rel > 0.0))
        throw ValidationError("tolerances must be strictly positive");
}

namespace {

// Indefinite or asymmetric input is a caller error; a PD matrix whose
// condition estimate exceeds 1/spd_eig_floor is flagged separately.
void check_spd(const Eigen::MatrixXd& m, const char* name, const Tolerances& tol) {
    if (symmetry_defect(m) > tol.skew_sym)
        throw InvalidParametrization(std::string(name) + " is not symmetric");
    const Eigen::VectorXd eigs = symmetric_eigenvalues(symmetric_part(m));
    const double lo = eigs(0), hi = eigs(eigs.size() - 1);
    if (!(lo > 0.0))
        throw InvalidParametrization(std::string(name) + " is not positive definite (lambda_min = " +
                                     std::to_string(lo) + ")");
    if (lo <= tol.spd_eig_floor * hi)
        throw IllConditioned(std::string(name) + " numerically singular: condition estimate " +
                             std::to_string(hi / lo));
}

}  // namespace

void validate_parametrization(const Parametrization& p, const Tolerances& tol) {
    validate_tolerances(tol);
    require_square(p.Sigma, "Sigma");
    require_square(p.S, "S");
    require_square(p.Sigma_w, "Sigma_w");
    if (p.Sigma.rows() != p.S.rows() || p.Sigma.rows() != p.Sigma_w.rows())
        throw InvalidParametrization("Sigma, S, Sigma_w must share one dimension");
    check_spd(p.Sigma, "Sigma", tol);
    check_spd(p.Sigma_w, "Sigma_w", tol);
    if (p.S.norm() > 0.0 && skewness_defect(p.S) > tol.skew_sym)
        throw InvalidParametrization("S is not skew-symmetric");
}

void validate_system(const SystemModel& m, const Tolerances& tol) {
    validate_tolerances(tol);
    require_square(m.A, "A");
    require_square(m.Sigma_w, "Sigma_w");
    if (m.A.rows() != m.Sigma_w.rows())
        throw ValidationError("A and Sigma_w must share one dimension");
    check_spd(m.Sigma_w, "Sigma_w", tol);
    const double margin = hurwitz_margin(m.A);
    if (!(margin < 0.0))
        throw NotStable("A is not Hurwitz stable: max Re lambda = " + std::to_string(margin));
}

Parametrization scaled_parametrization(const Eigen::MatrixXd& Sigma,
                                       const Eigen::MatrixXd& Sigma_w,
                                       const ScaledSkewFamily& family) {
    return Parametrization{Sigma, family.alpha * family.S_bar, Sigma_w};
}

}  // namespace covparam
