#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "covparam/types.hpp"

namespace covparam {

/// Large-scale limits of the spectrum of A(alpha) = (-0.5*Sigma_w + alpha*S_bar) * Sigma^{-1}.
///
/// mu/u are the eigenpairs of K = Sigma^{-1/2} S_bar Sigma^{-1/2} (mu purely
/// imaginary, u orthonormal); re_limits[i] = -0.5 * u_i^* Sigma^{-1/2} Sigma_w
/// Sigma^{-1/2} u_i is the limit of Re lambda_i, and Im lambda_i / alpha tends
/// to Im mu_i. Entries are ordered by descending Im mu, ties broken by the
/// real part of the first eigenvector entry.
struct AsymptoticReport {
    Eigen::VectorXcd mu;
    Eigen::MatrixXcd u;  // column i pairs with mu(i)
    Eigen::VectorXd re_limits;
    /// False when K has a (numerically) repeated eigenvalue; the limits are
    /// then reported but outside the regime where they are guaranteed.
    bool simple_spectrum = true;
};

AsymptoticReport asymptotic_limits(const Eigen::MatrixXd& Sigma,
                                   const Eigen::MatrixXd& Sigma_w,
                                   const Eigen::MatrixXd& S_bar,
                                   const Tolerances& tol = {});

/// Eigenvalue trajectories of A(alpha) over an ascending alpha grid.
/// branches[k][i] is branch i at alphas[k]; branches are index-matched
/// between consecutive grid points by greedy nearest-neighbor assignment
/// in the complex plane. asymptote_re[i] / asymptote_im_rate[i] carry the
/// limit data matched to branch i at the largest alpha.
struct EigenLocus {
    std::vector<double> alphas;
    std::vector<std::vector<std::complex<double>>> branches;
    std::vector<double> asymptote_re;
    std::vector<double> asymptote_im_rate;
};

/// Sweep the spectrum of the family over alphas (nonempty, ascending,
/// nonnegative). Greedy matching can mislabel branches at eigenvalue
/// crossings; refine the grid locally if a locus looks discontinuous.
EigenLocus eigen_sweep(const Eigen::MatrixXd& Sigma,
                       const Eigen::MatrixXd& Sigma_w,
                       const Eigen::MatrixXd& S_bar,
                       const std::vector<double>& alphas,
                       const Tolerances& tol = {});

/// Per-alpha residuals of the trace identity
/// tr A(alpha) = -0.5 * tr(Sigma_w Sigma^{-1}), which holds for every alpha.
struct TraceCheckReport {
    std::vector<double> alphas;
    std::vector<double> traces;
    std::vector<double> residuals;  // |tr A + 0.5 tr(Sigma_w Sigma^{-1})|
    double expected_trace = 0.0;
    bool ok = true;  // every residual <= tol.match_rel * max(||A||, 1)
};

TraceCheckReport trace_invariant_check(const Eigen::MatrixXd& Sigma,
                                       const Eigen::MatrixXd& Sigma_w,
                                       const Eigen::MatrixXd& S_bar,
                                       const std::vector<double>& alphas,
                                       const Tolerances& tol = {});

/// [lambda_min, lambda_max] of -0.5 * Sigma^{-1/2} Sigma_w Sigma^{-1/2};
/// every Re lambda(A(alpha)) stays inside this interval for all alpha.
std::pair<double, double> real_part_bounds(const Eigen::MatrixXd& Sigma,
                                           const Eigen::MatrixXd& Sigma_w,
                                           const Tolerances& tol = {});

}  // namespace covparam
