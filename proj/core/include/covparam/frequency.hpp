#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "covparam/types.hpp"

namespace covparam {

/// Power spectral density Phi(i w) = (i w I - A)^{-1} Sigma_w (i w I - A)^{-*},
/// evaluated through complex linear solves (never an explicit inverse).
/// Hermitian and positive definite for Hurwitz A and SPD Sigma_w.
Eigen::MatrixXcd psd_matrix(const SystemModel& model, double omega,
                            const Tolerances& tol = {});

/// tr Phi(i w) > 0.
double psd_trace(const SystemModel& model, double omega, const Tolerances& tol = {});

/// Sampled tr Phi over an (omega, alpha) grid for the family
/// A(alpha) = (-0.5*Sigma_w + alpha*S_bar) * Sigma^{-1}.
struct SpectrumTable {
    std::vector<double> omegas;
    std::vector<double> alphas;
    /// tr_phi[a * omegas.size() + w] for alpha index a, omega index w.
    std::vector<double> tr_phi;
    /// Full Hermitian samples in the same layout; filled only on request.
    std::vector<Eigen::MatrixXcd> full_phi;

    double at(std::size_t alpha_idx, std::size_t omega_idx) const {
        return tr_phi[alpha_idx * omegas.size() + omega_idx];
    }
};

SpectrumTable compute_spectrum_table(const Eigen::MatrixXd& Sigma,
                                     const Eigen::MatrixXd& Sigma_w,
                                     const Eigen::MatrixXd& S_bar,
                                     const std::vector<double>& alphas,
                                     const std::vector<double>& omegas,
                                     bool keep_full = false,
                                     int threads = 1,
                                     const Tolerances& tol = {});

struct QuadratureConfig {
    /// Target relative accuracy of the integrated covariance.
    double rel_tol = 1e-6;
    /// Panel budget for the adaptive subdivision.
    int max_panels = 20000;
    /// Override for the truncation frequency; 0 picks
    /// max(100 * spectral_radius(A), 10 * max |Im lambda(A)|).
    double omega_max = 0.0;
};

/// Check the energy identity Sigma = (1/2pi) Int Phi(i w) dw by adaptive
/// Gauss-style quadrature on [-Omega, Omega] plus the analytic
/// Sigma_w/(pi Omega) tail, compared against the Lyapunov solution.
struct EnergyCheckReport {
    Eigen::MatrixXd sigma_quad;
    Eigen::MatrixXd sigma_lyap;
    double rel_error = 0.0;       // ||sigma_quad - sigma_lyap|| / ||sigma_lyap||, Frobenius
    double quadrature_error = 0.0;  // accumulated panel error estimate, relative
    double omega_max = 0.0;
    int panels = 0;
};

EnergyCheckReport energy_identity_check(const SystemModel& model,
                                        const QuadratureConfig& cfg = {},
                                        const Tolerances& tol = {});

/// The two externally visible low-frequency effects of growing alpha:
/// the DC trace decreases monotonically, and (for full-rank S_bar) the
/// whole low-frequency band is suppressed once alpha is large.
struct HighpassReport {
    std::vector<double> alphas;
    std::vector<double> dc_trace;  // tr Phi(0, alpha)
    bool dc_nonincreasing = false;

    bool full_rank = false;   // S_bar full rank (singular-value test)
    double alpha_large = 0.0; // 1e3 * ||Sigma_w|| / ||S_bar||, the "alpha -> inf" proxy
    double epsilon = 0.0;     // 1e-2 * tr Phi(0, 0)
    /// max over the omega grid of tr Phi(i w, alpha_large); absent when
    /// S_bar is rank deficient (the suppression statement needs full rank).
    std::optional<double> max_trace_at_alpha_large;
    std::optional<bool> lowfreq_suppressed;  // max_trace_at_alpha_large < epsilon

    /// Largest grid frequency W such that tr Phi(i w, 0) > tr Phi(i w,
    /// alpha_large) for every grid point with |w| <= W.
    std::optional<double> omega_bar;
};

HighpassReport highpass_checks(const Eigen::MatrixXd& Sigma,
                               const Eigen::MatrixXd& Sigma_w,
                               const Eigen::MatrixXd& S_bar,
                               const std::vector<double>& alphas,
                               const std::vector<double>& omegas,
                               const Tolerances& tol = {});

/// Resonance of the 2-D diagonal family (Sigma^{-1} = diag(d1,d2),
/// Sigma_w = sigma2 I). alpha_th and omega_r come from the second-order
/// approximation that neglects the spectrum's zero; omega_exact_argmax is
/// the argmax over omega >= 0 of the exact trace, located on a fine grid
/// and polished by golden-section search.
struct Resonance2d {
    double alpha_th = 0.0;
    std::vector<double> alphas;
    std::vector<std::optional<double>> omega_r;  // absent when alpha <= alpha_th
    std::vector<double> omega_exact_argmax;
    std::vector<double> zeta;  // alpha^2 + sigma2^2 / 4
};

Resonance2d resonance_2d(double sigma2, double d1, double d2,
                         const std::vector<double>& alphas,
                         const Tolerances& tol = {});

}  // namespace covparam
