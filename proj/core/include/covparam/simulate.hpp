#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "covparam/types.hpp"

namespace covparam {

/// Euler-Maruyama discretization settings for  dx = A x dt + dw.
struct SimConfig {
    double dt = 1e-3;
    std::int64_t n_steps = 200000;   // retained steps after burn-in
    std::int64_t burn_in = 10000;    // discarded steps from x(0) = 0
    std::uint64_t seed = 0;
    int n_trajectories = 1;
};

/// One realized path; column k is the state at time t0 + k * dt.
struct Trajectory {
    double t0 = 0.0;
    double dt = 0.0;
    Eigen::MatrixXd states;  // n x n_steps
};

/// Estimates recovered from stationary samples.
/// S_hat is the skew part of 0.5 * Sigma_w + DC_hat, where DC_hat is the
/// forward-difference estimate of lim E[x' x^T] (the differential covariance);
/// in the stationary limit DC = A Sigma = -0.5 Sigma_w + S.
struct EmpiricalStats {
    Eigen::MatrixXd Sigma_hat;
    Eigen::MatrixXd DC_hat;
    Eigen::MatrixXd S_hat;
    std::int64_t n_samples = 0;
};

/// Simulate x_{k+1} = x_k + dt A x_k + sqrt(dt) * Sigma_w^{1/2} z_k with
/// z_k standard normal, starting from x = 0, discarding cfg.burn_in steps.
/// Deterministic for a fixed config; trajectory j uses the stream derived
/// from (cfg.seed, j).
///
/// Config guards: dt * spectral_radius(A) < 0.1 and
/// burn_in >= 5 / (dt * |max Re lambda(A)|); violations raise InvalidConfig.
std::vector<Trajectory> simulate_ou(const SystemModel& model, const SimConfig& cfg,
                                    const Tolerances& tol = {});

/// Time averages over the retained samples: Sigma_hat from x x^T, DC_hat
/// from ((x_{k+1} - x_k)/dt) x_k^T (forward differences match the
/// Euler-Maruyama identity E[(x_{k+1}-x_k)/dt x_k^T] = A E[x_k x_k^T];
/// central differences would bias the noise term). Requires at least 1e4
/// samples in total.
EmpiricalStats estimate_stats(const std::vector<Trajectory>& trajectories,
                              double dt, const Eigen::MatrixXd& Sigma_w);

}  // namespace covparam
