#include "covparam/simulate.hpp"

#include <cmath>
#include <random>
#include <string>

#include "covparam/errors.hpp"
#include "covparam/linalg.hpp"

namespace covparam {

namespace {

std::mt19937_64 trajectory_rng(std::uint64_t seed, std::uint64_t index) {
    // Documented splitting rule: stream j is seeded from (seed, j).
    std::seed_seq seq{static_cast<std::uint64_t>(seed), index};
    return std::mt19937_64(seq);
}

}  // namespace

std::vector<Trajectory> simulate_ou(const SystemModel& model, const SimConfig& cfg,
                                    const Tolerances& tol) {
    validate_system(model, tol);
    if (!(cfg.dt > 0.0)) throw InvalidConfig("dt must be positive");
    if (cfg.n_steps <= 0) throw InvalidConfig("n_steps must be positive");
    if (cfg.burn_in < 0) throw InvalidConfig("burn_in must be nonnegative");
    if (cfg.n_trajectories < 1) throw InvalidConfig("n_trajectories must be >= 1");

    const double rho = spectral_radius(model.A);
    if (!(cfg.dt * rho < 0.1))
        throw InvalidConfig("dt too large: dt * spectral_radius(A) = " +
                            std::to_string(cfg.dt * rho) + " >= 0.1");
    const double margin = -hurwitz_margin(model.A);
    const double burn_needed = 5.0 / (cfg.dt * margin);
    if (static_cast<double>(cfg.burn_in) < burn_needed)
        throw InvalidConfig("burn_in too short: need >= " + std::to_string(burn_needed) +
                            " steps to forget the initial condition");

    const Eigen::Index n = model.A.rows();
    const Eigen::MatrixXd noise_gain = std::sqrt(cfg.dt) * sym_sqrt(model.Sigma_w, tol);
    const Eigen::MatrixXd step_gain =
        Eigen::MatrixXd::Identity(n, n) + cfg.dt * model.A;

    std::vector<Trajectory> out;
    out.reserve(static_cast<std::size_t>(cfg.n_trajectories));
    for (int traj = 0; traj < cfg.n_trajectories; ++traj) {
        auto rng = trajectory_rng(cfg.seed, static_cast<std::uint64_t>(traj));
        std::normal_distribution<double> gauss(0.0, 1.0);

        Trajectory t;
        t.t0 = static_cast<double>(cfg.burn_in) * cfg.dt;
        t.dt = cfg.dt;
        t.states.resize(n, cfg.n_steps);

        Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
        Eigen::VectorXd z(n);
        const std::int64_t total = cfg.burn_in + cfg.n_steps;
        for (std::int64_t k = 0; k < total; ++k) {
            for (Eigen::Index i = 0; i < n; ++i) z(i) = gauss(rng);
            x = step_gain * x + noise_gain * z;
            if (k >= cfg.burn_in) t.states.col(k - cfg.burn_in) = x;
        }
        out.push_back(std::move(t));
    }
    return out;
}

EmpiricalStats estimate_stats(const std::vector<Trajectory>& trajectories,
                              double dt, const Eigen::MatrixXd& Sigma_w) {
    if (trajectories.empty()) throw InsufficientData("no trajectories");
    if (!(dt > 0.0)) throw ValidationError("dt must be positive");
    const Eigen::Index n = trajectories.front().states.rows();
    require_square(Sigma_w, "Sigma_w");
    if (Sigma_w.rows() != n) throw ValidationError("Sigma_w dimension mismatch");

    std::int64_t n_samples = 0;
    for (const Trajectory& t : trajectories) n_samples += t.states.cols();
    if (n_samples < 10000)
        throw InsufficientData("need at least 1e4 samples, got " +
                               std::to_string(n_samples));

    Eigen::MatrixXd sum_xx = Eigen::MatrixXd::Zero(n, n);
    Eigen::MatrixXd sum_dx = Eigen::MatrixXd::Zero(n, n);
    std::int64_t n_pairs = 0;
    for (const Trajectory& t : trajectories) {
        const Eigen::Index m = t.states.cols();
        sum_xx += t.states * t.states.transpose();
        if (m >= 2) {
            const auto head = t.states.leftCols(m - 1);
            const auto tail = t.states.rightCols(m - 1);
            sum_dx += (tail - head) * head.transpose();
            n_pairs += m - 1;
        }
    }
    if (n_pairs == 0) throw InsufficientData("trajectories too short for differences");

    EmpiricalStats stats;
    stats.n_samples = n_samples;
    stats.Sigma_hat = sum_xx / static_cast<double>(n_samples);
    stats.Sigma_hat = 0.5 * (stats.Sigma_hat + stats.Sigma_hat.transpose().eval());
    stats.DC_hat = sum_dx / (dt * static_cast<double>(n_pairs));
    const Eigen::MatrixXd s_raw = 0.5 * Sigma_w + stats.DC_hat;
    stats.S_hat = 0.5 * (s_raw - s_raw.transpose());
    return stats;
}

}  // namespace covparam
