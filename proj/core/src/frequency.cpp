#include "covparam/frequency.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <numbers>

#include <Eigen/Cholesky>
#include <Eigen/LU>
#include <Eigen/SVD>

#include "covparam/errors.hpp"
#include "covparam/linalg.hpp"
#include "covparam/lyapunov.hpp"
#include "covparam/parallel.hpp"
#include "covparam/parametrization.hpp"

namespace covparam {

namespace {

using cplx = std::complex<double>;

// Phi(i w) = Y Y^* with Y = (i w I - A)^{-1} L and Sigma_w = L L'.
Eigen::MatrixXcd psd_from_factor(const Eigen::MatrixXd& A, const Eigen::MatrixXd& L,
                                 double omega, double guard_rel) {
    Eigen::MatrixXcd B = -A.cast<cplx>();
    B.diagonal().array() += cplx(0.0, omega);
    const Eigen::MatrixXcd Y = B.partialPivLu().solve(L.cast<cplx>());
    if ((B * Y - L.cast<cplx>()).norm() > guard_rel * std::max(L.norm(), 1.0))
        throw IllConditioned("i w I - A numerically singular at omega = " +
                             std::to_string(omega));
    Eigen::MatrixXcd phi = Y * Y.adjoint();
    phi = 0.5 * (phi + phi.adjoint().eval());
    return phi;
}

Eigen::MatrixXd cholesky_factor(const Eigen::MatrixXd& Sigma_w) {
    Eigen::LLT<Eigen::MatrixXd> llt(Sigma_w);
    if (llt.info() != Eigen::Success)
        throw InvalidParametrization("Sigma_w is not positive definite");
    return llt.matrixL();
}

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration on P_m.
struct GaussRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussRule gauss_legendre(int m) {
    GaussRule rule;
    rule.nodes.resize(m);
    rule.weights.resize(m);
    const int half = (m + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < m; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = m * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        rule.nodes[i] = -z;
        rule.nodes[m - 1 - i] = z;
        rule.weights[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.weights[m - 1 - i] = rule.weights[i];
    }
    return rule;
}

}  // namespace

Eigen::MatrixXcd psd_matrix(const SystemModel& model, double omega, const Tolerances& tol) {
    validate_system(model, tol);
    const Eigen::MatrixXd L = cholesky_factor(model.Sigma_w);
    return psd_from_factor(model.A, L, omega, tol.match_rel);
}

double psd_trace(const SystemModel& model, double omega, const Tolerances& tol) {
    return psd_matrix(model, omega, tol).trace().real();
}

SpectrumTable compute_spectrum_table(const Eigen::MatrixXd& Sigma,
                                     const Eigen::MatrixXd& Sigma_w,
                                     const Eigen::MatrixXd& S_bar,
                                     const std::vector<double>& alphas,
                                     const std::vector<double>& omegas,
                                     bool keep_full, int threads,
                                     const Tolerances& tol) {
    if (alphas.empty() || omegas.empty())
        throw ValidationError("alpha and omega grids must be nonempty");

    SpectrumTable table;
    table.alphas = alphas;
    table.omegas = omegas;
    const std::size_t na = alphas.size(), nw = omegas.size();
    table.tr_phi.assign(na * nw, 0.0);
    if (keep_full) table.full_phi.assign(na * nw, Eigen::MatrixXcd());

    const Eigen::MatrixXd L = cholesky_factor(Sigma_w);
    std::vector<Eigen::MatrixXd> As(na);
    for (std::size_t a = 0; a < na; ++a)
        As[a] = forward_param(Parametrization{Sigma, alphas[a] * S_bar, Sigma_w}, tol).A;

    parallel_for_index(na * nw, threads, [&](std::size_t idx) {
        const std::size_t a = idx / nw, w = idx % nw;
        const Eigen::MatrixXcd phi = psd_from_factor(As[a], L, omegas[w], tol.match_rel);
        table.tr_phi[idx] = phi.trace().real();
        if (keep_full) table.full_phi[idx] = phi;
    });
    return table;
}

EnergyCheckReport energy_identity_check(const SystemModel& model,
                                        const QuadratureConfig& cfg,
                                        const Tolerances& tol) {
    validate_system(model, tol);
    const Eigen::MatrixXd L = cholesky_factor(model.Sigma_w);
    const Eigen::Index n = model.A.rows();

    EnergyCheckReport rep;
    rep.sigma_lyap = solve_lyapunov(model.A, model.Sigma_w, tol);

    const Eigen::VectorXcd lam = eigenvalues(model.A);
    const double rho = lam.cwiseAbs().maxCoeff();
    const double im_max = lam.imag().cwiseAbs().maxCoeff();
    rep.omega_max = cfg.omega_max > 0.0 ? cfg.omega_max
                                        : std::max(100.0 * rho, 10.0 * im_max);

    // Phi(-w) = conj(Phi(w)); integrate 2 Re Phi on [0, Omega] and add the
    // analytic Sigma_w / (pi Omega) tail (the odd 1/w^3 term cancels).
    auto integrand = [&](double w) -> Eigen::MatrixXd {
        return psd_from_factor(model.A, L, w, tol.match_rel).real();
    };

    static const GaussRule g7 = gauss_legendre(7);
    static const GaussRule g15 = gauss_legendre(15);
    auto apply_rule = [&](const GaussRule& rule, double a, double b) {
        Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
        const double mid = 0.5 * (a + b), halfw = 0.5 * (b - a);
        for (std::size_t k = 0; k < rule.nodes.size(); ++k)
            acc += rule.weights[k] * integrand(mid + halfw * rule.nodes[k]);
        return (halfw * acc).eval();
    };

    const double scale = std::max(rep.sigma_lyap.norm(), 1e-300);
    const double tol_abs = cfg.rel_tol * std::numbers::pi * scale;

    struct Panel {
        double a, b;
    };
    std::deque<Panel> work{{0.0, rep.omega_max}};
    Eigen::MatrixXd total = Eigen::MatrixXd::Zero(n, n);
    double err_total = 0.0;
    int panels_done = 0;
    while (!work.empty()) {
        const Panel p = work.front();
        work.pop_front();
        const Eigen::MatrixXd coarse = apply_rule(g7, p.a, p.b);
        const Eigen::MatrixXd fine = apply_rule(g15, p.a, p.b);
        const double err = (fine - coarse).norm();
        const double budget = tol_abs * (p.b - p.a) / rep.omega_max;
        ++panels_done;
        const bool out_of_budget =
            panels_done + static_cast<int>(work.size()) >= cfg.max_panels;
        if (err <= budget || out_of_budget) {
            total += fine;
            err_total += err;
        } else {
            const double mid = 0.5 * (p.a + p.b);
            work.push_back({p.a, mid});
            work.push_back({mid, p.b});
        }
    }
    rep.panels = panels_done;
    rep.quadrature_error = err_total / (std::numbers::pi * scale);

    Eigen::MatrixXd sigma = total / std::numbers::pi;  // (1/2pi) * two half-axes
    sigma += model.Sigma_w / (std::numbers::pi * rep.omega_max);
    rep.sigma_quad = 0.5 * (sigma + sigma.transpose());
    rep.rel_error = (rep.sigma_quad - rep.sigma_lyap).norm() / rep.sigma_lyap.norm();

    if (err_total > tol_abs)
        throw QuadratureFailure("quadrature could not reach requested tolerance " +
                                    std::to_string(cfg.rel_tol) + " (achieved " +
                                    std::to_string(rep.quadrature_error) + ")",
                                rep.quadrature_error);
    return rep;
}

HighpassReport highpass_checks(const Eigen::MatrixXd& Sigma,
                               const Eigen::MatrixXd& Sigma_w,
                               const Eigen::MatrixXd& S_bar,
                               const std::vector<double>& alphas,
                               const std::vector<double>& omegas,
                               const Tolerances& tol) {
    if (alphas.empty() || alphas.front() != 0.0)
        throw ValidationError("alpha grid must ascend from 0");
    for (std::size_t k = 1; k < alphas.size(); ++k)
        if (alphas[k] <= alphas[k - 1])
            throw ValidationError("alpha grid must be strictly ascending");
    if (omegas.empty()) throw ValidationError("omega grid is empty");
    if (S_bar.norm() == 0.0) throw ValidationError("S_bar must be nonzero");

    const Eigen::MatrixXd L = cholesky_factor(Sigma_w);
    auto trace_at = [&](double alpha, double omega) {
        const Eigen::MatrixXd A =
            forward_param(Parametrization{Sigma, alpha * S_bar, Sigma_w}, tol).A;
        return psd_from_factor(A, L, omega, tol.match_rel).trace().real();
    };

    HighpassReport rep;
    rep.alphas = alphas;
    for (double alpha : alphas) rep.dc_trace.push_back(trace_at(alpha, 0.0));
    rep.dc_nonincreasing = true;
    for (std::size_t k = 1; k < rep.dc_trace.size(); ++k)
        if (rep.dc_trace[k] > rep.dc_trace[k - 1] + 1e-12 * std::abs(rep.dc_trace[0]))
            rep.dc_nonincreasing = false;

    const Eigen::VectorXd sv = S_bar.jacobiSvd().singularValues();
    rep.full_rank = sv(sv.size() - 1) > tol.spd_eig_floor * sv(0);
    rep.alpha_large = 1e3 * spectral_norm(Sigma_w) / spectral_norm(S_bar);
    rep.epsilon = 1e-2 * rep.dc_trace.front();

    std::vector<double> trace_large(omegas.size());
    for (std::size_t w = 0; w < omegas.size(); ++w)
        trace_large[w] = trace_at(rep.alpha_large, omegas[w]);

    if (rep.full_rank) {
        rep.max_trace_at_alpha_large =
            *std::max_element(trace_large.begin(), trace_large.end());
        rep.lowfreq_suppressed = *rep.max_trace_at_alpha_large < rep.epsilon;
    }

    // Empirical omega_bar: largest grid |omega| below which the alpha = 0
    // spectrum dominates the large-alpha one everywhere.
    std::vector<std::pair<double, bool>> by_abs;
    for (std::size_t w = 0; w < omegas.size(); ++w)
        by_abs.emplace_back(std::abs(omegas[w]),
                            trace_at(0.0, omegas[w]) > trace_large[w]);
    std::sort(by_abs.begin(), by_abs.end());
    for (const auto& [absw, dominates] : by_abs) {
        if (!dominates) break;
        rep.omega_bar = absw;
    }
    return rep;
}

Resonance2d resonance_2d(double sigma2, double d1, double d2,
                         const std::vector<double>& alphas,
                         const Tolerances& tol) {
    if (!(d1 >= d2 && d2 > 0.0)) throw ValidationError("require d1 >= d2 > 0");
    if (!(sigma2 > 0.0)) throw ValidationError("require sigma2 > 0");
    if (alphas.empty()) throw ValidationError("alpha grid is empty");

    Resonance2d out;
    out.alphas = alphas;
    out.alpha_th = sigma2 * std::sqrt(d1 * d1 + d2 * d2) / (2.0 * std::sqrt(2.0 * d1 * d2));

    const Eigen::MatrixXd Sigma_w = sigma2 * Eigen::MatrixXd::Identity(2, 2);
    const Eigen::MatrixXd L = cholesky_factor(Sigma_w);
    for (double alpha : alphas) {
        if (alpha < 0.0) throw ValidationError("alpha grid must be nonnegative");
        const double zeta = alpha * alpha + 0.25 * sigma2 * sigma2;
        out.zeta.push_back(zeta);

        const double disc =
            8.0 * d1 * d2 * alpha * alpha - sigma2 * sigma2 * (d1 * d1 + d2 * d2);
        if (alpha > out.alpha_th && disc > 0.0)
            out.omega_r.push_back(std::sqrt(disc) / (2.0 * std::sqrt(2.0)));
        else
            out.omega_r.push_back(std::nullopt);

        Eigen::MatrixXd A(2, 2);
        A << -0.5 * sigma2 * d1, alpha * d2, -alpha * d1, -0.5 * sigma2 * d2;
        auto trace_at = [&](double w) {
            return psd_from_factor(A, L, w, tol.match_rel).trace().real();
        };

        // Coarse grid over the band that can contain the peak, then
        // golden-section polish around the grid argmax.
        const double w_hi =
            2.0 * std::sqrt(d1 * d2 * zeta) + sigma2 * (d1 + d2) + 1.0;
        const int grid_n = 4001;
        double best_w = 0.0, best_v = trace_at(0.0);
        for (int k = 1; k < grid_n; ++k) {
            const double w = w_hi * k / (grid_n - 1);
            const double v = trace_at(w);
            if (v > best_v) {
                best_v = v;
                best_w = w;
            }
        }
        if (best_w == 0.0) {
            out.omega_exact_argmax.push_back(0.0);
            continue;
        }
        const double step = w_hi / (grid_n - 1);
        double lo = std::max(0.0, best_w - step), hi = best_w + step;
        const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
        double x1 = hi - inv_phi * (hi - lo), x2 = lo + inv_phi * (hi - lo);
        double f1 = trace_at(x1), f2 = trace_at(x2);
        for (int it = 0; it < 200 && hi - lo > 1e-13 * (1.0 + hi); ++it) {
            if (f1 < f2) {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = trace_at(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = trace_at(x1);
            }
        }
        out.omega_exact_argmax.push_back(0.5 * (lo + hi));
    }
    return out;
}

}  // namespace covparam
