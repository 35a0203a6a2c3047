#include "covparam/spectrum.hpp"

#include <algorithm>
#include <complex>
#include <limits>
#include <numeric>
#include <tuple>

#include <Eigen/Eigenvalues>

#include "covparam/errors.hpp"
#include "covparam/linalg.hpp"
#include "covparam/parametrization.hpp"

namespace covparam {

namespace {

using cplx = std::complex<double>;

void check_alpha_grid(const std::vector<double>& alphas) {
    if (alphas.empty()) throw ValidationError("alpha grid is empty");
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        if (alphas[k] < 0.0) throw ValidationError("alpha grid must be nonnegative");
        if (k > 0 && alphas[k] <= alphas[k - 1])
            throw ValidationError("alpha grid must be strictly ascending");
    }
}

std::vector<cplx> sorted_eigs(const Eigen::MatrixXd& A) {
    const Eigen::VectorXcd lam = eigenvalues(A);
    std::vector<cplx> out(lam.data(), lam.data() + lam.size());
    std::sort(out.begin(), out.end(), [](const cplx& a, const cplx& b) {
        return std::make_pair(a.real(), -a.imag()) < std::make_pair(b.real(), -b.imag());
    });
    return out;
}

// Greedy minimal-distance assignment: pair previous branch values with the
// new eigenvalues, closest pairs first. Fails gracefully (but can swap
// labels) at branch crossings; a locally refined grid resolves those.
std::vector<std::size_t> greedy_match(const std::vector<cplx>& prev,
                                      const std::vector<cplx>& next) {
    const std::size_t n = prev.size();
    struct Pair {
        double dist;
        std::size_t i, j;
    };
    std::vector<Pair> pairs;
    pairs.reserve(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            pairs.push_back({std::abs(prev[i] - next[j]), i, j});
    std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
        return std::tie(a.dist, a.i, a.j) < std::tie(b.dist, b.i, b.j);
    });

    std::vector<std::size_t> assign(n, n);
    std::vector<bool> used_i(n, false), used_j(n, false);
    std::size_t placed = 0;
    for (const Pair& p : pairs) {
        if (used_i[p.i] || used_j[p.j]) continue;
        assign[p.i] = p.j;
        used_i[p.i] = used_j[p.j] = true;
        if (++placed == n) break;
    }
    return assign;
}

}  // namespace

AsymptoticReport asymptotic_limits(const Eigen::MatrixXd& Sigma,
                                   const Eigen::MatrixXd& Sigma_w,
                                   const Eigen::MatrixXd& S_bar,
                                   const Tolerances& tol) {
    require_square(S_bar, "S_bar");
    require_square(Sigma, "Sigma");
    require_square(Sigma_w, "Sigma_w");
    if (Sigma.rows() != S_bar.rows() || Sigma.rows() != Sigma_w.rows())
        throw ValidationError("Sigma, Sigma_w, S_bar must share one dimension");
    if (S_bar.norm() == 0.0) throw ValidationError("S_bar must be nonzero");
    if (skewness_defect(S_bar) > tol.skew_sym)
        throw ValidationError("S_bar is not skew-symmetric");

    const Eigen::MatrixXd R = sym_inv_sqrt(Sigma, tol);
    const Eigen::MatrixXd K = R * S_bar * R;

    // i*K is Hermitian, so its eigenvalues h are real and K's are mu = -i h,
    // exactly imaginary, with orthonormal eigenvectors shared between both.
    const Eigen::MatrixXcd H = cplx(0.0, 1.0) * K.cast<cplx>();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(H);
    if (es.info() != Eigen::Success) throw SolverFailure("skew eigensolver did not converge");
    const Eigen::VectorXd h = es.eigenvalues();
    const Eigen::MatrixXcd vecs = es.eigenvectors();

    const Eigen::Index n = K.rows();
    // Im mu = -h; descending Im mu = ascending h. Ties (repeated h) fall back
    // to the real part of the leading eigenvector entry.
    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        if (h(a) != h(b)) return h(a) < h(b);
        return vecs(0, a).real() < vecs(0, b).real();
    });

    AsymptoticReport rep;
    rep.mu.resize(n);
    rep.u.resize(n, n);
    rep.re_limits.resize(n);
    const Eigen::MatrixXd Qw = R * Sigma_w * R;
    const double hscale = std::max(h.cwiseAbs().maxCoeff(), 1.0);
    rep.simple_spectrum = true;
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = order[k];
        rep.mu(k) = cplx(0.0, -h(src));
        rep.u.col(k) = vecs.col(src);
        rep.re_limits(k) = -0.5 * (vecs.col(src).adjoint() * Qw * vecs.col(src))(0).real();
    }
    for (Eigen::Index k = 1; k < n; ++k) {
        if (std::abs(h(k) - h(k - 1)) <= tol.match_rel * hscale) rep.simple_spectrum = false;
    }
    return rep;
}

EigenLocus eigen_sweep(const Eigen::MatrixXd& Sigma,
                       const Eigen::MatrixXd& Sigma_w,
                       const Eigen::MatrixXd& S_bar,
                       const std::vector<double>& alphas,
                       const Tolerances& tol) {
    check_alpha_grid(alphas);
    const AsymptoticReport asym = asymptotic_limits(Sigma, Sigma_w, S_bar, tol);
    const std::size_t n = static_cast<std::size_t>(Sigma.rows());

    EigenLocus locus;
    locus.alphas = alphas;
    locus.branches.reserve(alphas.size());
    for (double alpha : alphas) {
        const SystemModel m =
            forward_param(Parametrization{Sigma, alpha * S_bar, Sigma_w}, tol);
        std::vector<cplx> eigs = sorted_eigs(m.A);
        if (locus.branches.empty()) {
            locus.branches.push_back(std::move(eigs));
        } else {
            const std::vector<std::size_t> assign = greedy_match(locus.branches.back(), eigs);
            std::vector<cplx> matched(n);
            for (std::size_t i = 0; i < n; ++i) matched[i] = eigs[assign[i]];
            locus.branches.push_back(std::move(matched));
        }
    }

    // Attach each asymptote to the branch it is closest to at the largest
    // alpha, comparing (Re lambda, Im lambda / alpha) against (limit, Im mu).
    locus.asymptote_re.resize(n);
    locus.asymptote_im_rate.resize(n);
    const double a_last = alphas.back();
    const std::vector<cplx>& last = locus.branches.back();
    std::vector<cplx> branch_pts(n), asym_pts(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double rate = a_last > 0.0 ? last[i].imag() / a_last : last[i].imag();
        branch_pts[i] = cplx(last[i].real(), rate);
        asym_pts[i] = cplx(asym.re_limits(static_cast<Eigen::Index>(i)),
                           asym.mu(static_cast<Eigen::Index>(i)).imag());
    }
    const std::vector<std::size_t> attach = greedy_match(branch_pts, asym_pts);
    for (std::size_t i = 0; i < n; ++i) {
        locus.asymptote_re[i] = asym_pts[attach[i]].real();
        locus.asymptote_im_rate[i] = asym_pts[attach[i]].imag();
    }
    return locus;
}

TraceCheckReport trace_invariant_check(const Eigen::MatrixXd& Sigma,
                                       const Eigen::MatrixXd& Sigma_w,
                                       const Eigen::MatrixXd& S_bar,
                                       const std::vector<double>& alphas,
                                       const Tolerances& tol) {
    check_alpha_grid(alphas);
    TraceCheckReport rep;
    rep.alphas = alphas;
    const Eigen::MatrixXd sigma_inv_sqrt = sym_inv_sqrt(Sigma, tol);
    rep.expected_trace =
        -0.5 * (sigma_inv_sqrt * Sigma_w * sigma_inv_sqrt).trace();
    for (double alpha : alphas) {
        const SystemModel m =
            forward_param(Parametrization{Sigma, alpha * S_bar, Sigma_w}, tol);
        const double tr = m.A.trace();
        const double resid = std::abs(tr - rep.expected_trace);
        rep.traces.push_back(tr);
        rep.residuals.push_back(resid);
        if (resid > tol.match_rel * std::max(spectral_norm(m.A), 1.0)) rep.ok = false;
    }
    return rep;
}

std::pair<double, double> real_part_bounds(const Eigen::MatrixXd& Sigma,
                                           const Eigen::MatrixXd& Sigma_w,
                                           const Tolerances& tol) {
    const Eigen::MatrixXd R = sym_inv_sqrt(Sigma, tol);
    const Eigen::VectorXd eigs = symmetric_eigenvalues(-0.5 * R * Sigma_w * R);
    return {eigs(0), eigs(eigs.size() - 1)};
}

}  // namespace covparam
