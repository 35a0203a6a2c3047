#include "covparam/ensembles.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "covparam/errors.hpp"
#include "covparam/linalg.hpp"
#include "covparam/parametrization.hpp"

namespace covparam {

namespace {

double quantile_type7(const std::vector<double>& sorted, double p) {
    if (sorted.size() == 1) return sorted.front();
    const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    return sorted[lo] + (h - std::floor(h)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

std::vector<SystemModel> random_stable(const EnsembleSpec& spec, const Tolerances& tol) {
    if (spec.n < 1) throw ValidationError("ensemble dimension must be >= 1");
    if (spec.count < 1) throw ValidationError("ensemble count must be >= 1");
    if (!(spec.target_margin < 0.0)) throw ValidationError("target_margin must be < 0");
    if (spec.target_imag < 0.0) throw ValidationError("target_imag must be >= 0");

    Eigen::MatrixXd Sigma_w = spec.Sigma_w;
    if (Sigma_w.size() == 0)
        Sigma_w = Eigen::MatrixXd::Identity(spec.n, spec.n);
    require_square(Sigma_w, "Sigma_w");
    if (Sigma_w.rows() != spec.n) throw ValidationError("Sigma_w dimension mismatch");
    if (!is_spd(Sigma_w, tol))
        throw InvalidParametrization("Sigma_w is not symmetric positive definite");

    std::vector<SystemModel> out;
    out.reserve(static_cast<std::size_t>(spec.count));
    for (int k = 0; k < spec.count; ++k) {
        std::seed_seq seq{spec.seed, static_cast<std::uint64_t>(k)};
        std::mt19937_64 rng(seq);
        std::normal_distribution<double> gauss(0.0, 1.0);

        Eigen::MatrixXd B(spec.n, spec.n);
        for (int i = 0; i < spec.n; ++i)
            for (int j = 0; j < spec.n; ++j) B(i, j) = gauss(rng);

        const Eigen::VectorXcd lam = eigenvalues(B);
        const double max_re = lam.real().maxCoeff();
        const double max_im = lam.imag().cwiseAbs().maxCoeff();
        const double c = max_im > 0.0 ? spec.target_imag / max_im : 1.0;
        const double s = spec.target_margin - c * max_re;
        Eigen::MatrixXd A = c * B;
        A.diagonal().array() += s;
        out.push_back(SystemModel{std::move(A), Sigma_w});
    }
    return out;
}

SNormReport s_norm_stats(const std::vector<SystemModel>& models,
                         NormKind norm, const Tolerances& tol) {
    if (models.empty()) throw ValidationError("empty model list");

    SNormReport rep;
    rep.norms.reserve(models.size());
    for (std::size_t k = 0; k < models.size(); ++k) {
        try {
            const Parametrization p = inverse_param(models[k], tol);
            rep.norms.push_back(norm == NormKind::spectral ? spectral_norm(p.S)
                                                           : p.S.norm());
        } catch (const NotStable& e) {
            throw NotStable("matrix " + std::to_string(k) + ": " + e.what());
        }
    }

    std::vector<double> sorted = rep.norms;
    std::sort(sorted.begin(), sorted.end());
    rep.min = sorted.front();
    rep.q1 = quantile_type7(sorted, 0.25);
    rep.median = quantile_type7(sorted, 0.5);
    rep.q3 = quantile_type7(sorted, 0.75);
    rep.max = sorted.back();
    return rep;
}

}  // namespace covparam
