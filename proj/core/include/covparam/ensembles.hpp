#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "covparam/types.hpp"

namespace covparam {

/// Random stable ensemble with prescribed spectral targets.
struct EnsembleSpec {
    int n = 10;
    int count = 20;
    double target_margin = -1.0;  // desired max Re lambda, must be < 0
    double target_imag = 0.0;     // desired max |Im lambda|, >= 0
    std::uint64_t seed = 0;
    Eigen::MatrixXd Sigma_w;      // empty means identity
};

/// Draw count matrices of i.i.d. standard normals and shift/rescale each:
/// A = c B + s I with c = target_imag / max|Im lambda(B)| (c = 1 when the
/// spectrum of B is real) and s = target_margin - c max Re lambda(B), so the
/// spectral targets hold exactly. Deterministic per seed; matrix k uses the
/// stream derived from (seed, k).
std::vector<SystemModel> random_stable(const EnsembleSpec& spec, const Tolerances& tol = {});

enum class NormKind { spectral, frobenius };

/// Box-plot statistics of ||S|| across a group of systems, with S from
/// inverse_param per system.
struct SNormReport {
    std::vector<double> norms;  // per input model, input order
    double min = 0.0;
    double q1 = 0.0;
    double median = 0.0;
    double q3 = 0.0;
    double max = 0.0;
};

/// Throws NotStable naming the offending index when some model is not
/// Hurwitz. Quartiles use linear interpolation between order statistics.
SNormReport s_norm_stats(const std::vector<SystemModel>& models,
                         NormKind norm = NormKind::spectral,
                         const Tolerances& tol = {});

}  // namespace covparam
