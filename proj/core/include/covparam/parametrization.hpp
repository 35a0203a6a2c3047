#pragma once

#include "covparam/types.hpp"

namespace covparam {

/// Map (Sigma, S, Sigma_w) to the stable system with state matrix
/// A = (-0.5 * Sigma_w + S) * Sigma^{-1}.
///
/// The returned A is Hurwitz by construction and satisfies the Lyapunov
/// equation A Sigma + Sigma A' + Sigma_w = 0; both facts are verified
/// numerically and a violation raises SolverFailure.
SystemModel forward_param(const Parametrization& p, const Tolerances& tol = {});

/// Invert the map: Sigma is the unique Lyapunov solution for (A, Sigma_w)
/// and S = 0.5 * (A Sigma - Sigma A'), re-skewed to kill rounding asymmetry.
Parametrization inverse_param(const SystemModel& m, const Tolerances& tol = {});

}  // namespace covparam
