#pragma once

#include "tv4/grid.hpp"

namespace tv4 {

/// Sum over pixels of sqrt(c1^2 + c2^2) of the forward differences.
double tv_iso(const Image& x);

/// Sum over pixels of |c1| + |c2|.
double tv_aniso(const Image& x);

/// Sum over pixels of the norm of the four clamped one-sided differences.
double tv_upwind(const Image& x);

/// Sum over pixels of the norm of the four-direction differences.
double tv_prn(const Image& x);

/// Dual-constrained TV models: value = max <diff(x), u> subject to every
/// interpolated sample of u lying in the unit ball.
enum class DualTv { condat, refined };

struct DualTvResult {
  double value = 0.0;       // feasible lower bound on the true maximum
  double residual = 0.0;    // constraint violation max(0, max|L u| - 1) before scaling
  int iterations = 0;
  bool converged = false;
};

/// Evaluates the constrained maximization with a primal-dual loop; the
/// returned value is always feasible (final iterate rescaled into the
/// constraint set), hence a valid lower bound regardless of convergence.
DualTvResult tv_dual_eval(DualTv model, const Image& x, double rel_tol = 1e-6,
                          int max_iter = 5000);

}  // namespace tv4
