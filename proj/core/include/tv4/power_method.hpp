#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "tv4/interp_ops.hpp"

namespace tv4 {

/// A linear map together with its transpose, acting on flat coefficient
/// vectors. Shared contract for the difference operators, the interpolation
/// operators, downscaling and their stacked combinations.
struct LinearOperatorPair {
  int in_dim = 0;
  int out_dim = 0;
  std::function<std::vector<double>(const std::vector<double>&)> forward;
  std::function<std::vector<double>(const std::vector<double>&)> adjoint;
};

/// Power-method estimate of the spectral norm of op (largest singular
/// value), iterating on op* op. Deterministic for a fixed seed.
double operator_norm_estimate(const LinearOperatorPair& op, int iters = 60,
                              std::uint64_t seed = 0x7456345221ULL);

/// Largest relative adjoint defect |<Kx,u> - <x,K*u>| / (1 + |<Kx,u>|)
/// over `trials` random vector pairs.
double adjoint_mismatch(const LinearOperatorPair& op, int trials = 20,
                        std::uint64_t seed = 0x9e3779b97f4a7c15ULL);

/// Uniform [-1,1] samples from a splitmix-seeded mt19937_64; the shared
/// source of reproducible test vectors.
std::vector<double> random_vector(int dim, std::uint64_t seed);

// Flat adapters over the typed operators.
LinearOperatorPair make_diff2_op(int rows, int cols);
LinearOperatorPair make_diff4_op(int rows, int cols);
LinearOperatorPair make_upwind_diff_op(int rows, int cols);
LinearOperatorPair make_interp_op(Star star, int rows, int cols, InterpOptions opt = {});
LinearOperatorPair make_interp_condat_op(Star star, int rows, int cols);
LinearOperatorPair make_big_l_op(int rows, int cols, InterpOptions opt = {});
LinearOperatorPair make_downscale_op(int factor, int hi_rows, int hi_cols);

}  // namespace tv4
