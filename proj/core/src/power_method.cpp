#include "tv4/power_method.hpp"

#include <cmath>
#include <random>

#include "tv4/diff_ops.hpp"
#include "tv4/prox.hpp"

namespace tv4 {

std::vector<double> random_vector(int dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<double> v(dim);
  for (double& x : v) {
    // 53-bit uniform in [0,1), mapped to [-1,1]; independent of library
    // distribution internals so streams are stable across platforms.
    const double u = static_cast<double>(rng() >> 11) * 0x1p-53;
    x = 2.0 * u - 1.0;
  }
  return v;
}

double operator_norm_estimate(const LinearOperatorPair& op, int iters, std::uint64_t seed) {
  std::vector<double> v = random_vector(op.in_dim, seed);
  double lambda = 0.0;
  for (int it = 0; it < iters; ++it) {
    double nv = 0.0;
    for (double x : v) nv += x * x;
    nv = std::sqrt(nv);
    if (nv == 0.0) return 0.0;
    for (double& x : v) x /= nv;
    const std::vector<double> w = op.adjoint(op.forward(v));
    lambda = 0.0;
    for (int i = 0; i < op.in_dim; ++i) lambda += v[i] * w[i];
    v = w;
  }
  return std::sqrt(std::max(lambda, 0.0));
}

double adjoint_mismatch(const LinearOperatorPair& op, int trials, std::uint64_t seed) {
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    const std::vector<double> x = random_vector(op.in_dim, seed + 2 * t);
    const std::vector<double> u = random_vector(op.out_dim, seed + 2 * t + 1);
    const std::vector<double> kx = op.forward(x);
    const std::vector<double> ku = op.adjoint(u);
    double a = 0.0, b = 0.0;
    for (int i = 0; i < op.out_dim; ++i) a += kx[i] * u[i];
    for (int i = 0; i < op.in_dim; ++i) b += x[i] * ku[i];
    worst = std::max(worst, std::abs(a - b) / (1.0 + std::abs(a)));
  }
  return worst;
}

namespace {

Image image_from_flat(int rows, int cols, const std::vector<double>& v) {
  Image x(rows, cols);
  x.data() = v;
  return x;
}

template <int K>
Field<K> field_from_flat(int rows, int cols, const std::vector<double>& v) {
  Field<K> f(rows, cols);
  f.data() = v;
  return f;
}

}  // namespace

LinearOperatorPair make_diff2_op(int rows, int cols) {
  const int n = rows * cols;
  return {n, 2 * n,
          [=](const std::vector<double>& v) { return diff2(image_from_flat(rows, cols, v)).data(); },
          [=](const std::vector<double>& v) {
            return diff2_adjoint(field_from_flat<2>(rows, cols, v)).data();
          }};
}

LinearOperatorPair make_diff4_op(int rows, int cols) {
  const int n = rows * cols;
  return {n, 4 * n,
          [=](const std::vector<double>& v) { return diff4(image_from_flat(rows, cols, v)).data(); },
          [=](const std::vector<double>& v) {
            return diff4_adjoint(field_from_flat<4>(rows, cols, v)).data();
          }};
}

LinearOperatorPair make_upwind_diff_op(int rows, int cols) {
  const int n = rows * cols;
  return {n, 4 * n,
          [=](const std::vector<double>& v) {
            return upwind_diff(image_from_flat(rows, cols, v)).data();
          },
          [=](const std::vector<double>& v) {
            return upwind_diff_adjoint(field_from_flat<4>(rows, cols, v)).data();
          }};
}

LinearOperatorPair make_interp_op(Star star, int rows, int cols, InterpOptions opt) {
  const int n = 4 * rows * cols;
  return {n, n,
          [=](const std::vector<double>& v) {
            return interp(star, field_from_flat<4>(rows, cols, v), opt).data();
          },
          [=](const std::vector<double>& v) {
            return interp_adjoint(star, field_from_flat<4>(rows, cols, v), opt).data();
          }};
}

LinearOperatorPair make_interp_condat_op(Star star, int rows, int cols) {
  const int n = 2 * rows * cols;
  return {n, n,
          [=](const std::vector<double>& v) {
            return interp_condat(star, field_from_flat<2>(rows, cols, v)).data();
          },
          [=](const std::vector<double>& v) {
            return interp_condat_adjoint(star, field_from_flat<2>(rows, cols, v)).data();
          }};
}

LinearOperatorPair make_big_l_op(int rows, int cols, InterpOptions opt) {
  const int n = rows * cols;
  const int in_dim = 4 * n + n;
  const int out_dim = 4 * (4 * n) + n;
  return {in_dim, out_dim,
          [=](const std::vector<double>& v) {
            Field4 u(rows, cols);
            Image s(rows, cols);
            std::copy(v.begin(), v.begin() + 4 * n, u.data().begin());
            std::copy(v.begin() + 4 * n, v.end(), s.data().begin());
            const BigLValue out = big_l(u, s, opt);
            std::vector<double> flat;
            flat.reserve(out_dim);
            for (const Field4& f : out.star) flat.insert(flat.end(), f.data().begin(), f.data().end());
            flat.insert(flat.end(), out.alpha.data().begin(), out.alpha.data().end());
            return flat;
          },
          [=](const std::vector<double>& v) {
            BigLValue val;
            std::size_t off = 0;
            for (Field4& f : val.star) {
              f = Field4(rows, cols);
              std::copy(v.begin() + off, v.begin() + off + 4 * n, f.data().begin());
              off += 4 * n;
            }
            val.alpha = Image(rows, cols);
            std::copy(v.begin() + off, v.end(), val.alpha.data().begin());
            auto [ustar, sstar] = big_l_adjoint(val, opt);
            std::vector<double> flat;
            flat.reserve(in_dim);
            flat.insert(flat.end(), ustar.data().begin(), ustar.data().end());
            flat.insert(flat.end(), sstar.data().begin(), sstar.data().end());
            return flat;
          }};
}

LinearOperatorPair make_downscale_op(int factor, int hi_rows, int hi_cols) {
  const DownscaleOp A(factor, hi_rows, hi_cols);
  const int in_dim = hi_rows * hi_cols;
  const int out_dim = A.lo_rows() * A.lo_cols();
  return {in_dim, out_dim,
          [=](const std::vector<double>& v) {
            return downscale(A, image_from_flat(hi_rows, hi_cols, v)).data();
          },
          [=](const std::vector<double>& v) {
            return downscale_adjoint(A, image_from_flat(A.lo_rows(), A.lo_cols(), v)).data();
          }};
}

}  // namespace tv4
