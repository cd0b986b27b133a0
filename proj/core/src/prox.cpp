#include "tv4/prox.hpp"

#include <stdexcept>
#include <string>

namespace tv4 {

Image prox_quadratic(const Image& y, const Image& x, double tau) {
  if (tau <= 0.0) throw std::invalid_argument("prox_quadratic: tau must be > 0");
  detail::require_same_dims(x.rows(), x.cols(), y.rows(), y.cols(), "prox_quadratic");
  Image out(x.rows(), x.cols());
  const double inv = 1.0 / (1.0 + tau);
  for (std::size_t p = 0; p < out.size(); ++p)
    out.data()[p] = (x.data()[p] + tau * y.data()[p]) * inv;
  return out;
}

DownscaleOp::DownscaleOp(int factor, int hi_rows, int hi_cols)
    : m_(factor), hi_rows_(hi_rows), hi_cols_(hi_cols) {
  if (factor < 2) throw std::invalid_argument("downscale factor must be >= 2");
  if (hi_rows % factor != 0 || hi_cols % factor != 0) {
    throw std::invalid_argument("image dims " + std::to_string(hi_rows) + "x" +
                                std::to_string(hi_cols) + " not divisible by factor " +
                                std::to_string(factor));
  }
  detail::checked_grid_size(hi_rows / factor, hi_cols / factor);
}

Image downscale(const DownscaleOp& A, const Image& x) {
  detail::require_same_dims(x.rows(), x.cols(), A.hi_rows(), A.hi_cols(), "downscale");
  const int m = A.factor();
  Image out(A.lo_rows(), A.lo_cols());
  const double inv = 1.0 / (m * m);
  for (int I = 0; I < out.rows(); ++I) {
    for (int J = 0; J < out.cols(); ++J) {
      double s = 0.0;
      for (int di = 0; di < m; ++di)
        for (int dj = 0; dj < m; ++dj) s += x(I * m + di, J * m + dj);
      out(I, J) = s * inv;
    }
  }
  return out;
}

Image downscale_adjoint(const DownscaleOp& A, const Image& y) {
  detail::require_same_dims(y.rows(), y.cols(), A.lo_rows(), A.lo_cols(), "downscale_adjoint");
  const int m = A.factor();
  Image out(A.hi_rows(), A.hi_cols());
  const double inv = 1.0 / (m * m);
  for (int I = 0; I < y.rows(); ++I) {
    for (int J = 0; J < y.cols(); ++J) {
      const double v = y(I, J) * inv;
      for (int di = 0; di < m; ++di)
        for (int dj = 0; dj < m; ++dj) out(I * m + di, J * m + dj) = v;
    }
  }
  return out;
}

Image project_affine(const DownscaleOp& A, const Image& y, const Image& x) {
  detail::require_same_dims(x.rows(), x.cols(), A.hi_rows(), A.hi_cols(), "project_affine");
  detail::require_same_dims(y.rows(), y.cols(), A.lo_rows(), A.lo_cols(), "project_affine");
  const int m = A.factor();
  Image out = x;
  const double inv = 1.0 / (m * m);
  for (int I = 0; I < y.rows(); ++I) {
    for (int J = 0; J < y.cols(); ++J) {
      double s = 0.0;
      for (int di = 0; di < m; ++di)
        for (int dj = 0; dj < m; ++dj) s += x(I * m + di, J * m + dj);
      const double r = s * inv - y(I, J);
      for (int di = 0; di < m; ++di)
        for (int dj = 0; dj < m; ++dj) out(I * m + di, J * m + dj) -= r;
    }
  }
  return out;
}

}  // namespace tv4
