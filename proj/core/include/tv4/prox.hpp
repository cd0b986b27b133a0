#pragma once

#include <algorithm>
#include <cmath>

#include "tv4/grid.hpp"

namespace tv4 {

/// prox of tau * (1/2)||. - y||^2 at x: (x + tau*y) / (1 + tau).
Image prox_quadratic(const Image& y, const Image& x, double tau);

/// Per-pixel radial shrinkage, the prox of gamma * sum of pixel norms.
template <int K>
Field<K> group_soft_threshold(const Field<K>& v, double gamma) {
  if (gamma < 0.0) throw std::invalid_argument("group_soft_threshold: gamma must be >= 0");
  Field<K> out = v;
  for (int i = 0; i < out.rows(); ++i) {
    for (int j = 0; j < out.cols(); ++j) {
      const double n = pixel_norm(out, i, j);
      double* p = out.px(i, j);
      if (n <= gamma) {
        for (int k = 0; k < K; ++k) p[k] = 0.0;
      } else {
        const double scale = 1.0 - gamma / n;
        for (int k = 0; k < K; ++k) p[k] *= scale;
      }
    }
  }
  return out;
}

/// Per-pixel radial projection onto the ball of the given radius.
template <int K>
Field<K> project_ball(const Field<K>& v, double radius = 1.0) {
  Field<K> out = v;
  for (int i = 0; i < out.rows(); ++i) {
    for (int j = 0; j < out.cols(); ++j) {
      const double n = pixel_norm(out, i, j);
      if (n > radius) {
        const double scale = radius / n;
        double* p = out.px(i, j);
        for (int k = 0; k < K; ++k) p[k] *= scale;
      }
    }
  }
  return out;
}

template <int K>
Field<K> project_unit_ball(const Field<K>& v) {
  return project_ball(v, 1.0);
}

/// Projection onto the intersection of the nonnegative orthant and the ball:
/// clamp to >= 0, then scale radially. Exact for this cone/ball pair.
template <int K>
Field<K> project_ball_nonneg(const Field<K>& v, double radius = 1.0) {
  Field<K> out = v;
  for (double& x : out.data()) x = std::max(x, 0.0);
  return project_ball(out, radius);
}

/// Componentwise clamp to [-bound, bound] (the anisotropic dual set).
template <int K>
Field<K> clamp_channels(const Field<K>& v, double bound) {
  Field<K> out = v;
  for (double& x : out.data()) x = std::clamp(x, -bound, bound);
  return out;
}

/// Block-average downscaling by an integer factor; input dims must divide.
class DownscaleOp {
 public:
  DownscaleOp(int factor, int hi_rows, int hi_cols);

  int factor() const { return m_; }
  int hi_rows() const { return hi_rows_; }
  int hi_cols() const { return hi_cols_; }
  int lo_rows() const { return hi_rows_ / m_; }
  int lo_cols() const { return hi_cols_ / m_; }

 private:
  int m_;
  int hi_rows_;
  int hi_cols_;
};

/// Each output pixel is the mean of its m x m input block.
Image downscale(const DownscaleOp& A, const Image& x);

/// Transpose of the block mean: replicates y(k)/m^2 into block k.
Image downscale_adjoint(const DownscaleOp& A, const Image& y);

/// Euclidean projection onto {x : Ax = y}: subtract the block-replicated
/// residual (Ax - y) from every pixel of the corresponding block.
Image project_affine(const DownscaleOp& A, const Image& y, const Image& x);

}  // namespace tv4
