#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace tv4 {

namespace detail {

inline std::size_t checked_grid_size(int rows, int cols) {
  if (rows < 2 || cols < 2) {
    throw std::invalid_argument("grid must be at least 2x2, got " +
                                std::to_string(rows) + "x" + std::to_string(cols));
  }
  return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
}

}  // namespace detail

/// Scalar intensity grid, row-major. Intensities are nominally in [0,1];
/// solver iterates may leave that range and are clamped only on export.
class Image {
 public:
  Image() = default;

  Image(int rows, int cols)
      : data_(detail::checked_grid_size(rows, cols), 0.0), n1_(rows), n2_(cols) {}

  /// Validating constructor: rejects wrong-sized or non-finite data.
  Image(int rows, int cols, std::vector<double> values) : Image(rows, cols) {
    if (values.size() != data_.size()) {
      throw std::invalid_argument("image data length does not match dimensions");
    }
    for (double v : values) {
      if (!std::isfinite(v)) throw std::invalid_argument("non-finite value in image data");
    }
    data_ = std::move(values);
  }

  int rows() const { return n1_; }
  int cols() const { return n2_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * n2_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * n2_ + j]; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::vector<double> data_;
  int n1_ = 0;
  int n2_ = 0;
};

/// K-channel field over the pixel grid, pixel-major (the K channels of a
/// pixel are contiguous). Houses gradients, dual fields and split variables.
template <int K>
class Field {
  static_assert(K >= 1);

 public:
  static constexpr int channels = K;

  Field() = default;

  Field(int rows, int cols)
      : data_(detail::checked_grid_size(rows, cols) * K, 0.0), n1_(rows), n2_(cols) {}

  int rows() const { return n1_; }
  int cols() const { return n2_; }
  std::size_t size() const { return data_.size(); }

  double& at(int i, int j, int k) {
    return data_[(static_cast<std::size_t>(i) * n2_ + j) * K + k];
  }
  double at(int i, int j, int k) const {
    return data_[(static_cast<std::size_t>(i) * n2_ + j) * K + k];
  }

  double* px(int i, int j) { return data_.data() + (static_cast<std::size_t>(i) * n2_ + j) * K; }
  const double* px(int i, int j) const {
    return data_.data() + (static_cast<std::size_t>(i) * n2_ + j) * K;
  }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

 private:
  std::vector<double> data_;
  int n1_ = 0;
  int n2_ = 0;
};

using Field2 = Field<2>;
using Field4 = Field<4>;

namespace detail {

inline void require_same_dims(int r1, int c1, int r2, int c2, const char* what) {
  if (r1 != r2 || c1 != c2) {
    throw std::invalid_argument(std::string(what) + ": dimension mismatch (" +
                                std::to_string(r1) + "x" + std::to_string(c1) + " vs " +
                                std::to_string(r2) + "x" + std::to_string(c2) + ")");
  }
}

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

}  // namespace detail

inline double inner_product(const Image& a, const Image& b) {
  detail::require_same_dims(a.rows(), a.cols(), b.rows(), b.cols(), "inner_product");
  return detail::dot(a.data(), b.data());
}

template <int K>
double inner_product(const Field<K>& a, const Field<K>& b) {
  detail::require_same_dims(a.rows(), a.cols(), b.rows(), b.cols(), "inner_product");
  return detail::dot(a.data(), b.data());
}

inline double norm_fro(const Image& a) { return std::sqrt(inner_product(a, a)); }

template <int K>
double norm_fro(const Field<K>& a) {
  return std::sqrt(inner_product(a, a));
}

/// Euclidean norm of the K-vector at one pixel.
template <int K>
double pixel_norm(const Field<K>& v, int i, int j) {
  const double* p = v.px(i, j);
  double s = 0.0;
  for (int k = 0; k < K; ++k) s += p[k] * p[k];
  return std::sqrt(s);
}

/// Sum over pixels of the per-pixel Euclidean norm (the l2,1 group norm).
template <int K>
double group_l21_norm(const Field<K>& v) {
  double s = 0.0;
  for (int i = 0; i < v.rows(); ++i)
    for (int j = 0; j < v.cols(); ++j) s += pixel_norm(v, i, j);
  return s;
}

inline double mean(const Image& a) {
  double s = 0.0;
  for (double v : a.data()) s += v;
  return s / static_cast<double>(a.size());
}

inline double max_abs(const Image& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

template <int K>
double max_abs(const Field<K>& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace tv4
