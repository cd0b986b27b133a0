#include "tv4/diff_ops.hpp"

namespace tv4 {

Field2 diff2(const Image& x) {
  const int n1 = x.rows(), n2 = x.cols();
  Field2 out(n1, n2);
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      if (i + 1 < n1) out.at(i, j, 0) = x(i + 1, j) - x(i, j);
      if (j + 1 < n2) out.at(i, j, 1) = x(i, j + 1) - x(i, j);
    }
  }
  return out;
}

Image diff2_adjoint(const Field2& u) {
  const int n1 = u.rows(), n2 = u.cols();
  Image out(n1, n2);
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      if (i + 1 < n1) {
        const double v = u.at(i, j, 0);
        out(i + 1, j) += v;
        out(i, j) -= v;
      }
      if (j + 1 < n2) {
        const double v = u.at(i, j, 1);
        out(i, j + 1) += v;
        out(i, j) -= v;
      }
    }
  }
  return out;
}

Field4 diff4(const Image& x) {
  const int n1 = x.rows(), n2 = x.cols();
  Field4 out(n1, n2);
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      if (i + 1 < n1) out.at(i, j, 0) = x(i + 1, j) - x(i, j);
      if (j + 1 < n2) out.at(i, j, 1) = x(i, j + 1) - x(i, j);
      if (i + 1 < n1 && j + 1 < n2) out.at(i, j, 2) = x(i + 1, j + 1) - x(i, j);
      if (i - 1 >= 0 && j + 1 < n2) out.at(i, j, 3) = x(i - 1, j + 1) - x(i, j);
    }
  }
  return out;
}

Image diff4_adjoint(const Field4& u) {
  const int n1 = u.rows(), n2 = u.cols();
  Image out(n1, n2);
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      if (i + 1 < n1) {
        const double v = u.at(i, j, 0);
        out(i + 1, j) += v;
        out(i, j) -= v;
      }
      if (j + 1 < n2) {
        const double v = u.at(i, j, 1);
        out(i, j + 1) += v;
        out(i, j) -= v;
      }
      if (i + 1 < n1 && j + 1 < n2) {
        const double v = u.at(i, j, 2);
        out(i + 1, j + 1) += v;
        out(i, j) -= v;
      }
      if (i - 1 >= 0 && j + 1 < n2) {
        const double v = u.at(i, j, 3);
        out(i - 1, j + 1) += v;
        out(i, j) -= v;
      }
    }
  }
  return out;
}

Field4 upwind_diff(const Image& x) {
  const int n1 = x.rows(), n2 = x.cols();
  Field4 out(n1, n2);
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      const double c = x(i, j);
      if (i + 1 < n1) out.at(i, j, 0) = c - x(i + 1, j);
      if (i - 1 >= 0) out.at(i, j, 1) = c - x(i - 1, j);
      if (j + 1 < n2) out.at(i, j, 2) = c - x(i, j + 1);
      if (j - 1 >= 0) out.at(i, j, 3) = c - x(i, j - 1);
    }
  }
  return out;
}

Image upwind_diff_adjoint(const Field4& w) {
  const int n1 = w.rows(), n2 = w.cols();
  Image out(n1, n2);
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) {
      if (i + 1 < n1) {
        const double v = w.at(i, j, 0);
        out(i, j) += v;
        out(i + 1, j) -= v;
      }
      if (i - 1 >= 0) {
        const double v = w.at(i, j, 1);
        out(i, j) += v;
        out(i - 1, j) -= v;
      }
      if (j + 1 < n2) {
        const double v = w.at(i, j, 2);
        out(i, j) += v;
        out(i, j + 1) -= v;
      }
      if (j - 1 >= 0) {
        const double v = w.at(i, j, 3);
        out(i, j) += v;
        out(i, j - 1) -= v;
      }
    }
  }
  return out;
}

Field4 upwind_clamped(const Image& x) {
  Field4 out = upwind_diff(x);
  for (double& v : out.data()) v = std::max(v, 0.0);
  return out;
}

}  // namespace tv4
