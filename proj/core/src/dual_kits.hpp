#pragma once

// Internal traits bundling the pieces each dual-constrained TV model needs:
// the difference operator feeding the objective and the family of averaging
// operators that define the constraint set. Shared by the dual TV evaluator
// and the constrained solver.

#include <array>

#include "tv4/diff_ops.hpp"
#include "tv4/grid.hpp"
#include "tv4/interp_ops.hpp"

namespace tv4 {

struct CondatKit {
  static constexpr int channels = 2;
  static constexpr int num_stars = 3;
  using FieldT = Field2;

  static Star star(int q) { return kCondatStars[q]; }
  static FieldT diff(const Image& x) { return diff2(x); }
  static Image diff_adjoint(const FieldT& u) { return diff2_adjoint(u); }
  static FieldT interp_star(int q, const FieldT& u) { return interp_condat(star(q), u); }
  static FieldT interp_star_adjoint(int q, const FieldT& v) {
    return interp_condat_adjoint(star(q), v);
  }
};

struct RefinedKit {
  static constexpr int channels = 4;
  static constexpr int num_stars = 4;
  using FieldT = Field4;

  static Star star(int q) { return kAllStars[q]; }
  static FieldT diff(const Image& x) { return diff4(x); }
  static Image diff_adjoint(const FieldT& u) { return diff4_adjoint(u); }
  static FieldT interp_star(int q, const FieldT& u) { return interp(star(q), u); }
  static FieldT interp_star_adjoint(int q, const FieldT& v) { return interp_adjoint(star(q), v); }
};

}  // namespace tv4
