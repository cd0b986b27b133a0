#include "tv4/interp_ops.hpp"

#include <stdexcept>

#include "tv4/diff_ops.hpp"
#include "tv4/power_method.hpp"

namespace tv4 {

namespace {

// One read of a same-channel neighbour: output(i,j) += w * u(i+di, j+dj).
struct Tap {
  int di, dj;
  double w;
};

using Stencil = std::vector<Tap>;

// Per-star, per-channel averaging stencils. Forward applies them as gathers
// with zero extension; adjoints scatter through the same taps, which makes
// the transpose exact by construction.
//
// Channels 1 and 2 are identical in both families. In the symmetric family
// the diagonal channels gather, per output location, the nearest samples:
// channel 3 of pixel (i,j) sits on corner (i+1/2, j+1/2) and channel 4 on
// corner (i-1/2, j+1/2), so e.g. the center operator averages both channels
// over the four corners of the pixel.
const std::array<Stencil, 4>& stencils(Star star, StencilFamily family) {
  static const std::array<Stencil, 4> updown = {{
      {{0, 0, 1.0}},
      {{0, 0, 0.25}, {0, -1, 0.25}, {1, 0, 0.25}, {1, -1, 0.25}},
      {{0, 0, 0.5}, {0, -1, 0.5}},
      {{1, 0, 0.5}, {1, -1, 0.5}},
  }};
  static const std::array<Stencil, 4> leftright = {{
      {{0, 0, 0.25}, {-1, 0, 0.25}, {0, 1, 0.25}, {-1, 1, 0.25}},
      {{0, 0, 1.0}},
      {{0, 0, 0.5}, {-1, 0, 0.5}},
      {{0, 0, 0.5}, {1, 0, 0.5}},
  }};
  static const std::array<Stencil, 4> center = {{
      {{0, 0, 0.5}, {-1, 0, 0.5}},
      {{0, 0, 0.5}, {0, -1, 0.5}},
      {{0, 0, 0.25}, {0, -1, 0.25}, {-1, 0, 0.25}, {-1, -1, 0.25}},
      {{0, 0, 0.25}, {0, -1, 0.25}, {1, 0, 0.25}, {1, -1, 0.25}},
  }};
  static const std::array<Stencil, 4> plus = {{
      {{0, 0, 0.5}, {0, 1, 0.5}},
      {{0, 0, 0.5}, {1, 0, 0.5}},
      {{0, 0, 1.0}},
      {{1, 0, 1.0}},
  }};
  static const std::array<Stencil, 4> updown_asym = {{
      {{0, 0, 1.0}},
      {{0, 0, 0.25}, {0, -1, 0.25}, {1, 0, 0.25}, {1, -1, 0.25}},
      {{0, 0, 0.5}, {-1, 0, 0.5}},
      {{0, 0, 0.5}, {0, 1, 0.5}},
  }};
  static const std::array<Stencil, 4> leftright_asym = {{
      {{0, 0, 0.25}, {-1, 0, 0.25}, {0, 1, 0.25}, {-1, 1, 0.25}},
      {{0, 0, 1.0}},
      {{0, 0, 0.5}, {0, -1, 0.5}},
      {{0, 1, 0.5}, {-1, 1, 0.5}},
  }};
  static const std::array<Stencil, 4> center_asym = {{
      {{0, 0, 0.5}, {-1, 0, 0.5}},
      {{0, 0, 0.5}, {0, -1, 0.5}},
      {{0, 0, 0.25}, {0, -1, 0.25}, {-1, 0, 0.25}, {-1, -1, 0.25}},
      {{0, 0, 0.25}, {-1, 0, 0.25}, {0, 1, 0.25}, {-1, 1, 0.25}},
  }};
  static const std::array<Stencil, 4> plus_asym = {{
      {{0, 0, 0.5}, {0, 1, 0.5}},
      {{0, 0, 0.5}, {1, 0, 0.5}},
      {{0, 0, 1.0}},
      {{0, 1, 1.0}},
  }};
  const bool sym = family == StencilFamily::symmetric;
  switch (star) {
    case Star::updown: return sym ? updown : updown_asym;
    case Star::leftright: return sym ? leftright : leftright_asym;
    case Star::center: return sym ? center : center_asym;
    case Star::plus: return sym ? plus : plus_asym;
  }
  throw std::invalid_argument("unknown star");
}

template <int K>
Field<K> apply_stencils(const Field<K>& u, const std::array<Stencil, 4>& tbl) {
  const int n1 = u.rows(), n2 = u.cols();
  Field<K> out(n1, n2);
  for (int k = 0; k < K; ++k) {
    const Stencil& st = tbl[k];
    for (int i = 0; i < n1; ++i) {
      for (int j = 0; j < n2; ++j) {
        double acc = 0.0;
        for (const Tap& t : st) {
          const int a = i + t.di, b = j + t.dj;
          if (a >= 0 && a < n1 && b >= 0 && b < n2) acc += t.w * u.at(a, b, k);
        }
        out.at(i, j, k) = acc;
      }
    }
  }
  return out;
}

template <int K>
Field<K> apply_stencils_adjoint(const Field<K>& v, const std::array<Stencil, 4>& tbl) {
  const int n1 = v.rows(), n2 = v.cols();
  Field<K> out(n1, n2);
  for (int k = 0; k < K; ++k) {
    const Stencil& st = tbl[k];
    for (int i = 0; i < n1; ++i) {
      for (int j = 0; j < n2; ++j) {
        const double val = v.at(i, j, k);
        if (val == 0.0) continue;
        for (const Tap& t : st) {
          const int a = i + t.di, b = j + t.dj;
          if (a >= 0 && a < n1 && b >= 0 && b < n2) out.at(a, b, k) += t.w * val;
        }
      }
    }
  }
  return out;
}

}  // namespace

const char* star_name(Star s) {
  switch (s) {
    case Star::updown: return "updown";
    case Star::leftright: return "leftright";
    case Star::center: return "center";
    case Star::plus: return "plus";
  }
  return "?";
}

Field4 interp(Star star, const Field4& u, InterpOptions opt) {
  return apply_stencils(u, stencils(star, opt.family));
}

Field4 interp_adjoint(Star star, const Field4& v, InterpOptions opt) {
  return apply_stencils_adjoint(v, stencils(star, opt.family));
}

Field2 interp_condat(Star star, const Field2& u) {
  if (star == Star::plus) throw std::invalid_argument("no 2-channel corner operator");
  return apply_stencils(u, stencils(star, StencilFamily::symmetric));
}

Field2 interp_condat_adjoint(Star star, const Field2& v) {
  if (star == Star::plus) throw std::invalid_argument("no 2-channel corner operator");
  return apply_stencils_adjoint(v, stencils(star, StencilFamily::symmetric));
}

BigLValue big_l(const Field4& u, const Image& s, InterpOptions opt) {
  detail::require_same_dims(u.rows(), u.cols(), s.rows(), s.cols(), "big_l");
  BigLValue out;
  for (std::size_t q = 0; q < kAllStars.size(); ++q) out.star[q] = interp(kAllStars[q], u, opt);
  out.alpha = diff4_adjoint(u);
  for (std::size_t p = 0; p < out.alpha.size(); ++p) out.alpha.data()[p] -= s.data()[p];
  return out;
}

std::pair<Field4, Image> big_l_adjoint(const BigLValue& v, InterpOptions opt) {
  Field4 ustar = interp_adjoint(kAllStars[0], v.star[0], opt);
  for (std::size_t q = 1; q < kAllStars.size(); ++q) {
    const Field4 part = interp_adjoint(kAllStars[q], v.star[q], opt);
    for (std::size_t p = 0; p < ustar.size(); ++p) ustar.data()[p] += part.data()[p];
  }
  const Field4 dalpha = diff4(v.alpha);
  for (std::size_t p = 0; p < ustar.size(); ++p) ustar.data()[p] += dalpha.data()[p];
  Image sstar(v.alpha.rows(), v.alpha.cols());
  for (std::size_t p = 0; p < sstar.size(); ++p) sstar.data()[p] = -v.alpha.data()[p];
  return {std::move(ustar), std::move(sstar)};
}

double big_l_norm_estimate(int rows, int cols, InterpOptions opt) {
  return operator_norm_estimate(make_big_l_op(rows, cols, opt));
}

}  // namespace tv4
