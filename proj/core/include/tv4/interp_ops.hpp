#pragma once

#include <array>
#include <utility>

#include "tv4/grid.hpp"

namespace tv4 {

/// Locations an interpolated dual sample can live at: edge midpoints
/// (updown, leftright), pixel centers (center) and pixel corners (plus).
enum class Star { updown, leftright, center, plus };

inline constexpr std::array<Star, 4> kAllStars = {Star::updown, Star::leftright, Star::center,
                                                  Star::plus};
inline constexpr std::array<Star, 3> kCondatStars = {Star::updown, Star::leftright, Star::center};

const char* star_name(Star s);

/// Stencil family for the diagonal channels (3 and 4).
///
/// `symmetric` averages, for each output location, the nearest same-channel
/// samples under the natural sample placement (channel 3 along (+1,+1) lives
/// on the lower-right corner of its pixel, channel 4 along (-1,+1) on the
/// upper-right corner). The two diagonal families are treated as exact
/// mirror images; this is the default everywhere.
///
/// `asymmetric` is an alternative transcription of the diagonal channels
/// that breaks that mirror symmetry (it reads some samples from a
/// neighbouring row or column instead of the nearest ones). It is kept
/// behind this switch for comparison; the selfcheck report quantifies how
/// the two families differ.
enum class StencilFamily { symmetric, asymmetric };

struct InterpOptions {
  StencilFamily family = StencilFamily::symmetric;
};

/// The four averaging operators on 4-channel dual fields. Out-of-range
/// samples count as 0, so boundary-adjacent averages have total weight < 1.
Field4 interp(Star star, const Field4& u, InterpOptions opt = {});
/// Mechanical transpose of interp(star, .).
Field4 interp_adjoint(Star star, const Field4& v, InterpOptions opt = {});

/// The three 2-channel averaging operators (star must not be Star::plus).
Field2 interp_condat(Star star, const Field2& u);
Field2 interp_condat_adjoint(Star star, const Field2& v);

/// Value of the stacked operator (u, s) -> (L... u per star, diff4_adjoint(u) - s).
struct BigLValue {
  std::array<Field4, 4> star;
  Image alpha;
};

BigLValue big_l(const Field4& u, const Image& s, InterpOptions opt = {});
std::pair<Field4, Image> big_l_adjoint(const BigLValue& v, InterpOptions opt = {});

/// Power-method estimate of the stacked operator norm; deterministic for a
/// fixed seed.
double big_l_norm_estimate(int rows, int cols, InterpOptions opt = {});

}  // namespace tv4
