#pragma once

#include "tv4/grid.hpp"

namespace tv4 {

// Finite differences under Neumann boundary conditions: any difference that
// would reference a pixel outside the grid is exactly 0. Adjoints are the
// mechanical transposes of the zero-padded stencils, so <Kx,u> = <x,K*u>
// holds for arbitrary fields u, not only those with the structural zeros.

/// Forward differences: c1 down the rows, c2 along the columns.
Field2 diff2(const Image& x);
Image diff2_adjoint(const Field2& u);

/// Four-direction differences: c1, c2 as diff2; c3 along (+1,+1); c4 along (-1,+1).
Field4 diff4(const Image& x);
Image diff4_adjoint(const Field4& u);

/// The four one-sided clamped differences (x - neighbor)+ toward
/// down/up/right/left neighbors; missing neighbors contribute 0.
Field4 upwind_clamped(const Image& x);

/// Linear part of the upwind differences (no clamping); used by the solver,
/// where the clamp moves into the dual constraint set.
Field4 upwind_diff(const Image& x);
Image upwind_diff_adjoint(const Field4& w);

}  // namespace tv4
