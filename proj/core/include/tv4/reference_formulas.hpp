#pragma once

#include "tv4/interp_ops.hpp"

namespace tv4 {

// Hand-derived closed-form adjoint expressions, transcribed term by term as
// they are conventionally written out for these stencils. They are kept only
// as a cross-check: the mechanical stencil transposes in diff_ops/interp_ops
// are authoritative, and the self-check reports every place where these
// closed forms disagree with them (they do, in known spots; see selfcheck).

/// Closed-form counterpart of diff4_adjoint. Out-of-range samples read as 0.
Image diff4_adjoint_closed_form(const Field4& u);

/// Closed-form counterpart of big_l_adjoint. Out-of-range samples read as 0.
std::pair<Field4, Image> big_l_adjoint_closed_form(const BigLValue& v);

}  // namespace tv4
