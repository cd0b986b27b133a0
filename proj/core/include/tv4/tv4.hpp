#pragma once

// Umbrella header for the tv4 library.

#include "tv4/diff_ops.hpp"
#include "tv4/grid.hpp"
#include "tv4/image_io.hpp"
#include "tv4/interp_ops.hpp"
#include "tv4/power_method.hpp"
#include "tv4/prox.hpp"
#include "tv4/reference_formulas.hpp"
#include "tv4/selfcheck.hpp"
#include "tv4/solver.hpp"
#include "tv4/tv.hpp"
