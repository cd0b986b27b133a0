#pragma once

#include <cstdint>
#include <string>

#include "tv4/grid.hpp"

namespace tv4 {

/// Reads an 8-bit grayscale PGM (P2/P5) or PNG into [0,1] by value/255.
/// Color or 16-bit inputs are rejected.
Image read_image(const std::string& path);

/// Clamps to [0,1], quantizes by round(v*255) and writes P5 or PNG depending
/// on the extension (.pgm/.png). Files are written atomically (temp+rename).
void write_image(const Image& x, const std::string& path);

enum class Fixture { rhombus, stripes, checker, piecewise };

Fixture fixture_from_name(const std::string& name);

/// Deterministic synthetic test images of size n x n. The rhombus is a
/// filled 45-degree-rotated white square on black with exact flip symmetry.
Image synth_fixture(Fixture kind, int n, std::uint64_t seed = 0);

/// Adds i.i.d. N(0, sigma^2) per pixel (Box-Muller over a seeded mt19937_64,
/// reproducible across platforms). The result is NOT clamped to [0,1].
Image add_gaussian_noise(const Image& x, double sigma, std::uint64_t seed);

}  // namespace tv4
