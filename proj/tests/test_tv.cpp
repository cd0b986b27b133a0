#include <doctest.h>

#include "oracles.hpp"
#include "tv4/diff_ops.hpp"
#include "tv4/tv.hpp"

using namespace tv4;

namespace {
const Image kQuad(2, 2, {1, 2, 3, 4});
}

TEST_CASE("closed-form TV values on the 2x2 fixture") {
  CHECK(tv_iso(kQuad) == doctest::Approx(std::sqrt(5.0) + 3.0).epsilon(1e-14));
  CHECK(tv_aniso(kQuad) == doctest::Approx(6.0).epsilon(1e-14));
  CHECK(tv_upwind(kQuad) == doctest::Approx(3.0 + std::sqrt(5.0)).epsilon(1e-14));
  CHECK(tv_prn(kQuad) ==
        doctest::Approx(std::sqrt(14.0) + 2.0 + std::sqrt(2.0)).epsilon(1e-14));
}

TEST_CASE("every model vanishes on constant images") {
  Image c(6, 6);
  std::fill(c.data().begin(), c.data().end(), 0.7);
  CHECK(tv_iso(c) == 0.0);
  CHECK(tv_aniso(c) == 0.0);
  CHECK(tv_upwind(c) == 0.0);
  CHECK(tv_prn(c) == 0.0);
  CHECK(std::abs(tv_dual_eval(DualTv::condat, c).value) <= 1e-10);
  CHECK(std::abs(tv_dual_eval(DualTv::refined, c).value) <= 1e-10);
}

TEST_CASE("homogeneity and translation invariance of the closed forms") {
  const Image x = oracles::random_image(7, 7, 120);
  const double iso = tv_iso(x), aniso = tv_aniso(x), prn = tv_prn(x);
  Image scaled(7, 7), shifted(7, 7);
  for (std::size_t p = 0; p < x.size(); ++p) {
    scaled.data()[p] = -2.0 * x.data()[p];
    shifted.data()[p] = x.data()[p] + 0.37;
  }
  CHECK(tv_iso(scaled) == doctest::Approx(2.0 * iso).epsilon(1e-12));
  CHECK(tv_aniso(scaled) == doctest::Approx(2.0 * aniso).epsilon(1e-12));
  CHECK(tv_prn(scaled) == doctest::Approx(2.0 * prn).epsilon(1e-12));
  CHECK(tv_iso(shifted) == doctest::Approx(iso).epsilon(1e-12));
  CHECK(tv_aniso(shifted) == doctest::Approx(aniso).epsilon(1e-12));
  CHECK(tv_prn(shifted) == doctest::Approx(prn).epsilon(1e-12));
  CHECK(tv_upwind(shifted) == doctest::Approx(tv_upwind(x)).epsilon(1e-12));
}

TEST_CASE("upwind is one-sided: only nonnegativity survives negation") {
  Image neg(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) neg(i, j) = -kQuad(i, j);
  CHECK(tv_upwind(neg) >= 0.0);

  // a lone bright pixel and a lone dark pixel are weighted differently
  const Image spike(2, 2, {0, 0, 0, 1});
  Image dip(2, 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) dip(i, j) = -spike(i, j);
  CHECK(tv_upwind(spike) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  CHECK(tv_upwind(dip) == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("pointwise orderings between the closed forms") {
  for (int t = 0; t < 20; ++t) {
    const Image x = oracles::random_image(12, 12, 130 + t);
    CHECK(tv_aniso(x) >= tv_iso(x));
    CHECK(tv_prn(x) >= tv_iso(x));
  }
}

TEST_CASE("dual evaluation stays above the four-direction closed form") {
  for (int t = 0; t < 10; ++t) {
    const Image x = oracles::random_image(8, 8, 140 + t);
    const double prn = tv_prn(x);
    const DualTvResult r = tv_dual_eval(DualTv::refined, x, 1e-6, 4000);
    CHECK(r.value >= prn * (1.0 - 1e-4));
  }
}

TEST_CASE("dual evaluation is approximately homogeneous") {
  const Image x = oracles::random_image(8, 8, 150);
  Image sx(8, 8);
  for (std::size_t p = 0; p < x.size(); ++p) sx.data()[p] = -1.75 * x.data()[p];
  for (DualTv m : {DualTv::condat, DualTv::refined}) {
    const double a = tv_dual_eval(m, x, 1e-7, 6000).value;
    const double b = tv_dual_eval(m, sx, 1e-7, 6000).value;
    CHECK(b == doctest::Approx(1.75 * a).epsilon(2e-3));
  }
}

TEST_CASE("dual evaluation agrees with the dense ADMM oracle on 4x4 images") {
  const int n = 4;
  std::vector<oracles::DenseMatrix> ms2, ms4;
  for (Star s : kCondatStars)
    ms2.push_back(oracles::densify<2>(n, n, [&](const Field2& u) {
      return oracles::ref_interp_condat(s, u);
    }));
  for (Star s : kAllStars)
    ms4.push_back(oracles::densify<4>(n, n, [&](const Field4& u) {
      return oracles::ref_interp(s, u);
    }));

  for (int t = 0; t < 3; ++t) {
    const Image x = oracles::random_image(n, n, 160 + t);

    const std::vector<double> b2 = diff2(x).data();
    const double oracle2 = oracles::admm_dual_tv<2>(ms2, b2, n, n, 8000);
    const double mine2 = tv_dual_eval(DualTv::condat, x, 1e-8, 20000).value;
    CHECK(mine2 == doctest::Approx(oracle2).epsilon(1e-4));

    const std::vector<double> b4 = diff4(x).data();
    const double oracle4 = oracles::admm_dual_tv<4>(ms4, b4, n, n, 8000);
    const double mine4 = tv_dual_eval(DualTv::refined, x, 1e-8, 20000).value;
    CHECK(mine4 == doctest::Approx(oracle4).epsilon(1e-4));
  }
}

TEST_CASE("dual evaluation reports a feasible value even when capped") {
  const Image x = oracles::random_image(8, 8, 170);
  const DualTvResult r = tv_dual_eval(DualTv::refined, x, 1e-12, 30);
  CHECK_FALSE(r.converged);
  CHECK(r.value > 0.0);
  CHECK(r.value <= tv_dual_eval(DualTv::refined, x, 1e-8, 8000).value * (1 + 1e-6));
}

TEST_CASE("invalid tolerance is rejected") {
  CHECK_THROWS_AS(tv_dual_eval(DualTv::condat, kQuad, 0.0, 10), std::invalid_argument);
}
