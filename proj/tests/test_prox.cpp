#include <doctest.h>

#include "oracles.hpp"
#include "tv4/power_method.hpp"
#include "tv4/prox.hpp"

using namespace tv4;

TEST_CASE("quadratic prox") {
  const Image y = oracles::random_image(4, 4, 90);
  SUBCASE("fixed point at x = y") {
    for (double tau : {0.1, 1.0, 50.0}) {
      const Image z = prox_quadratic(y, y, tau);
      for (std::size_t p = 0; p < y.size(); ++p)
        CHECK(z.data()[p] == doctest::Approx(y.data()[p]).epsilon(1e-14));
    }
  }
  SUBCASE("tiny tau returns x") {
    const Image x = oracles::random_image(4, 4, 91);
    const Image z = prox_quadratic(y, x, 1e-12);
    double dev = 0.0;
    for (std::size_t p = 0; p < x.size(); ++p)
      dev = std::max(dev, std::abs(z.data()[p] - x.data()[p]));
    CHECK(dev <= 1e-9);
  }
  SUBCASE("midpoint example") {
    Image x(3, 3), ones(3, 3);
    std::fill(ones.data().begin(), ones.data().end(), 1.0);
    const Image z = prox_quadratic(ones, x, 1.0);
    for (double v : z.data()) CHECK(v == 0.5);
  }
  SUBCASE("nonpositive tau rejected") {
    CHECK_THROWS_AS(prox_quadratic(y, y, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(prox_quadratic(y, y, -1.0), std::invalid_argument);
  }
}

TEST_CASE("group soft threshold") {
  SUBCASE("kill zone") {
    const Field4 v = oracles::random_field<4>(5, 5, 92, -0.3, 0.3);
    CHECK(max_abs(group_soft_threshold(v, 10.0)) == 0.0);
  }
  SUBCASE("3-4-5 pixel at gamma 2.5") {
    Field4 v(2, 2);
    v.at(1, 1, 0) = 3.0;
    v.at(1, 1, 1) = 4.0;
    const Field4 z = group_soft_threshold(v, 2.5);
    CHECK(z.at(1, 1, 0) == doctest::Approx(1.5).epsilon(1e-14));
    CHECK(z.at(1, 1, 1) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(z.at(1, 1, 2) == 0.0);

    // probe-based optimality of the prox objective 0.5|z-v|^2 + gamma |z|
    auto f = [](const std::vector<double>& z4) {
      const double v4[4] = {3, 4, 0, 0};
      double q = 0.0, n = 0.0;
      for (int k = 0; k < 4; ++k) {
        q += (z4[k] - v4[k]) * (z4[k] - v4[k]);
        n += z4[k] * z4[k];
      }
      return 0.5 * q + 2.5 * std::sqrt(n);
    };
    auto g = oracles::rng(93);
    const std::vector<double> cand = {1.5, 2.0, 0.0, 0.0};
    auto probe = [&](int t) {
      std::vector<double> p(4);
      const double scale = (t % 4 == 0) ? 1e-4 : (t % 4 == 1 ? 1e-2 : (t % 4 == 2 ? 0.3 : 4.0));
      for (int k = 0; k < 4; ++k)
        p[k] = cand[k] + scale * (2.0 * oracles::uniform01(g) - 1.0);
      return p;
    };
    CHECK(oracles::probe_optimality(f, cand, probe, 50000) <= 1e-12);
  }
  SUBCASE("gamma 0 is the identity, negative gamma rejected") {
    const Field4 v = oracles::random_field<4>(4, 4, 94);
    const Field4 z = group_soft_threshold(v, 0.0);
    for (std::size_t p = 0; p < v.size(); ++p) CHECK(z.data()[p] == v.data()[p]);
    CHECK_THROWS_AS(group_soft_threshold(v, -0.1), std::invalid_argument);
  }
}

TEST_CASE("unit ball projection") {
  Field4 v(2, 2);
  v.at(0, 0, 0) = 3.0;
  v.at(0, 0, 1) = 4.0;
  const Field4 z = project_unit_ball(v);
  CHECK(z.at(0, 0, 0) == doctest::Approx(0.6).epsilon(1e-14));
  CHECK(z.at(0, 0, 1) == doctest::Approx(0.8).epsilon(1e-14));

  const Field4 feas = oracles::random_unit_ball_field<4>(5, 5, 95);
  const Field4 same = project_unit_ball(feas);
  for (std::size_t p = 0; p < feas.size(); ++p) CHECK(same.data()[p] == feas.data()[p]);

  const Field4 big = oracles::random_field<4>(5, 5, 96, -4.0, 4.0);
  const Field4 once = project_unit_ball(big);
  const Field4 twice = project_unit_ball(once);
  for (std::size_t p = 0; p < big.size(); ++p)
    CHECK(twice.data()[p] == doctest::Approx(once.data()[p]).epsilon(1e-15));
}

TEST_CASE("nonnegative ball projection is exact clamp-then-scale") {
  auto g = oracles::rng(97);
  for (int trial = 0; trial < 200; ++trial) {
    Field4 v(2, 2);
    for (int k = 0; k < 4; ++k) v.at(0, 0, k) = 6.0 * oracles::uniform01(g) - 3.0;
    const Field4 z = project_ball_nonneg(v, 1.0);
    // candidate must be feasible and beat feasible probes in distance to v
    double n2 = 0.0;
    for (int k = 0; k < 4; ++k) {
      CHECK(z.at(0, 0, k) >= 0.0);
      n2 += z.at(0, 0, k) * z.at(0, 0, k);
    }
    CHECK(n2 <= 1.0 + 1e-12);
    double dz = 0.0;
    for (int k = 0; k < 4; ++k)
      dz += (z.at(0, 0, k) - v.at(0, 0, k)) * (z.at(0, 0, k) - v.at(0, 0, k));
    for (int t = 0; t < 200; ++t) {
      double p[4], pn2 = 0.0;
      for (double& x : p) {
        x = oracles::uniform01(g);
        pn2 += x * x;
      }
      if (pn2 > 1.0)
        for (double& x : p) x /= std::sqrt(pn2);
      double dp = 0.0;
      for (int k = 0; k < 4; ++k) dp += (p[k] - v.at(0, 0, k)) * (p[k] - v.at(0, 0, k));
      CHECK(dz <= dp + 1e-12);
    }
  }
}

TEST_CASE("moreau identity couples shrinkage and projection") {
  for (double gamma : {0.25, 1.0, 3.0}) {
    const Field4 v = oracles::random_field<4>(6, 6, 98, -2.0, 2.0);
    const Field4 shrunk = group_soft_threshold(v, gamma);
    Field4 scaled = v;
    for (double& x : scaled.data()) x /= gamma;
    const Field4 proj = project_unit_ball(scaled);
    for (std::size_t p = 0; p < v.size(); ++p)
      CHECK(v.data()[p] ==
            doctest::Approx(shrunk.data()[p] + gamma * proj.data()[p]).epsilon(1e-12));
  }
}

TEST_CASE("prox maps are nonexpansive") {
  const Field4 a = oracles::random_field<4>(6, 6, 99, -2, 2);
  const Field4 b = oracles::random_field<4>(6, 6, 100, -2, 2);
  Field4 diff(6, 6);
  for (std::size_t p = 0; p < a.size(); ++p) diff.data()[p] = a.data()[p] - b.data()[p];
  const double dab = norm_fro(diff);

  auto gap = [&](const Field4& x, const Field4& y) {
    Field4 d(6, 6);
    for (std::size_t p = 0; p < x.size(); ++p) d.data()[p] = x.data()[p] - y.data()[p];
    return norm_fro(d);
  };
  CHECK(gap(group_soft_threshold(a, 0.7), group_soft_threshold(b, 0.7)) <= dab * (1 + 1e-12));
  CHECK(gap(project_unit_ball(a), project_unit_ball(b)) <= dab * (1 + 1e-12));

  const Image ya = oracles::random_image(6, 6, 101);
  const Image xa = oracles::random_image(6, 6, 102);
  const Image xb = oracles::random_image(6, 6, 103);
  const Image pa = prox_quadratic(ya, xa, 0.8);
  const Image pb = prox_quadratic(ya, xb, 0.8);
  double num = 0.0, den = 0.0;
  for (std::size_t p = 0; p < xa.size(); ++p) {
    num += (pa.data()[p] - pb.data()[p]) * (pa.data()[p] - pb.data()[p]);
    den += (xa.data()[p] - xb.data()[p]) * (xa.data()[p] - xb.data()[p]);
  }
  CHECK(std::sqrt(num) <= std::sqrt(den) * (1 + 1e-12));
}

TEST_CASE("downscale operator") {
  SUBCASE("constructor validation") {
    CHECK_THROWS_AS(DownscaleOp(1, 8, 8), std::invalid_argument);
    CHECK_THROWS_AS(DownscaleOp(3, 8, 8), std::invalid_argument);
    CHECK_NOTHROW(DownscaleOp(4, 92, 92));
  }
  SUBCASE("output below the 2x2 floor is rejected") {
    CHECK_THROWS_AS(DownscaleOp(4, 4, 4), std::invalid_argument);
  }
  SUBCASE("1..16 block averages to 8.5") {
    const DownscaleOp A(4, 8, 8);
    Image x(8, 8);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) x(i, j) = i * 4 + j + 1;  // top-left block = 1..16
    const Image y = downscale(A, x);
    CHECK(y(0, 0) == doctest::Approx(8.5).epsilon(1e-14));
  }
  SUBCASE("constant in, constant out") {
    const DownscaleOp A(2, 6, 6);
    Image x(6, 6);
    std::fill(x.data().begin(), x.data().end(), 0.37);
    const Image y = downscale(A, x);
    for (double v : y.data()) CHECK(v == doctest::Approx(0.37).epsilon(1e-14));
  }
  SUBCASE("adjoint identity and A A* scaling") {
    CHECK(adjoint_mismatch(make_downscale_op(4, 12, 8), 10, 104) <= 1e-12);
    const DownscaleOp A(4, 12, 8);
    const Image y = oracles::random_image(3, 2, 105);
    const Image aay = downscale(A, downscale_adjoint(A, y));
    for (std::size_t p = 0; p < y.size(); ++p)
      CHECK(aay.data()[p] == doctest::Approx(y.data()[p] / 16.0).epsilon(1e-12));
  }
}

TEST_CASE("affine projection onto the downscale fiber") {
  const DownscaleOp A(4, 16, 16);
  const Image y = oracles::random_image(4, 4, 106);
  const Image x = oracles::random_image(16, 16, 107, -0.5, 1.5);
  const Image px = project_affine(A, y, x);

  SUBCASE("feasibility and idempotence") {
    const Image apx = downscale(A, px);
    for (std::size_t p = 0; p < y.size(); ++p)
      CHECK(apx.data()[p] == doctest::Approx(y.data()[p]).epsilon(1e-12));
    const Image ppx = project_affine(A, y, px);
    for (std::size_t p = 0; p < px.size(); ++p)
      CHECK(ppx.data()[p] == doctest::Approx(px.data()[p]).epsilon(1e-12));
  }

  SUBCASE("feasible points are fixed") {
    const Image xf = project_affine(A, y, oracles::random_image(16, 16, 108));
    const Image again = project_affine(A, y, xf);
    for (std::size_t p = 0; p < xf.size(); ++p)
      CHECK(again.data()[p] == doctest::Approx(xf.data()[p]).epsilon(1e-12));
  }

  SUBCASE("projection optimality against feasible points") {
    // z = m^2 A* y + (I - m^2 A* A) w is feasible for any w
    const Image w = oracles::random_image(16, 16, 109, -1.0, 1.0);
    Image z = downscale_adjoint(A, y);
    const Image aw = downscale_adjoint(A, downscale(A, w));
    for (std::size_t p = 0; p < z.size(); ++p)
      z.data()[p] = 16.0 * z.data()[p] + w.data()[p] - 16.0 * aw.data()[p];
    double ip = 0.0;
    for (std::size_t p = 0; p < z.size(); ++p)
      ip += (x.data()[p] - px.data()[p]) * (z.data()[p] - px.data()[p]);
    CHECK(ip <= 1e-10);
    CHECK(ip >= -1e-10);  // projection onto an affine set: residual is orthogonal
  }
}
