#include "tv4/selfcheck.hpp"

#include <cmath>
#include <iomanip>
#include <ostream>

#include "tv4/diff_ops.hpp"
#include "tv4/power_method.hpp"
#include "tv4/prox.hpp"
#include "tv4/reference_formulas.hpp"

namespace tv4 {

namespace {

constexpr double kAdjointTol = 1e-10;
constexpr double kIdentityTol = 1e-12;

template <int K>
Field<K> random_field(int rows, int cols, std::uint64_t seed) {
  Field<K> f(rows, cols);
  f.data() = random_vector(static_cast<int>(f.size()), seed);
  return f;
}

void add_adjoint_check(SelfCheckReport& rep, const std::string& name,
                       const LinearOperatorPair& op, std::uint64_t seed) {
  const double res = adjoint_mismatch(op, 20, seed);
  rep.adjoints.push_back({name, res, kAdjointTol, res <= kAdjointTol});
}

void add_identity(SelfCheckReport& rep, const std::string& name, double value,
                  double tol = kIdentityTol) {
  rep.identities.push_back({name, value, tol, value <= tol});
}

// Max |a - b| split into interior pixels and the one-pixel border.
struct SplitGap {
  double interior = 0.0;
  double boundary = 0.0;
};

SplitGap image_gap(const Image& a, const Image& b) {
  SplitGap g;
  const int n1 = a.rows(), n2 = a.cols();
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      const double d = std::abs(a(i, j) - b(i, j));
      const bool border = i == 0 || j == 0 || i == n1 - 1 || j == n2 - 1;
      (border ? g.boundary : g.interior) = std::max(border ? g.boundary : g.interior, d);
    }
  return g;
}

SplitGap channel_gap(const Field4& a, const Field4& b, int k) {
  SplitGap g;
  const int n1 = a.rows(), n2 = a.cols();
  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      const double d = std::abs(a.at(i, j, k) - b.at(i, j, k));
      const bool border = i == 0 || j == 0 || i == n1 - 1 || j == n2 - 1;
      (border ? g.boundary : g.interior) = std::max(border ? g.boundary : g.interior, d);
    }
  return g;
}

void add_gap(SelfCheckReport& rep, const std::string& op, const SplitGap& g) {
  // below 1e-12 is accumulated rounding, not a formula difference
  if (g.interior > 1e-12) rep.closed_form_gaps.push_back({op, "interior", g.interior});
  if (g.boundary > 1e-12) rep.closed_form_gaps.push_back({op, "boundary", g.boundary});
}

}  // namespace

SelfCheckReport run_selfcheck(std::uint64_t seed) {
  SelfCheckReport rep;

  const std::pair<int, int> grids[] = {{2, 2}, {2, 3}, {3, 3},   {4, 5},
                                       {8, 8}, {16, 16}, {33, 17}, {64, 64}};
  std::uint64_t s = seed;
  for (const auto& [r, c] : grids) {
    const std::string dim = std::to_string(r) + "x" + std::to_string(c);
    add_adjoint_check(rep, "diff2 " + dim, make_diff2_op(r, c), ++s);
    add_adjoint_check(rep, "diff4 " + dim, make_diff4_op(r, c), ++s);
    add_adjoint_check(rep, "upwind " + dim, make_upwind_diff_op(r, c), ++s);
    for (Star star : kAllStars)
      add_adjoint_check(rep, std::string("interp ") + star_name(star) + " " + dim,
                        make_interp_op(star, r, c), ++s);
    for (Star star : kAllStars)
      add_adjoint_check(rep, std::string("interp(asym) ") + star_name(star) + " " + dim,
                        make_interp_op(star, r, c, InterpOptions{StencilFamily::asymmetric}), ++s);
    for (Star star : kCondatStars)
      add_adjoint_check(rep, std::string("interp2 ") + star_name(star) + " " + dim,
                        make_interp_condat_op(star, r, c), ++s);
    add_adjoint_check(rep, "big_l " + dim, make_big_l_op(r, c), ++s);
    if (r % 2 == 0 && c % 2 == 0 && r >= 4 && c >= 4)
      add_adjoint_check(rep, "downscale m=2 " + dim, make_downscale_op(2, r, c), ++s);
    if (r % 4 == 0 && c % 4 == 0 && r >= 8 && c >= 8)
      add_adjoint_check(rep, "downscale m=4 " + dim, make_downscale_op(4, r, c), ++s);
  }

  // Moreau identity: v = prox_{g||.||}(v) + g * project(v/g), per pixel.
  {
    double worst = 0.0;
    for (double gamma : {0.3, 1.0, 2.5}) {
      const Field4 v = random_field<4>(9, 7, ++s);
      const Field4 shrunk = group_soft_threshold(v, gamma);
      Field4 scaled = v;
      for (double& x : scaled.data()) x /= gamma;
      const Field4 proj = project_unit_ball(scaled);
      for (std::size_t p = 0; p < v.size(); ++p)
        worst = std::max(worst,
                         std::abs(v.data()[p] - (shrunk.data()[p] + gamma * proj.data()[p])));
    }
    add_identity(rep, "moreau group norm", worst);
  }

  // Projection idempotence.
  {
    const Field4 v = random_field<4>(9, 7, ++s);
    const Field4 p1 = project_unit_ball(v);
    const Field4 p2 = project_unit_ball(p1);
    double worst = 0.0;
    for (std::size_t p = 0; p < v.size(); ++p)
      worst = std::max(worst, std::abs(p1.data()[p] - p2.data()[p]));
    add_identity(rep, "ball projection idempotent", worst);
  }

  // Downscale fiber projection feasibility: A(Px) = y.
  {
    const DownscaleOp A(4, 16, 16);
    Image x(16, 16), y(4, 4);
    x.data() = random_vector(static_cast<int>(x.size()), ++s);
    y.data() = random_vector(static_cast<int>(y.size()), ++s);
    const Image px = project_affine(A, y, x);
    const Image apx = downscale(A, px);
    double worst = 0.0;
    for (std::size_t p = 0; p < y.size(); ++p)
      worst = std::max(worst, std::abs(apx.data()[p] - y.data()[p]));
    add_identity(rep, "affine projection feasibility", worst);
  }

  // The two stencil families, channel by channel.
  {
    const Field4 u = random_field<4>(12, 11, ++s);
    for (Star star : kAllStars) {
      const Field4 sym = interp(star, u);
      const Field4 asym = interp(star, u, InterpOptions{StencilFamily::asymmetric});
      for (int k = 0; k < 4; ++k)
        add_gap(rep,
                std::string("interp ") + star_name(star) + " sym vs asym c" + std::to_string(k + 1),
                channel_gap(sym, asym, k));
    }
  }

  // Closed-form adjoints versus the stencil transposes.
  {
    const Field4 u = random_field<4>(12, 11, ++s);
    add_gap(rep, "diff4 adjoint closed form", image_gap(diff4_adjoint(u), diff4_adjoint_closed_form(u)));

    BigLValue v;
    for (Field4& f : v.star) f = random_field<4>(12, 11, ++s);
    v.alpha = Image(12, 11);
    v.alpha.data() = random_vector(12 * 11, ++s);
    const auto mech = big_l_adjoint(v);
    const auto closed = big_l_adjoint_closed_form(v);
    for (int k = 0; k < 4; ++k)
      add_gap(rep, "big_l adjoint closed form u" + std::to_string(k + 1),
              channel_gap(mech.first, closed.first, k));
    add_gap(rep, "big_l adjoint closed form s", image_gap(mech.second, closed.second));
  }

  rep.pass = true;
  for (const CheckLine& l : rep.adjoints) rep.pass = rep.pass && l.pass;
  for (const CheckLine& l : rep.identities) rep.pass = rep.pass && l.pass;
  return rep;
}

void print_selfcheck(const SelfCheckReport& rep, std::ostream& os) {
  os << "adjoint identities (relative defect, tol " << kAdjointTol << "):\n";
  for (const CheckLine& l : rep.adjoints) {
    os << "  " << std::left << std::setw(34) << l.name << std::scientific
       << std::setprecision(3) << l.value << (l.pass ? "  ok" : "  FAIL") << "\n";
  }
  os << "prox/projection identities (tol " << kIdentityTol << "):\n";
  for (const CheckLine& l : rep.identities) {
    os << "  " << std::left << std::setw(34) << l.name << std::scientific
       << std::setprecision(3) << l.value << (l.pass ? "  ok" : "  FAIL") << "\n";
  }
  os << "closed-form adjoints vs stencil transposes (documented differences):\n";
  if (rep.closed_form_gaps.empty()) {
    os << "  none\n";
  } else {
    for (const DiscrepancyLine& d : rep.closed_form_gaps) {
      os << "  " << std::left << std::setw(38) << d.op << std::setw(10) << d.where
         << std::scientific << std::setprecision(3) << d.max_abs << "\n";
    }
  }
  os << (rep.pass ? "selfcheck: PASS" : "selfcheck: FAIL") << "\n";
}

}  // namespace tv4
