#include "tv4/solver.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <thread>

#include "dual_kits.hpp"
#include "tv4/power_method.hpp"
#include "tv4/tv.hpp"

namespace tv4 {

const char* regularizer_name(Regularizer r) {
  switch (r) {
    case Regularizer::iso: return "iso";
    case Regularizer::aniso: return "aniso";
    case Regularizer::upwind: return "upwind";
    case Regularizer::prn: return "prn";
    case Regularizer::condat: return "condat";
    case Regularizer::refined: return "new";
  }
  return "?";
}

Regularizer regularizer_from_name(const std::string& name) {
  if (name == "iso") return Regularizer::iso;
  if (name == "aniso") return Regularizer::aniso;
  if (name == "upwind") return Regularizer::upwind;
  if (name == "prn") return Regularizer::prn;
  if (name == "condat") return Regularizer::condat;
  if (name == "new" || name == "refined") return Regularizer::refined;
  throw std::invalid_argument("unknown TV model: " + name);
}

bool is_constrained(Regularizer r) {
  return r == Regularizer::condat || r == Regularizer::refined;
}

namespace {

void validate(const ProblemSpec& spec) {
  if (spec.lambda < 0.0) throw std::invalid_argument("lambda must be >= 0");
  if (spec.is_upscale() && spec.lambda != 1.0)
    throw std::invalid_argument("upscaling uses the constraint formulation; lambda must be 1");
}

int grid_rows(const ProblemSpec& spec) {
  if (spec.is_upscale()) return std::get<UpscaleFidelity>(spec.fidelity).op.hi_rows();
  return std::get<DenoiseFidelity>(spec.fidelity).y.rows();
}

int grid_cols(const ProblemSpec& spec) {
  if (spec.is_upscale()) return std::get<UpscaleFidelity>(spec.fidelity).op.hi_cols();
  return std::get<DenoiseFidelity>(spec.fidelity).y.cols();
}

double fidelity_value(const ProblemSpec& spec, const Image& x) {
  if (spec.is_upscale()) return 0.0;  // iterates stay feasible
  const Image& y = std::get<DenoiseFidelity>(spec.fidelity).y;
  double s = 0.0;
  for (std::size_t p = 0; p < x.size(); ++p) {
    const double d = x.data()[p] - y.data()[p];
    s += d * d;
  }
  return 0.5 * s;
}

Image apply_fidelity_prox(const ProblemSpec& spec, const Image& z, double tau) {
  if (spec.is_upscale()) {
    const auto& f = std::get<UpscaleFidelity>(spec.fidelity);
    return project_affine(f.op, f.y, z);
  }
  return prox_quadratic(std::get<DenoiseFidelity>(spec.fidelity).y, z, tau);
}

void maybe_warn_steps(const SolverConfig& cfg, double opnorm, const char* form) {
  if (!cfg.warn_step_sizes) return;
  const double prod = cfg.tau * cfg.sigma * opnorm * opnorm;
  if (prod > 1.0 + 1e-9) {
    std::fprintf(stderr,
                 "tv4: warning: tau*sigma*|K|^2 = %.3f > 1 (%s form, |K| ~= %.4f); "
                 "convergence is not guaranteed, consider sigma <= %.6f\n",
                 prod, form, opnorm, 1.0 / (cfg.tau * opnorm * opnorm));
  }
}

// ---------------------------------------------------------------------------
// Composite form: min F(x) + lambda * ||Kx||, dual constrained to a ball-like
// set depending on the model.

struct IsoRegKit {
  using FieldT = Field2;
  static FieldT apply(const Image& x) { return diff2(x); }
  static Image adjoint(const FieldT& u) { return diff2_adjoint(u); }
  static FieldT dual_project(const FieldT& u, double lambda) { return project_ball(u, lambda); }
  static double value(const Image& x) { return tv_iso(x); }
  static LinearOperatorPair op(int r, int c) { return make_diff2_op(r, c); }
};

struct AnisoRegKit {
  using FieldT = Field2;
  static FieldT apply(const Image& x) { return diff2(x); }
  static Image adjoint(const FieldT& u) { return diff2_adjoint(u); }
  static FieldT dual_project(const FieldT& u, double lambda) { return clamp_channels(u, lambda); }
  static double value(const Image& x) { return tv_aniso(x); }
  static LinearOperatorPair op(int r, int c) { return make_diff2_op(r, c); }
};

struct UpwindRegKit {
  using FieldT = Field4;
  static FieldT apply(const Image& x) { return upwind_diff(x); }
  static Image adjoint(const FieldT& u) { return upwind_diff_adjoint(u); }
  static FieldT dual_project(const FieldT& u, double lambda) {
    return project_ball_nonneg(u, lambda);
  }
  static double value(const Image& x) { return tv_upwind(x); }
  static LinearOperatorPair op(int r, int c) { return make_upwind_diff_op(r, c); }
};

struct PrnRegKit {
  using FieldT = Field4;
  static FieldT apply(const Image& x) { return diff4(x); }
  static Image adjoint(const FieldT& u) { return diff4_adjoint(u); }
  static FieldT dual_project(const FieldT& u, double lambda) { return project_ball(u, lambda); }
  static double value(const Image& x) { return tv_prn(x); }
  static LinearOperatorPair op(int r, int c) { return make_diff4_op(r, c); }
};

template <typename Kit>
SolveReport run_composite(const ProblemSpec& spec, const SolverConfig& cfg, const Image& x0) {
  using FieldT = typename Kit::FieldT;
  const auto t_start = std::chrono::steady_clock::now();
  const int n1 = x0.rows(), n2 = x0.cols();
  detail::require_same_dims(n1, n2, grid_rows(spec), grid_cols(spec), "solve_composite");

  SolveReport rep;
  rep.operator_norm = operator_norm_estimate(Kit::op(n1, n2), 50);
  maybe_warn_steps(cfg, rep.operator_norm, "composite");

  const double tau = cfg.tau, sigma = cfg.sigma, rho = cfg.rho;
  Image x = x0;
  FieldT u(n1, n2);

  Image best_x = x;
  double best_obj = fidelity_value(spec, x) + spec.lambda * Kit::value(x);

  rep.objective.reserve(cfg.iters);
  rep.residual.reserve(cfg.iters);

  for (int it = 1; it <= cfg.iters; ++it) {
    // x_half = prox_{tau F}(x - tau K* u)
    Image xt = Kit::adjoint(u);
    for (std::size_t p = 0; p < xt.size(); ++p) xt.data()[p] = x.data()[p] - tau * xt.data()[p];
    xt = apply_fidelity_prox(spec, xt, tau);

    // dual step on the extrapolated primal 2*x_half - x
    Image xe(n1, n2);
    for (std::size_t p = 0; p < xe.size(); ++p)
      xe.data()[p] = 2.0 * xt.data()[p] - x.data()[p];
    FieldT arg = Kit::apply(xe);
    for (std::size_t p = 0; p < arg.size(); ++p)
      arg.data()[p] = u.data()[p] + sigma * arg.data()[p];
    const FieldT ut = Kit::dual_project(arg, spec.lambda);

    // relax both variables
    double change2 = 0.0, xnorm2 = 0.0;
    for (std::size_t p = 0; p < x.size(); ++p) {
      const double xn = rho * xt.data()[p] + (1.0 - rho) * x.data()[p];
      const double d = xn - x.data()[p];
      change2 += d * d;
      xnorm2 += xn * xn;
      x.data()[p] = xn;
    }
    for (std::size_t p = 0; p < u.size(); ++p)
      u.data()[p] = rho * ut.data()[p] + (1.0 - rho) * u.data()[p];

    const double change = std::sqrt(change2) / (1.0 + std::sqrt(xnorm2));
    const double obj = fidelity_value(spec, x) + spec.lambda * Kit::value(x);
    rep.objective.push_back(obj);
    rep.residual.push_back(change);
    rep.iterations = it;
    if (!std::isfinite(obj)) {
      throw SolverDivergence("composite solver diverged (non-finite objective) at iteration " +
                                 std::to_string(it),
                             it);
    }
    if (obj < best_obj) {
      best_obj = obj;
      best_x = x;
    }
    if (cfg.residual_tol > 0.0 && change <= cfg.residual_tol) break;
  }

  rep.x = std::move(best_x);
  if (spec.is_upscale()) {
    const auto& f = std::get<UpscaleFidelity>(spec.fidelity);
    rep.x = project_affine(f.op, f.y, rep.x);
  }
  rep.final_residual = rep.residual.empty() ? 0.0 : rep.residual.back();
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return rep;
}

// ---------------------------------------------------------------------------
// Constrained splitting form: min F(x) + G(v) s.t. Cv + Dx = 0 with
// v = (v_star..., alpha), G = lambda * sum of group norms of the v_star,
// C = -L* (stacked interpolation adjoints plus the difference row) and D
// embedding x into the last block.

template <typename Kit>
LinearOperatorPair make_coupling_op(int rows, int cols) {
  constexpr int K = Kit::channels;
  constexpr int S = Kit::num_stars;
  const int n = rows * cols;
  const int in_dim = n + S * K * n + n;   // x, v_star..., alpha
  const int out_dim = K * n + n;          // dual pair (y_u, y_s)
  return {in_dim, out_dim,
          [=](const std::vector<double>& z) {
            Image x(rows, cols);
            std::copy(z.begin(), z.begin() + n, x.data().begin());
            std::vector<double> ru(K * n, 0.0);
            std::size_t off = n;
            for (int q = 0; q < S; ++q) {
              typename Kit::FieldT vq(rows, cols);
              std::copy(z.begin() + off, z.begin() + off + K * n, vq.data().begin());
              off += K * n;
              const auto part = Kit::interp_star_adjoint(q, vq);
              for (int p = 0; p < K * n; ++p) ru[p] += part.data()[p];
            }
            Image alpha(rows, cols);
            std::copy(z.begin() + off, z.end(), alpha.data().begin());
            const auto dal = Kit::diff(alpha);
            std::vector<double> out(out_dim);
            for (int p = 0; p < K * n; ++p) out[p] = -(ru[p] + dal.data()[p]);
            for (int p = 0; p < n; ++p) out[K * n + p] = alpha.data()[p] + x.data()[p];
            return out;
          },
          [=](const std::vector<double>& y) {
            typename Kit::FieldT yu(rows, cols);
            std::copy(y.begin(), y.begin() + K * n, yu.data().begin());
            Image ys(rows, cols);
            std::copy(y.begin() + K * n, y.end(), ys.data().begin());
            std::vector<double> out(in_dim);
            for (int p = 0; p < n; ++p) out[p] = ys.data()[p];  // D* y
            std::size_t off = n;
            for (int q = 0; q < S; ++q) {
              const auto part = Kit::interp_star(q, yu);
              for (int p = 0; p < K * n; ++p) out[off + p] = -part.data()[p];
              off += K * n;
            }
            const Image da = Kit::diff_adjoint(yu);
            for (int p = 0; p < n; ++p) out[off + p] = -(da.data()[p] - ys.data()[p]);
            return out;
          }};
}

template <typename Kit>
SolveReport run_constrained(const ProblemSpec& spec, const SolverConfig& cfg, const Image& x0) {
  using FieldT = typename Kit::FieldT;
  constexpr int S = Kit::num_stars;
  const auto t_start = std::chrono::steady_clock::now();
  const int n1 = x0.rows(), n2 = x0.cols();
  detail::require_same_dims(n1, n2, grid_rows(spec), grid_cols(spec), "solve_constrained");

  SolveReport rep;
  rep.operator_norm = operator_norm_estimate(make_coupling_op<Kit>(n1, n2), 50);
  maybe_warn_steps(cfg, rep.operator_norm, "constrained");

  const double tau = cfg.tau, sigma = cfg.sigma, mu = cfg.mu;
  const double lambda = spec.lambda;

  Image x = x0;
  std::array<FieldT, 4> v, vt;
  for (int q = 0; q < S; ++q) v[q] = FieldT(n1, n2);
  // alpha starts at -x0 so the last constraint row starts satisfied.
  Image alpha(n1, n2);
  for (std::size_t p = 0; p < alpha.size(); ++p) alpha.data()[p] = -x0.data()[p];
  FieldT yu(n1, n2);
  Image ys(n1, n2);

  rep.objective.reserve(cfg.iters);
  rep.residual.reserve(cfg.iters);

  for (int it = 1; it <= cfg.iters; ++it) {
    // primal proxes
    Image xt(n1, n2);
    for (std::size_t p = 0; p < xt.size(); ++p) xt.data()[p] = x.data()[p] - tau * ys.data()[p];
    xt = apply_fidelity_prox(spec, xt, tau);

    for (int q = 0; q < S; ++q) {
      FieldT t = Kit::interp_star(q, yu);
      for (std::size_t p = 0; p < t.size(); ++p)
        t.data()[p] = v[q].data()[p] + tau * t.data()[p];
      vt[q] = group_soft_threshold(t, tau * lambda);
    }
    Image dau = Kit::diff_adjoint(yu);
    Image alphat(n1, n2);
    for (std::size_t p = 0; p < alphat.size(); ++p)
      alphat.data()[p] = alpha.data()[p] + tau * (dau.data()[p] - ys.data()[p]);

    // multiplier ascent on the extrapolated constraint residual
    Image ab(n1, n2);
    for (std::size_t p = 0; p < ab.size(); ++p)
      ab.data()[p] = 2.0 * alphat.data()[p] - alpha.data()[p];
    FieldT ru = [&] {
      FieldT acc(n1, n2);
      for (int q = 0; q < S; ++q) {
        FieldT vb(n1, n2);
        for (std::size_t p = 0; p < vb.size(); ++p)
          vb.data()[p] = 2.0 * vt[q].data()[p] - v[q].data()[p];
        const FieldT part = Kit::interp_star_adjoint(q, vb);
        for (std::size_t p = 0; p < acc.size(); ++p) acc.data()[p] += part.data()[p];
      }
      const FieldT dab = Kit::diff(ab);
      for (std::size_t p = 0; p < acc.size(); ++p)
        acc.data()[p] = -(acc.data()[p] + dab.data()[p]);
      return acc;
    }();
    Image rs(n1, n2);
    for (std::size_t p = 0; p < rs.size(); ++p)
      rs.data()[p] = ab.data()[p] + (2.0 * xt.data()[p] - x.data()[p]);

    // relax everything by mu
    for (std::size_t p = 0; p < x.size(); ++p)
      x.data()[p] = mu * xt.data()[p] + (1.0 - mu) * x.data()[p];
    for (int q = 0; q < S; ++q)
      for (std::size_t p = 0; p < v[q].size(); ++p)
        v[q].data()[p] = mu * vt[q].data()[p] + (1.0 - mu) * v[q].data()[p];
    for (std::size_t p = 0; p < alpha.size(); ++p)
      alpha.data()[p] = mu * alphat.data()[p] + (1.0 - mu) * alpha.data()[p];
    for (std::size_t p = 0; p < yu.size(); ++p)
      yu.data()[p] = mu * (yu.data()[p] + sigma * ru.data()[p]) + (1.0 - mu) * yu.data()[p];
    for (std::size_t p = 0; p < ys.size(); ++p)
      ys.data()[p] = mu * (ys.data()[p] + sigma * rs.data()[p]) + (1.0 - mu) * ys.data()[p];

    // constraint residual at the current point
    double res2 = 0.0;
    {
      FieldT acc(n1, n2);
      for (int q = 0; q < S; ++q) {
        const FieldT part = Kit::interp_star_adjoint(q, v[q]);
        for (std::size_t p = 0; p < acc.size(); ++p) acc.data()[p] += part.data()[p];
      }
      const FieldT da = Kit::diff(alpha);
      for (std::size_t p = 0; p < acc.size(); ++p) {
        const double r = acc.data()[p] + da.data()[p];
        res2 += r * r;
      }
      for (std::size_t p = 0; p < x.size(); ++p) {
        const double r = alpha.data()[p] + x.data()[p];
        res2 += r * r;
      }
    }
    const double res = std::sqrt(res2) / (1.0 + norm_fro(x));

    double gval = 0.0;
    for (int q = 0; q < S; ++q) gval += group_l21_norm(v[q]);
    const double obj = fidelity_value(spec, x) + lambda * gval;
    rep.objective.push_back(obj);
    rep.residual.push_back(res);
    rep.iterations = it;
    if (!std::isfinite(obj) || !std::isfinite(res)) {
      throw SolverDivergence("constrained solver diverged (non-finite iterate) at iteration " +
                                 std::to_string(it),
                             it);
    }
    if (cfg.residual_tol > 0.0 && res <= cfg.residual_tol) break;
  }

  if (spec.is_upscale()) {
    const auto& f = std::get<UpscaleFidelity>(spec.fidelity);
    x = project_affine(f.op, f.y, x);
  }
  rep.x = std::move(x);
  rep.final_residual = rep.residual.empty() ? 0.0 : rep.residual.back();
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
  return rep;
}

}  // namespace

SolveReport solve_composite(const ProblemSpec& spec, const SolverConfig& cfg, const Image& x0) {
  validate(spec);
  switch (spec.reg) {
    case Regularizer::iso: return run_composite<IsoRegKit>(spec, cfg, x0);
    case Regularizer::aniso: return run_composite<AnisoRegKit>(spec, cfg, x0);
    case Regularizer::upwind: return run_composite<UpwindRegKit>(spec, cfg, x0);
    case Regularizer::prn: return run_composite<PrnRegKit>(spec, cfg, x0);
    default:
      throw std::invalid_argument("solve_composite handles iso/aniso/upwind/prn only");
  }
}

SolveReport solve_constrained(const ProblemSpec& spec, const SolverConfig& cfg, const Image& x0) {
  validate(spec);
  switch (spec.reg) {
    case Regularizer::condat: return run_constrained<CondatKit>(spec, cfg, x0);
    case Regularizer::refined: return run_constrained<RefinedKit>(spec, cfg, x0);
    default:
      throw std::invalid_argument("solve_constrained handles condat/new only");
  }
}

SolveReport solve(const ProblemSpec& spec, const SolverConfig& cfg, const Image& x0) {
  return is_constrained(spec.reg) ? solve_constrained(spec, cfg, x0)
                                  : solve_composite(spec, cfg, x0);
}

SolverConfig default_config(Regularizer reg, bool upscale, int rows, int cols) {
  SolverConfig cfg;
  cfg.iters = upscale ? 20000 : 1000;
  if (!upscale) {
    switch (reg) {
      case Regularizer::iso:
      case Regularizer::aniso:
        cfg.tau = 0.01;
        cfg.sigma = 1.0 / (8.0 * cfg.tau);
        cfg.rho = 1.9;
        break;
      case Regularizer::upwind:
        cfg.tau = 0.01;
        cfg.sigma = 1.0 / (16.0 * cfg.tau);
        cfg.rho = 1.9;
        break;
      case Regularizer::prn: {
        cfg.tau = 0.01;
        const double est = operator_norm_estimate(make_diff4_op(rows, cols), 50);
        cfg.sigma = 1.0 / (cfg.tau * est * est);
        cfg.rho = 1.9;
        break;
      }
      case Regularizer::condat:
        cfg.tau = 0.99 / 8.0;
        cfg.sigma = 0.99 / 3.0;
        cfg.mu = 1.0;
        break;
      case Regularizer::refined:
        cfg.tau = 0.99 / 10.0;
        cfg.sigma = 0.99 / 10.0;
        cfg.mu = 1.0;
        break;
    }
  } else {
    switch (reg) {
      case Regularizer::iso:
      case Regularizer::aniso:
        cfg.tau = 1.0 / 8.0;
        cfg.sigma = 0.1;
        cfg.rho = 1.0;
        break;
      case Regularizer::upwind:
        cfg.tau = 0.02;
        cfg.sigma = 1.0 / (16.0 * cfg.tau);
        cfg.rho = 1.9;
        break;
      case Regularizer::prn: {
        cfg.tau = 0.02;
        const double est = operator_norm_estimate(make_diff4_op(rows, cols), 50);
        cfg.sigma = 1.0 / (cfg.tau * est * est);
        cfg.rho = 1.9;
        break;
      }
      case Regularizer::condat:
        cfg.tau = 0.9 / 8.0;
        cfg.sigma = 0.9 / 3.0;
        cfg.mu = 1.0;
        break;
      case Regularizer::refined:
        cfg.tau = 0.9 / 30.0;
        cfg.sigma = 0.9 / 6.0;
        cfg.mu = 1.0;
        break;
    }
  }
  return cfg;
}

double default_lambda(Regularizer reg) {
  switch (reg) {
    case Regularizer::iso: return 0.12;
    case Regularizer::aniso: return 0.12;
    case Regularizer::upwind: return 0.155;
    case Regularizer::prn: return 0.075;
    case Regularizer::condat: return 0.12;
    case Regularizer::refined: return 0.075;
  }
  return 0.1;
}

Image default_start(const ProblemSpec& spec) {
  if (!spec.is_upscale()) return std::get<DenoiseFidelity>(spec.fidelity).y;
  const auto& f = std::get<UpscaleFidelity>(spec.fidelity);
  // block replication: m^2 * A* y, which is feasible for Ax = y
  Image x0 = downscale_adjoint(f.op, f.y);
  const double m2 = static_cast<double>(f.op.factor()) * f.op.factor();
  for (double& v : x0.data()) v *= m2;
  return x0;
}

SweepResult lambda_sweep(const ProblemSpec& spec_template, const std::vector<double>& lambdas,
                         const Image& reference, const SolverConfig& cfg) {
  if (lambdas.empty()) throw std::invalid_argument("lambda_sweep: empty lambda list");
  detail::require_same_dims(reference.rows(), reference.cols(), grid_rows(spec_template),
                            grid_cols(spec_template), "lambda_sweep");

  SweepResult out;
  out.points.resize(lambdas.size());

  int max_threads = static_cast<int>(std::thread::hardware_concurrency());
  if (const char* env = std::getenv("TV4_THREADS")) {
    const int cap = std::atoi(env);
    if (cap >= 1) max_threads = cap;
  }
  max_threads = std::clamp(max_threads, 1, static_cast<int>(lambdas.size()));

  const double ref_norm = norm_fro(reference);
  auto run_point = [&](std::size_t idx) {
    ProblemSpec spec = spec_template;
    spec.lambda = lambdas[idx];
    const SolveReport rep = solve(spec, cfg, default_start(spec));
    double err2 = 0.0;
    for (std::size_t p = 0; p < reference.size(); ++p) {
      const double d = reference.data()[p] - rep.x.data()[p];
      err2 += d * d;
    }
    out.points[idx] = {lambdas[idx], std::sqrt(err2) / ref_norm};
  };

  if (max_threads == 1) {
    for (std::size_t i = 0; i < lambdas.size(); ++i) run_point(i);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (int t = 0; t < max_threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < lambdas.size(); i = next.fetch_add(1))
          run_point(i);
      });
    }
    for (auto& th : pool) th.join();
  }

  out.argmin_index = 0;
  for (std::size_t i = 1; i < out.points.size(); ++i)
    if (out.points[i].rel_err < out.points[out.argmin_index].rel_err)
      out.argmin_index = static_cast<int>(i);
  return out;
}

}  // namespace tv4
