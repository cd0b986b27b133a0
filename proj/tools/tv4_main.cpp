// tv4 command line tool: denoising, upscaling, lambda sweeps, TV evaluation
// and operator self-checks on grayscale images.

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <string>

#include "tv4/tv4.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;

struct StepFlags {
  std::optional<double> tau, sigma, rho, mu;
  std::optional<int> iters;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--tau", tau, "primal step size (default: per-model)");
    cmd->add_option("--sigma", sigma, "dual step size (default: per-model)");
    cmd->add_option("--rho", rho, "over-relaxation, composite models");
    cmd->add_option("--mu", mu, "relaxation, constrained models");
    cmd->add_option("--iters", iters, "iteration budget");
  }

  tv4::SolverConfig resolve(tv4::Regularizer reg, bool upscale, int rows, int cols) const {
    tv4::SolverConfig cfg = tv4::default_config(reg, upscale, rows, cols);
    if (tau) cfg.tau = *tau;
    if (sigma) cfg.sigma = *sigma;
    if (rho) cfg.rho = *rho;
    if (mu) cfg.mu = *mu;
    if (iters) cfg.iters = *iters;
    return cfg;
  }
};

tv4::Image load_input(const std::string& path, double noise_sigma, std::uint64_t seed) {
  tv4::Image y = tv4::read_image(path);
  if (noise_sigma > 0.0) y = tv4::add_gaussian_noise(y, noise_sigma, seed);
  return y;
}

void add_error_metrics(json& m, const tv4::Image& ref, const tv4::Image& x) {
  double err2 = 0.0;
  for (std::size_t p = 0; p < ref.size(); ++p) {
    const double d = ref.data()[p] - x.data()[p];
    err2 += d * d;
  }
  const double err = std::sqrt(err2);
  m["abs_err_fro"] = err;
  m["rel_err_clean_denom"] = err / tv4::norm_fro(ref);
  m["rel_err_denoised_denom"] = err / tv4::norm_fro(x);
}

int cmd_denoise(const std::string& in, const std::string& out, const std::string& model,
                std::optional<double> lambda, const StepFlags& steps, const std::string& ref_path,
                double noise_sigma, std::uint64_t seed) {
  const tv4::Regularizer reg = tv4::regularizer_from_name(model);
  const tv4::Image y = load_input(in, noise_sigma, seed);
  tv4::ProblemSpec spec{tv4::DenoiseFidelity{y}, reg,
                        lambda ? *lambda : tv4::default_lambda(reg)};
  const tv4::SolverConfig cfg = steps.resolve(reg, false, y.rows(), y.cols());
  const tv4::SolveReport rep = tv4::solve(spec, cfg, tv4::default_start(spec));
  tv4::write_image(rep.x, out);

  json m;
  m["command"] = "denoise";
  m["model"] = model;
  m["lambda"] = spec.lambda;
  m["iterations"] = rep.iterations;
  m["residual"] = rep.final_residual;
  m["runtime"] = rep.wall_seconds;
  m["out"] = out;
  if (!ref_path.empty()) add_error_metrics(m, tv4::read_image(ref_path), rep.x);
  std::cout << m.dump() << "\n";
  return kExitOk;
}

int cmd_upscale(const std::string& in, const std::string& out, const std::string& model,
                int scale, const StepFlags& steps, const std::string& ref_path) {
  const tv4::Regularizer reg = tv4::regularizer_from_name(model);
  const tv4::Image y = tv4::read_image(in);
  const tv4::DownscaleOp A(scale, y.rows() * scale, y.cols() * scale);
  tv4::ProblemSpec spec{tv4::UpscaleFidelity{A, y}, reg, 1.0};
  const tv4::SolverConfig cfg = steps.resolve(reg, true, A.hi_rows(), A.hi_cols());
  const tv4::SolveReport rep = tv4::solve(spec, cfg, tv4::default_start(spec));
  tv4::write_image(rep.x, out);

  const tv4::Image ax = tv4::downscale(A, rep.x);
  double feas2 = 0.0;
  for (std::size_t p = 0; p < y.size(); ++p) {
    const double d = ax.data()[p] - y.data()[p];
    feas2 += d * d;
  }

  json m;
  m["command"] = "upscale";
  m["model"] = model;
  m["scale"] = scale;
  m["iterations"] = rep.iterations;
  m["residual"] = rep.final_residual;
  m["feasibility_fro"] = std::sqrt(feas2);
  m["runtime"] = rep.wall_seconds;
  m["out"] = out;
  if (!ref_path.empty()) add_error_metrics(m, tv4::read_image(ref_path), rep.x);
  std::cout << m.dump() << "\n";
  return kExitOk;
}

int cmd_sweep(const std::string& in, const std::string& out_csv, const std::string& model,
              const std::vector<double>& lambdas_flag, double lmin, double lmax, int lcount,
              const StepFlags& steps, const std::string& ref_path, double noise_sigma,
              std::uint64_t seed) {
  const tv4::Regularizer reg = tv4::regularizer_from_name(model);
  const tv4::Image y = load_input(in, noise_sigma, seed);
  const tv4::Image ref = tv4::read_image(ref_path);

  std::vector<double> lambdas = lambdas_flag;
  if (lambdas.empty()) {
    if (lcount < 1 || lmin <= 0.0 || lmax < lmin)
      throw CLI::ValidationError("--lambda-min/--lambda-max/--lambda-count form an invalid grid");
    for (int i = 0; i < lcount; ++i) {
      const double t = lcount == 1 ? 0.0 : static_cast<double>(i) / (lcount - 1);
      lambdas.push_back(lmin * std::pow(lmax / lmin, t));
    }
  }

  tv4::ProblemSpec spec{tv4::DenoiseFidelity{y}, reg, lambdas.front()};
  const tv4::SolverConfig cfg = steps.resolve(reg, false, y.rows(), y.cols());
  const tv4::SweepResult sw = tv4::lambda_sweep(spec, lambdas, ref, cfg);

  {
    const std::string tmp = out_csv + ".tmp";
    std::ofstream csv(tmp, std::ios::trunc);
    if (!csv) throw std::runtime_error(out_csv + ": cannot open for writing");
    csv << "lambda,rel_err\n";
    for (const tv4::SweepPoint& p : sw.points) {
      char line[64];
      std::snprintf(line, sizeof(line), "%.10g,%.10g\n", p.lambda, p.rel_err);
      csv << line;
    }
    csv.close();
    std::filesystem::rename(tmp, out_csv);
  }

  const tv4::SweepPoint& best = sw.points[sw.argmin_index];
  json m;
  m["command"] = "sweep";
  m["model"] = model;
  m["csv"] = out_csv;
  m["argmin_lambda"] = best.lambda;
  m["argmin_rel_err"] = best.rel_err;
  std::cout << m.dump() << "\n";
  return kExitOk;
}

int cmd_tv(const std::string& in, const std::string& model, double tol, int max_iter) {
  const tv4::Image x = tv4::read_image(in);
  json m;
  m["command"] = "tv";
  m["model"] = model;
  if (model == "iso") {
    m["value"] = tv4::tv_iso(x);
  } else if (model == "aniso") {
    m["value"] = tv4::tv_aniso(x);
  } else if (model == "upwind") {
    m["value"] = tv4::tv_upwind(x);
  } else if (model == "prn") {
    m["value"] = tv4::tv_prn(x);
  } else if (model == "condat" || model == "new") {
    const tv4::DualTvResult r = tv4::tv_dual_eval(
        model == "condat" ? tv4::DualTv::condat : tv4::DualTv::refined, x, tol, max_iter);
    m["value"] = r.value;
    m["feasibility_residual"] = r.residual;
    m["iterations"] = r.iterations;
    m["converged"] = r.converged;
  } else {
    throw CLI::ValidationError("unknown TV model: " + model);
  }
  std::cout << m.dump() << "\n";
  return kExitOk;
}

int cmd_selfcheck() {
  const tv4::SelfCheckReport rep = tv4::run_selfcheck();
  tv4::print_selfcheck(rep, std::cout);
  return rep.pass ? kExitOk : kExitVerifyFail;
}

int cmd_synth(const std::string& kind, int size, const std::string& out, double noise_sigma,
              std::uint64_t seed) {
  tv4::Image x = tv4::synth_fixture(tv4::fixture_from_name(kind), size);
  if (noise_sigma > 0.0) x = tv4::add_gaussian_noise(x, noise_sigma, seed);
  tv4::write_image(x, out);
  json m;
  m["command"] = "synth";
  m["kind"] = kind;
  m["size"] = size;
  m["out"] = out;
  std::cout << m.dump() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tv4: discrete total variation toolbox (denoising, upscaling, TV evaluation)"};
  app.require_subcommand(1);

  const std::vector<std::string> models = {"iso", "aniso", "upwind", "prn", "condat", "new"};

  // denoise
  auto* den = app.add_subcommand("denoise", "TV denoising of a grayscale image");
  std::string den_in, den_out, den_model = "new", den_ref;
  std::optional<double> den_lambda;
  double den_noise = 0.0;
  std::uint64_t den_seed = 1;
  StepFlags den_steps;
  den->add_option("--in", den_in, "input image (PGM/PNG)")->required();
  den->add_option("--out", den_out, "output image")->required();
  den->add_option("--tv", den_model, "TV model")->check(CLI::IsMember(models));
  den->add_option("--lambda", den_lambda, "regularization weight (default: per-model)");
  den->add_option("--ref", den_ref, "clean reference for error metrics");
  den->add_option("--noise-sigma", den_noise, "corrupt the input with Gaussian noise first");
  den->add_option("--seed", den_seed, "noise seed");
  den_steps.add_to(den);

  // upscale
  auto* up = app.add_subcommand("upscale", "TV-constrained upscaling (A x = y)");
  std::string up_in, up_out, up_model = "new", up_ref;
  int up_scale = 4;
  StepFlags up_steps;
  up->add_option("--in", up_in, "low-resolution input image")->required();
  up->add_option("--out", up_out, "output image")->required();
  up->add_option("--tv", up_model, "TV model")->check(CLI::IsMember(models));
  up->add_option("--scale", up_scale, "integer upscale factor")->check(CLI::Range(2, 64));
  up->add_option("--ref", up_ref, "high-resolution reference for error metrics");
  up_steps.add_to(up);

  // sweep
  auto* sw = app.add_subcommand("sweep", "lambda sweep against a reference image");
  std::string sw_in, sw_csv = "sweep.csv", sw_model = "new", sw_ref;
  std::vector<double> sw_lambdas;
  double sw_lmin = 0.02, sw_lmax = 0.8, sw_noise = 0.0;
  int sw_lcount = 10;
  std::uint64_t sw_seed = 1;
  StepFlags sw_steps;
  sw->add_option("--in", sw_in, "noisy input image")->required();
  sw->add_option("--ref", sw_ref, "clean reference image")->required();
  sw->add_option("--out", sw_csv, "output CSV path");
  sw->add_option("--tv", sw_model, "TV model")->check(CLI::IsMember(models));
  sw->add_option("--lambdas", sw_lambdas, "explicit lambda list")->delimiter(',');
  sw->add_option("--lambda-min", sw_lmin, "log-grid lower end");
  sw->add_option("--lambda-max", sw_lmax, "log-grid upper end");
  sw->add_option("--lambda-count", sw_lcount, "log-grid size");
  sw->add_option("--noise-sigma", sw_noise, "corrupt the input with Gaussian noise first");
  sw->add_option("--seed", sw_seed, "noise seed");
  sw_steps.add_to(sw);

  // tv
  auto* tvc = app.add_subcommand("tv", "evaluate a TV functional on an image");
  std::string tv_in, tv_model = "prn";
  double tv_tol = 1e-6;
  int tv_maxiter = 5000;
  tvc->add_option("--in", tv_in, "input image")->required();
  tvc->add_option("--model", tv_model, "TV model")->check(CLI::IsMember(models));
  tvc->add_option("--tol", tv_tol, "relative tolerance (dual models)");
  tvc->add_option("--max-iter", tv_maxiter, "iteration cap (dual models)");

  // selfcheck
  app.add_subcommand("selfcheck",
                     "verify adjoint and prox identities; report closed-form discrepancies");

  // synth
  auto* syn = app.add_subcommand("synth", "write a synthetic test image");
  std::string syn_kind = "piecewise", syn_out;
  int syn_size = 64;
  double syn_noise = 0.0;
  std::uint64_t syn_seed = 1;
  syn->add_option("--kind", syn_kind, "rhombus|stripes|checker|piecewise")
      ->check(CLI::IsMember({"rhombus", "stripes", "checker", "piecewise"}));
  syn->add_option("--size", syn_size, "image size")->check(CLI::Range(2, 4096));
  syn->add_option("--out", syn_out, "output image")->required();
  syn->add_option("--noise-sigma", syn_noise, "add Gaussian noise");
  syn->add_option("--seed", syn_seed, "noise seed");

  try {
    app.parse(argc, argv);
    if (den->parsed())
      return cmd_denoise(den_in, den_out, den_model, den_lambda, den_steps, den_ref, den_noise,
                         den_seed);
    if (up->parsed()) return cmd_upscale(up_in, up_out, up_model, up_scale, up_steps, up_ref);
    if (sw->parsed())
      return cmd_sweep(sw_in, sw_csv, sw_model, sw_lambdas, sw_lmin, sw_lmax, sw_lcount, sw_steps,
                       sw_ref, sw_noise, sw_seed);
    if (tvc->parsed()) return cmd_tv(tv_in, tv_model, tv_tol, tv_maxiter);
    if (app.get_subcommand("selfcheck")->parsed()) return cmd_selfcheck();
    if (syn->parsed()) return cmd_synth(syn_kind, syn_size, syn_out, syn_noise, syn_seed);
  } catch (const CLI::ParseError& e) {
    app.exit(e);  // prints help/usage message
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "tv4: error: " << e.what() << "\n";
    return kExitVerifyFail;
  }
  return kExitUsage;
}
