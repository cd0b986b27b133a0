#pragma once

#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "tv4/grid.hpp"
#include "tv4/prox.hpp"

namespace tv4 {

enum class Regularizer { iso, aniso, upwind, prn, condat, refined };

const char* regularizer_name(Regularizer r);
Regularizer regularizer_from_name(const std::string& name);  // accepts "new" for refined

/// condat and refined solve through the constrained splitting form; the
/// others through the composite form.
bool is_constrained(Regularizer r);

struct DenoiseFidelity {
  Image y;
};

struct UpscaleFidelity {
  DownscaleOp op;
  Image y;  // low-resolution observation
};

struct ProblemSpec {
  std::variant<DenoiseFidelity, UpscaleFidelity> fidelity;
  Regularizer reg = Regularizer::iso;
  double lambda = 1.0;  // must stay 1 for upscaling (constraint formulation)

  bool is_upscale() const { return std::holds_alternative<UpscaleFidelity>(fidelity); }
};

struct SolverConfig {
  double tau = 0.0;
  double sigma = 0.0;
  double rho = 1.9;   // over-relaxation, composite form
  double mu = 1.0;    // relaxation, constrained form
  int iters = 1000;
  double residual_tol = 0.0;  // 0 disables early stopping
  bool warn_step_sizes = true;
};

struct SolveReport {
  Image x;
  std::vector<double> objective;  // one sample per executed iteration
  std::vector<double> residual;   // constrained: relative constraint residual;
                                  // composite: relative iterate change
  int iterations = 0;
  double wall_seconds = 0.0;
  double final_residual = 0.0;
  double operator_norm = 0.0;     // power-method estimate used by the step check
};

class SolverDivergence : public std::runtime_error {
 public:
  SolverDivergence(const std::string& msg, int iteration)
      : std::runtime_error(msg), iteration(iteration) {}
  int iteration;
};

/// Over-relaxed primal-dual iteration on min F(x) + lambda*||Kx||: primal
/// prox first, dual ascent on the extrapolated primal, both variables
/// relaxed by rho. Returns the best-objective iterate seen.
SolveReport solve_composite(const ProblemSpec& spec, const SolverConfig& cfg, const Image& x0);

/// Relaxed primal-dual iteration on min F(x) + G(v) s.t. Cv + Dx = 0, the
/// splitting form used by the condat and refined models. Returns the final
/// iterate together with the constraint-residual history.
SolveReport solve_constrained(const ProblemSpec& spec, const SolverConfig& cfg, const Image& x0);

/// Dispatches on the regularizer.
SolveReport solve(const ProblemSpec& spec, const SolverConfig& cfg, const Image& x0);

/// Step sizes per model; grid dims are needed where the dual step comes from
/// an operator-norm estimate.
SolverConfig default_config(Regularizer reg, bool upscale, int rows, int cols);

/// Reference regularization weight per model (denoising).
double default_lambda(Regularizer reg);

/// x0 = y for denoising, block-replicated y for upscaling.
Image default_start(const ProblemSpec& spec);

struct SweepPoint {
  double lambda;
  double rel_err;  // ||reference - x|| / ||reference||
};

struct SweepResult {
  std::vector<SweepPoint> points;
  int argmin_index = -1;
};

/// Runs the solver once per lambda and reports the relative error against
/// the reference. Points may fan out across threads (TV4_THREADS caps the
/// count); each solve is independent and deterministic.
SweepResult lambda_sweep(const ProblemSpec& spec_template, const std::vector<double>& lambdas,
                         const Image& reference, const SolverConfig& cfg);

}  // namespace tv4
