#include "tvw/splitting.hpp"

#include <algorithm>
#include <chrono>
#include <string>

namespace tvw {

DRConfig DRConfig::for_grid(const Grid& grid, double tau) {
  DRConfig cfg;
  cfg.tau = tau;
  cfg.entropic = EntropicConfig::for_grid(grid);
  return cfg;
}

void DRConfig::validate() const {
  if (!(tau > 0.0) || !(lambda > 0.0)) throw InvalidArgument("DRConfig: tau and lambda must be positive");
  if (!(relax_margin > 0.0 && relax_margin <= 1.0)) {
    throw InvalidArgument("DRConfig: relax_margin must lie in (0, 1]");
  }
  if (relax < relax_margin || relax > 2.0 - relax_margin) {
    throw InvalidArgument("DRConfig: relax outside [relax_margin, 2 - relax_margin]");
  }
  if (!(fp_tol > 0.0) || max_outer <= 0) throw InvalidArgument("DRConfig: fp_tol, max_outer must be positive");
  if (!(restart_ratio > 0.0 && restart_ratio < 1.0)) {
    throw InvalidArgument("DRConfig: restart_ratio must lie in (0, 1)");
  }
  if (!(inner_tol_cap > 0.0) || !(inner_tol_factor > 0.0) || tv_max_iter <= 0) {
    throw InvalidArgument("DRConfig: inner tolerances must be positive");
  }
  entropic.validate();
}

double halpern_beta(int n, double beta_prev) {
  if (n <= 0) return 0.0;
  return 0.5 * (1.0 + beta_prev * beta_prev);
}

DRStepResult dr_step(const Field& x, const DRConfig& cfg, const Density& rho0, DRState& state) {
  TvProxOptions tv_opts;
  tv_opts.tol = std::max(cfg.tv_tol_floor, state.inner_tol * state.inner_tol);
  tv_opts.max_iter = cfg.tv_max_iter;
  tv_opts.require_convergence = false;
  ProxCertificate tv = prox_tv(x, cfg.lambda, tv_opts, state.tv_warm ? &*state.tv_warm : nullptr);

  Field reflected = combine(2.0, tv.u, -1.0, x);
  EntropicConfig ot_cfg = cfg.entropic;
  ot_cfg.marginal_tol = std::max(cfg.entropic.marginal_tol, std::min(ot_cfg.level_tol, state.inner_tol));
  ProxW2Result w2 = prox_w2(reflected, cfg.lambda, cfg.tau, rho0, ot_cfg,
                            state.ot_warm ? &*state.ot_warm : nullptr);

  Field tx(x.grid());
  for (std::size_t k = 0; k < x.size(); ++k) tx[k] = x[k] + cfg.relax * (w2.rho[k] - tv.u[k]);

  const double map_residual = l2_distance(tx, x);
  DRStepResult out{Field(x.grid()), tv.u, tx, tv, w2};
  if (state.epoch_step == 0) state.epoch_map_residual = map_residual;
  if (cfg.anchor == AnchorPolicy::kAdaptiveRestart && state.epoch_step > 0 &&
      map_residual <= cfg.restart_ratio * state.epoch_map_residual) {
    state.anchor = tx;
    state.epoch_step = 0;
    state.beta_prev = 0.0;
    state.epoch_map_residual = map_residual;
    out.x_next = tx;
    out.beta = 1.0;
    out.restarted = true;
  } else {
    const double beta = halpern_beta(state.epoch_step + 1, state.beta_prev);
    out.x_next = combine(1.0 - beta, state.anchor, beta, tx);
    out.beta = beta;
    state.beta_prev = beta;
    ++state.epoch_step;
  }
  state.tv_warm = tv.z;
  state.ot_warm = w2.potentials;
  return out;
}

TvwSolution solve_tvw(const Density& rho0, const DRConfig& cfg,
                      const std::function<void(const RunRecord&)>& observer) {
  cfg.validate();
  const double m0 = mass(rho0);
  if (std::abs(m0 - 1.0) > 1e-9) {
    throw InvalidArgument("solve_tvw: rho0 must have unit mass, got " + std::to_string(m0));
  }
  const Field& x0 = rho0.field();
  const double x0_norm = l2_norm(x0);
  DRState state(x0);
  state.inner_tol = cfg.inner_tol_cap;

  Field x = x0;
  std::optional<DRStepResult> last;
  RunHistory history;
  bool converged = false;
  int n = 0;
  const auto t_start = std::chrono::steady_clock::now();
  for (; n < cfg.max_outer; ++n) {
    DRStepResult step = [&] {
      try {
        return dr_step(x, cfg, rho0, state);
      } catch (const ConvergenceError& e) {
        throw ConvergenceError("solve_tvw: outer iteration " + std::to_string(n) + ": " + e.what(),
                               e.achieved(), n);
      }
    }();
    RunRecord rec;
    rec.iteration = n;
    rec.fp_residual = l2_distance(step.x_next, x);
    rec.fp_residual_rel = rec.fp_residual / x0_norm;
    rec.map_residual = l2_distance(step.tx, x);
    rec.objective = tv_value(step.y) + step.w2.w2_estimate / (2.0 * cfg.tau);
    rec.beta = step.beta;
    rec.tv_gap = step.tv.gap;
    rec.tv_iterations = step.tv.iterations;
    rec.ot_iterations = step.w2.iterations;
    rec.restarted = step.restarted;
    history.records.push_back(rec);
    if (observer) observer(rec);
    history.wall_seconds.push_back(
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count());

    state.inner_tol = std::min(cfg.inner_tol_cap, cfg.inner_tol_factor * rec.fp_residual_rel);
    x = step.x_next;
    last = std::move(step);
    if (rec.fp_residual_rel <= cfg.fp_tol) {
      converged = true;
      ++n;
      break;
    }
  }

  TvwSolution sol{last->w2.rho, last->y, last->tv.z, last->w2.potentials, std::move(history),
                  converged, n};
  return sol;
}

}  // namespace tvw
