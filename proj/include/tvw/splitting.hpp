#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "tvw/grid.hpp"
#include "tvw/transport.hpp"
#include "tvw/tv.hpp"

namespace tvw {

enum class AnchorPolicy {
  /// Halpern anchor stays at x0 for the whole run.
  kFixed,
  /// Re-anchor at T(x_n) once |T x_n - x_n| fell below restart_ratio times
  /// its value at the start of the current epoch; beta restarts from 0.
  kAdaptiveRestart,
};

struct DRConfig {
  double tau = 0.1;
  double lambda = 1.0;
  /// Relaxation lambda_n, constant over the run.
  double relax = 1.0;
  /// The admissible relaxation interval is [relax_margin, 2 - relax_margin].
  double relax_margin = 0.05;
  double fp_tol = 1e-5;
  int max_outer = 500;
  AnchorPolicy anchor = AnchorPolicy::kFixed;
  double restart_ratio = 0.2;
  /// inner_tol = min(inner_tol_cap, inner_tol_factor * relative fp residual).
  /// The OT marginal tolerance follows inner_tol; the TV duality gap, which
  /// bounds the squared prox error, follows inner_tol^2.
  double inner_tol_cap = 1e-6;
  double inner_tol_factor = 0.1;
  double tv_tol_floor = 1e-13;
  int tv_max_iter = 3000;
  EntropicConfig entropic;

  static DRConfig for_grid(const Grid& grid, double tau);
  void validate() const;
};

struct RunRecord {
  int iteration = 0;
  double fp_residual = 0.0;      // |x_{n+1} - x_n|_2
  double fp_residual_rel = 0.0;  // divided by |x_0|_2
  double map_residual = 0.0;     // |T x_n - x_n|_2
  double objective = 0.0;        // TV(y_n) + entropic W2^2 estimate / (2 tau)
  double beta = 0.0;
  double tv_gap = 0.0;
  int tv_iterations = 0;
  int ot_iterations = 0;
  bool restarted = false;

  friend bool operator==(const RunRecord&, const RunRecord&) = default;
};

struct RunHistory {
  std::vector<RunRecord> records;
  /// Wall-clock seconds per record; kept apart so records stay reproducible.
  std::vector<double> wall_seconds;

  friend bool operator==(const RunHistory& a, const RunHistory& b) { return a.records == b.records; }
};

/// beta_0 = 0, beta_n = (1 + beta_{n-1}^2) / 2.
double halpern_beta(int n, double beta_prev);

/// Mutable state threaded through successive outer iterations.
struct DRState {
  Field anchor;
  int epoch_step = 0;  // index n of the next beta_n within the current epoch
  double beta_prev = 0.0;
  double epoch_map_residual = 0.0;
  double inner_tol = 1e-6;
  std::optional<DualField> tv_warm;
  std::optional<PotentialPair> ot_warm;

  explicit DRState(Field x0) : anchor(std::move(x0)) {}
};

struct DRStepResult {
  Field x_next;
  Field y;   // prox_{lambda TV}(x_n)
  Field tx;  // x_n + relax (prox_{lambda W}(2 y - x_n) - y)
  ProxCertificate tv;
  ProxW2Result w2;
  double beta = 0.0;
  bool restarted = false;
};

/// One Halpern-anchored Douglas-Rachford iteration.
DRStepResult dr_step(const Field& x, const DRConfig& cfg, const Density& rho0, DRState& state);

struct TvwSolution {
  Density rho1;  // last W2-prox output: nonnegative with the mass of rho0
  Field y;       // last TV-prox output
  DualField z;   // TV certificate of y
  PotentialPair potentials;
  RunHistory history;
  bool converged = false;
  int iterations = 0;
};

/// argmin_rho TV(rho) + W2^2(rho0, rho) / (2 tau) by Halpern-accelerated
/// Douglas-Rachford splitting, anchored at x0 = rho0. `observer`, if set, is
/// called after every outer iteration.
TvwSolution solve_tvw(const Density& rho0, const DRConfig& cfg,
                      const std::function<void(const RunRecord&)>& observer = {});

}  // namespace tvw
