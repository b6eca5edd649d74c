#pragma once

#include <span>
#include <vector>

#include "tvw/grid.hpp"

namespace tvw {

/// Entropic annealing schedule. Levels are in units of squared length.
struct EntropicConfig {
  double eps_start = 0.1;
  double eps_final = 1e-4;
  double anneal_factor = 0.5;
  /// L1 marginal violation accepted at the final level.
  double marginal_tol = 1e-9;
  /// Looser tolerance used on the intermediate annealing levels.
  double level_tol = 1e-3;
  int inner_max_iter = 20000;
  /// Over-relaxation of the row potential update, in [1, 2).
  double overrelax = 1.5;
  /// w2_entropic subtracts the self-transport terms (Sinkhorn divergence).
  bool debias = true;

  /// Default schedule scaled by diam(Omega)^2.
  static EntropicConfig for_grid(const Grid& grid);
  void validate() const;
};

/// Kantorovich potentials for the cost |x - y|^2 / 2, with the log-scalings
/// of the Sinkhorn plan (log_a = 2 phi / eps, log_b = 2 psi / eps).
struct PotentialPair {
  PotentialPair(const Grid& source, const Grid& target)
      : phi(source), psi(target), log_a(source), log_b(target) {}

  Field phi;
  Field psi;
  double eps = 0.0;
  Field log_a;
  Field log_b;
};

struct TransportResult {
  TransportResult(const Grid& source, const Grid& target) : potentials(source, target) {}

  double w2_squared = 0.0;
  /// <f, mu> + <g, nu> at eps_final, before the self-transport correction.
  double dual_objective = 0.0;
  PotentialPair potentials;
  double marginal_residual_mu = 0.0;
  double marginal_residual_nu = 0.0;
  int iterations = 0;
};

/// Entropic estimate of W2^2(mu, nu) by annealed log-domain Sinkhorn. With
/// cfg.debias the value is OT_eps(mu, nu) - (OT_eps(mu, mu) + OT_eps(nu, nu)) / 2,
/// otherwise the dual objective <f, mu> + <g, nu> at eps_final.
TransportResult w2_entropic(const Density& mu, const Density& nu, const EntropicConfig& cfg);

struct ProxW2Result {
  Density rho;
  PotentialPair potentials;
  /// Entropic W2^2(rho0, rho) recovered from the returned potentials.
  double w2_estimate = 0.0;
  double marginal_residual = 0.0;
  int iterations = 0;
};

/// argmin_rho W2^2(rho0, rho) / (2 tau) + |rho - rho_bar|^2 / (2 lambda).
///
/// Scaling iterations with the hard first marginal rho0 and, on the second
/// marginal, an exact per-cell solve of the quadratic penalty. With a warm
/// start at eps_final the annealing is skipped.
ProxW2Result prox_w2(const Field& rho_bar, double lambda, double tau, const Density& rho0,
                     const EntropicConfig& cfg, const PotentialPair* warm_start = nullptr);

/// Unique root m > 0 of eps log(m / s) + 2 w (m - rho_bar_j).
double marginal_scalar_solve(double s, double rho_bar_j, double w, double eps);
/// Same root, in log form: returns log m given log s.
double marginal_scalar_solve_log(double log_s, double rho_bar_j, double w, double eps);

struct WeightedPoint {
  Point x;
  double mass = 0.0;
};

/// Exact discrete W2^2 by successive shortest paths on integer-scaled masses.
double w2_exact_oracle(std::span<const WeightedPoint> mu, std::span<const WeightedPoint> nu);

/// Support of a density as weighted cell centers (masses = value * h^2).
std::vector<WeightedPoint> to_point_set(const Density& rho);

/// psi / tau, the potential term of the optimality system for the 1/(2 tau)
/// weighted problem. The additive constant is left free.
Field extract_kantorovich(const PotentialPair& potentials, double tau);

}  // namespace tvw
