#pragma once

namespace tvw {

/// Closed-form quantities for the evolution of a uniform unit-mass ball.
struct BallParams {
  double r0 = 1.0;
  int d = 2;
  double tau = 0.0;

  void validate() const;

  /// 2 pi omega_{d-1} / omega_d, the surface constant in the literature's
  /// convention (kept for reference; the energy below uses the normalised
  /// constants).
  double surface_constant() const;
  /// W2^2 between concentric uniform balls is transport_coefficient * (r1-r0)^2.
  double transport_coefficient() const { return static_cast<double>(d) / (d + 2); }
  /// TV of the unit-mass uniform ball of radius r is tv_coefficient / r.
  double tv_coefficient() const { return static_cast<double>(d); }
};

/// Volume of the unit ball in R^d.
double unit_ball_volume(int d);

/// E(r1) = W2^2(ball r0, ball r1) / (2 tau) + TV(ball r1).
double ball_energy(double r1, const BallParams& p);
/// Derivative of ball_energy in r1.
double ball_energy_derivative(double r1, const BallParams& p);

/// The minimiser r1 >= r0 of ball_energy: root of r1^2 (r1 - r0) = (d + 2) tau.
double optimal_radius(const BallParams& p);

double w2_concentric_balls(double r0, double r1, int d);

}  // namespace tvw
