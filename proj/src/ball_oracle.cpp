#include "tvw/ball_oracle.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "tvw/common.hpp"

namespace tvw {

void BallParams::validate() const {
  if (!(r0 > 0.0)) throw InvalidArgument("BallParams: r0 must be positive");
  if (d < 1) throw InvalidArgument("BallParams: d must be >= 1");
  if (!(tau >= 0.0)) throw InvalidArgument("BallParams: tau must be nonnegative");
}

double unit_ball_volume(int d) {
  if (d < 0) throw InvalidArgument("unit_ball_volume: negative dimension");
  return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double BallParams::surface_constant() const {
  return 2.0 * std::numbers::pi * unit_ball_volume(d - 1) / unit_ball_volume(d);
}

double ball_energy(double r1, const BallParams& p) {
  p.validate();
  if (!(r1 > 0.0)) throw InvalidArgument("ball_energy: r1 must be positive");
  const double tv = p.tv_coefficient() / r1;
  if (p.tau == 0.0) return r1 == p.r0 ? tv : std::numeric_limits<double>::infinity();
  const double dr = r1 - p.r0;
  return p.transport_coefficient() * dr * dr / (2.0 * p.tau) + tv;
}

double ball_energy_derivative(double r1, const BallParams& p) {
  p.validate();
  if (!(r1 > 0.0)) throw InvalidArgument("ball_energy_derivative: r1 must be positive");
  if (!(p.tau > 0.0)) throw InvalidArgument("ball_energy_derivative: tau must be positive");
  return p.transport_coefficient() * (r1 - p.r0) / p.tau - p.tv_coefficient() / (r1 * r1);
}

double optimal_radius(const BallParams& p) {
  p.validate();
  if (p.tau == 0.0) return p.r0;
  // Stationarity of ball_energy: r^2 (r - r0) = (d + 2) tau, increasing for
  // r > r0, bracketed by [r0, r0 + (d + 2) tau / r0^2].
  const double rhs = (p.d + 2) * p.tau;
  const auto h = [&](double r) { return r * r * (r - p.r0) - rhs; };
  double lo = p.r0;
  double hi = p.r0 + rhs / (p.r0 * p.r0);
  for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (h(mid) > 0.0 ? hi : lo) = mid;
  }
  double r = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const double dh = 3.0 * r * r - 2.0 * p.r0 * r;
    const double next = r - h(r) / dh;
    if (next > lo && next < hi) r = next;
  }
  return r;
}

double w2_concentric_balls(double r0, double r1, int d) {
  if (!(r0 > 0.0) || !(r1 > 0.0)) throw InvalidArgument("w2_concentric_balls: radii must be positive");
  if (d < 1) throw InvalidArgument("w2_concentric_balls: d must be >= 1");
  return (r1 - r0) * (r1 - r0) * d / (d + 2.0);
}

}  // namespace tvw
