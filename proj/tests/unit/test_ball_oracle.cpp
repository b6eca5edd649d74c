#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.hpp"
#include "tvw/ball_oracle.hpp"
#include "tvw/grid.hpp"
#include "tvw/transport.hpp"
#include "tvw/tv.hpp"

using namespace tvw;

TEST_CASE("ball_energy examples") {
  BallParams p;
  p.r0 = 1.3;
  p.tau = 0.1;
  CHECK(ball_energy(1.3, p) == doctest::Approx(2.0 / 1.3).epsilon(1e-15));
  // TV of the unit-mass disk of radius 1: perimeter 2 pi times height 1 / pi
  p.r0 = 1.0;
  p.tau = 0.2;
  CHECK(ball_energy(1.0, p) == doctest::Approx(2.0 * std::numbers::pi / std::numbers::pi));
  CHECK(ball_energy(1e-8, p) > 1e7);
  CHECK(ball_energy(1e4, p) > 1e7);
  CHECK_THROWS_AS(ball_energy(0.0, p), InvalidArgument);
  p.tau = -1.0;
  CHECK_THROWS_AS(ball_energy(1.0, p), InvalidArgument);
}

TEST_CASE("ball TV coefficient agrees with the discrete TV of a fine disk") {
  const Grid g = make_grid(512, {-2, -2}, 4.0);
  const Density d = rasterize_ball(g, {0, 0}, 1.0);
  // a sharp digital disk: the isotropic discrete TV lies between the
  // continuum value and the anisotropic (4 / pi) overestimate
  const double tv = tv_value(d.field());
  CHECK(tv > 2.0);
  CHECK(tv < 2.0 * 4.0 / std::numbers::pi);
}

TEST_CASE("optimal_radius") {
  BallParams p;
  p.r0 = 1.0;
  p.tau = 0.0;
  CHECK(optimal_radius(p) == 1.0);

  p.tau = 0.2;
  const double r = optimal_radius(p);
  const double cubic = oracle::bisect([](double x) { return x * x * (x - 1.0) - 0.8; }, 1.0, 2.0);
  CHECK(r == doctest::Approx(cubic).epsilon(1e-12));
  CHECK(r == doctest::Approx(1.405167).epsilon(1e-6));
  const double gs = oracle::golden_section([&](double x) { return ball_energy(x, p); }, 0.5, 3.0);
  CHECK(r == doctest::Approx(gs).epsilon(1e-7));

  double prev = 1.0;
  for (double tau = 0.01; tau <= 1.0; tau += 0.01) {
    p.tau = tau;
    const double rt = optimal_radius(p);
    CHECK(rt > prev);
    prev = rt;
  }
}

TEST_CASE("optimal_radius is the argmin with vanishing derivative") {
  for (double r0 : {0.5, 1.0, 2.0}) {
    for (double tau : {0.05, 0.1, 0.2, 0.7}) {
      BallParams p;
      p.r0 = r0;
      p.tau = tau;
      const double r = optimal_radius(p);
      const double gs = oracle::golden_section([&](double x) { return ball_energy(x, p); }, 0.1 * r0,
                                               10.0 * r0 + 10.0);
      CHECK(std::abs(r - gs) <= 1e-7 * r);
      const double scale = p.tv_coefficient() / (r * r);
      CHECK(std::abs(ball_energy_derivative(r, p)) <= 1e-8 * scale);
      const double dh = 1e-6 * r;
      const double fd = (ball_energy(r + dh, p) - ball_energy(r - dh, p)) / (2 * dh);
      CHECK(std::abs(fd) <= 1e-6 * scale);
    }
  }
}

TEST_CASE("w2_concentric_balls") {
  CHECK(w2_concentric_balls(0.7, 0.7, 2) == 0.0);
  CHECK(w2_concentric_balls(1.0, 0.5, 2) == doctest::Approx(0.125).epsilon(1e-15));
  CHECK(w2_concentric_balls(0.5, 1.0, 2) == w2_concentric_balls(1.0, 0.5, 2));
  // radial map T = (r1/r0) id on coarse rasterisations, against the exact solver
  const Grid g = make_grid(10, {-0.6, -0.6}, 1.2);
  const Density a = rasterize_ball(g, {0, 0}, 0.5);
  const Density b = rasterize_ball(g, {0, 0}, 0.25);
  const double exact = w2_exact_oracle(to_point_set(a), to_point_set(b));
  // radii stand in for the rasterised second moments
  const double ra = std::sqrt(2.0 * second_moment(a, {0, 0}));
  const double rb = std::sqrt(2.0 * second_moment(b, {0, 0}));
  CHECK(exact == doctest::Approx(w2_concentric_balls(ra, rb, 2)).epsilon(0.1));
}

TEST_CASE("unit_ball_volume") {
  CHECK(unit_ball_volume(0) == doctest::Approx(1.0));
  CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
  CHECK(unit_ball_volume(2) == doctest::Approx(std::numbers::pi));
  CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * std::numbers::pi / 3.0));
}
