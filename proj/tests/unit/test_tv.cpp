#include <cmath>
#include <random>

#include "doctest.h"
#include "oracles.hpp"
#include "tvw/tv.hpp"

using namespace tvw;

namespace {

Field random_field(const Grid& g, std::mt19937_64& rng, double lo = -1.0, double hi = 1.0) {
  std::uniform_real_distribution<double> U(lo, hi);
  Field f(g);
  for (double& v : f.values()) v = U(rng);
  return f;
}

std::vector<double> to_vec(const Field& f) { return {f.values().begin(), f.values().end()}; }

}  // namespace

TEST_CASE("tv_value examples") {
  const Grid g = make_grid(16, {0, 0}, 1.0);
  CHECK(tv_value(Field(g)) == 0.0);
  Field one(g);
  one.at(7, 9) = 1.0;
  CHECK(tv_value(one) == doctest::Approx((2.0 + std::sqrt(2.0)) * g.spacing()).epsilon(1e-14));
  std::mt19937_64 rng(1);
  const Field u = random_field(g, rng);
  CHECK(tv_value(combine(2.0, u, 0.0, u)) == doctest::Approx(2.0 * tv_value(u)).epsilon(1e-13));
  CHECK(tv_value(u) == doctest::Approx(oracle::tv(to_vec(u), 16, 16, g.spacing())).epsilon(1e-12));
}

TEST_CASE("tv_value counts jumps on every side of the domain") {
  const Grid g = make_grid(32, {0, 0}, 1.0);
  const Field c(g, 1.0);
  const double h = g.spacing();
  // 4n - 2 unit axis jumps plus the high corner, where both jumps meet
  CHECK(tv_value(c) == doctest::Approx(h * (4.0 * 32 - 2.0 + std::sqrt(2.0))).epsilon(1e-14));
}

TEST_CASE("gradient and divergence are negative adjoints") {
  const Grid g = make_grid(12, {0, 0}, 1.5);
  std::mt19937_64 rng(2);
  const Field u = random_field(g, rng);
  DualField z(g);
  std::uniform_real_distribution<double> U(-1, 1);
  for (double& v : z.zx()) v = U(rng);
  for (double& v : z.zy()) v = U(rng);
  std::vector<double> gx, gy;
  gradient(u, gx, gy);
  double lhs = 0.0;
  for (std::size_t e = 0; e < gx.size(); ++e) lhs += gx[e] * z.zx()[e] + gy[e] * z.zy()[e];
  lhs *= g.cell_area();
  const double rhs = -dot(z.divergence(), u);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
  const auto od = oracle::div(z.zx(), z.zy(), 12, 12, g.spacing());
  const Field d = z.divergence();
  for (std::size_t k = 0; k < od.size(); ++k) CHECK(d[k] == doctest::Approx(od[k]));
}

TEST_CASE("prox_tv trivial limits") {
  const Grid g = make_grid(32, {0, 0}, 1.0);
  const ProxCertificate zero = prox_tv(Field(g), 0.5);
  CHECK(max_abs(zero.u) == 0.0);
  CHECK(zero.gap == 0.0);
  std::mt19937_64 rng(3);
  const Field f = random_field(g, rng);
  const ProxCertificate tiny = prox_tv(f, 1e-6, 1e-12, 20000);
  // |u - g| = lambda |div z| <= lambda (4 / h) |Omega|^(1/2)
  CHECK(l2_distance(tiny.u, f) <= 1e-6 * 4.0 / g.spacing());
  const ProxCertificate small = prox_tv(f, 1e-4, 1e-12, 20000);
  CHECK(l2_distance(small.u, f) > l2_distance(tiny.u, f));
  CHECK_THROWS_AS(prox_tv(f, 0.0), InvalidArgument);
}

TEST_CASE("prox_tv on a disk matches shrinkage and the primal-dual oracle") {
  const int n = 64;
  const Grid g = make_grid(n, {-1, -1}, 2.0);
  const double R = 0.5;
  const double lambda = 0.05;
  Field ind(g);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const Point c = g.cell_center(i, j);
      if (c.x * c.x + c.y * c.y <= R * R) ind.at(i, j) = 1.0;
    }
  }
  TvProxOptions opt;
  opt.tol = 1e-12;
  opt.max_iter = 100000;
  opt.require_convergence = false;
  const ProxCertificate cert = prox_tv(ind, lambda, opt);
  CHECK(cert.gap <= 1e-7);
  const SubgradientReport rep = check_subgradient(cert.u, cert.z, 1e-6);
  CHECK(rep.z_feasible);
  CHECK(rep.pairing_ok);
  const auto ref = oracle::rof_pdhg(to_vec(ind), n, n, g.spacing(), lambda, false, 20000);
  CHECK(oracle::l2_diff(to_vec(cert.u), ref, g.spacing()) <= 1e-4 * l2_norm(ind));
  // center value close to the continuum shrinkage 1 - 2 lambda / R (anisotropy
  // of the discrete perimeter allows a few percent)
  const double center = cert.u.at(n / 2, n / 2);
  CHECK(std::abs(center - (1.0 - 2.0 * lambda / R)) <= 0.05);
  // far outside stays zero
  CHECK(std::abs(cert.u.at(2, 2)) <= 1e-6);
}

TEST_CASE("prox_tv certificate, pairing and nonexpansiveness on random data") {
  const Grid g = make_grid(24, {0, 0}, 1.0);
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 4; ++trial) {
    const Field a = random_field(g, rng);
    const Field b = random_field(g, rng);
    const ProxCertificate pa = prox_tv(a, 0.05, 1e-12, 100000);
    const ProxCertificate pb = prox_tv(b, 0.05, 1e-12, 100000);
    CHECK(pa.converged);
    CHECK(pa.z.max_norm() <= 1.0 + 1e-14);
    const SubgradientReport rep = check_subgradient(pa.u, pa.z, 1e-8);
    CHECK(rep.pairing_residual <= 1e-8 * (1.0 + tv_value(pa.u)));
    CHECK(l2_distance(pa.u, pb.u) <= l2_distance(a, b) + 1e-8);
    // u = g + lambda div z
    const Field recon = combine(1.0, a, 0.05, pa.z.divergence());
    CHECK(l2_distance(recon, pa.u) <= 1e-12);
    const auto ref = oracle::rof_pdhg(to_vec(a), 24, 24, g.spacing(), 0.05, false, 20000);
    CHECK(oracle::l2_diff(to_vec(pa.u), ref, g.spacing()) <= 1e-5 * l2_norm(a));
  }
}

TEST_CASE("prox_tv sign decomposition") {
  const Grid g = make_grid(24, {0, 0}, 1.0);
  std::mt19937_64 rng(5);
  const Field a = random_field(g, rng);
  const ProxCertificate pc = prox_tv(a, 0.1, 1e-12, 100000);
  const Field p = combine(-1.0, pc.z.divergence(), 0.0, a);
  const Field up = positive_part(pc.u);
  const Field um = positive_part(combine(-1.0, pc.u, 0.0, a));
  const double delta = 10.0 * std::max(pc.gap, 1e-14);
  CHECK(dot(p, up) >= tv_value(up) - delta - 1e-12);
  CHECK(-dot(p, um) >= tv_value(um) - delta - 1e-12);
}

TEST_CASE("prox_tv ConvergenceError on budget exhaustion") {
  const Grid g = make_grid(32, {0, 0}, 1.0);
  std::mt19937_64 rng(6);
  const Field a = random_field(g, rng);
  CHECK_THROWS_AS(prox_tv(a, 1.0, 1e-15, 5), ConvergenceError);
  TvProxOptions opt;
  opt.tol = 1e-15;
  opt.max_iter = 5;
  opt.require_convergence = false;
  const ProxCertificate c = prox_tv(a, 1.0, opt);
  CHECK_FALSE(c.converged);
  CHECK(c.iterations == 5);
}

TEST_CASE("warm start does not change the answer") {
  const Grid g = make_grid(20, {0, 0}, 1.0);
  std::mt19937_64 rng(7);
  const Field a = random_field(g, rng);
  const ProxCertificate cold = prox_tv(a, 0.05, 1e-12, 100000);
  TvProxOptions opt;
  opt.tol = 1e-12;
  opt.max_iter = 100000;
  const ProxCertificate warm = prox_tv(a, 0.05, opt, &cold.z);
  CHECK(warm.iterations <= 10);
  CHECK(l2_distance(warm.u, cold.u) <= 1e-5);
}

TEST_CASE("rof_nonneg") {
  const Grid g = make_grid(8, {0, 0}, 1.0);
  std::mt19937_64 rng(8);
  const Field neg = random_field(g, rng, -2.0, -0.1);
  const Field r = rof_nonneg(neg, 0.1);
  CHECK(max_abs(r) == 0.0);
  const auto ref = oracle::rof_pdhg(to_vec(neg), 8, 8, g.spacing(), 0.1, true, 5000);
  for (double v : ref) CHECK(std::abs(v) <= 1e-10);

  // constraint inactive
  const Field pos = random_field(g, rng, 2.0, 3.0);
  TvProxOptions o;
  o.tol = 1e-12;
  o.max_iter = 100000;
  CHECK(l2_distance(rof_nonneg(pos, 0.05, o), prox_tv(pos, 0.05, o).u) == 0.0);

  // random 32^2 against the constrained oracle
  const Grid g32 = make_grid(32, {0, 0}, 1.0);
  Field mix = random_field(g32, rng);
  for (int j = 0; j < 32; ++j) {
    for (int i = 0; i < 16; ++i) mix.at(i, j) += 0.8;
  }
  const Field rn = rof_nonneg(mix, 0.05, o);
  const auto cref = oracle::rof_pdhg(to_vec(mix), 32, 32, g32.spacing(), 0.05, true, 40000);
  const double nrm = oracle::l2(cref, g32.spacing());
  CHECK(oracle::l2_diff(to_vec(rn), cref, g32.spacing()) <= 1e-6 * nrm);
}

TEST_CASE("check_subgradient") {
  const Grid g = make_grid(16, {0, 0}, 1.0);
  const SubgradientReport zero = check_subgradient(Field(g), DualField(g), 1e-12);
  CHECK(zero.z_excess == 0.0);
  CHECK(zero.pairing_residual == 0.0);
  CHECK(zero.z_feasible);
  std::mt19937_64 rng(9);
  Field a = random_field(g, rng);
  for (double& v : a.values()) v += 1.0;
  const ProxCertificate pc = prox_tv(a, 0.05, 1e-12, 100000);
  CHECK(pc.z.max_norm() == doctest::Approx(1.0));
  CHECK(check_subgradient(pc.u, pc.z, 1e-8).pairing_ok);
  const SubgradientReport bad = check_subgradient(pc.u, pc.z.scaled(1.5), 1e-8);
  CHECK_FALSE(bad.z_feasible);
  CHECK(bad.z_excess > 0.4);
}
