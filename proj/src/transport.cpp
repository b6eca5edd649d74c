#include "tvw/transport.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "gibbs_kernel.hpp"

namespace tvw {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> log_masses(const Density& rho) {
  const double area = rho.grid().cell_area();
  std::vector<double> out(rho.size());
  for (std::size_t k = 0; k < rho.size(); ++k) {
    out[k] = rho[k] > 0.0 ? std::log(rho[k] * area) : kNegInf;
  }
  return out;
}

std::vector<double> eps_levels(const EntropicConfig& cfg, bool skip_annealing) {
  std::vector<double> levels;
  if (!skip_annealing) {
    for (double e = cfg.eps_start; e > cfg.eps_final; e *= cfg.anneal_factor) levels.push_back(e);
  }
  levels.push_back(cfg.eps_final);
  return levels;
}

// f_i = -eps log sum_j exp(logw_j + (g_j - c_ij)/eps)
void c_transform(const detail::GibbsKernel& kernel, std::span<const double> logw,
                 std::span<const double> g, std::vector<double>& scratch, std::span<double> f) {
  const double eps = kernel.eps();
  scratch.resize(g.size());
  for (std::size_t k = 0; k < g.size(); ++k) scratch[k] = logw[k] + g[k] / eps;
  kernel.apply(scratch, f);
  for (double& v : f) v *= -eps;
}

// sum_i mu_i |exp((f_i - f_new_i)/eps) - 1|: row violation of the plan (f, g)
// once f_new is the exact row-balancing update.
double row_violation(std::span<const double> logmu, std::span<const double> f,
                     std::span<const double> f_new, double eps) {
  double r = 0.0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (logmu[i] == kNegInf) continue;
    r += std::exp(logmu[i]) * std::abs(std::expm1((f[i] - f_new[i]) / eps));
  }
  return r;
}

// f <- f + omega (f_new - f); infinite entries are copied.
void relax_into(std::vector<double>& f, const std::vector<double>& f_new, double omega) {
  for (std::size_t i = 0; i < f.size(); ++i) {
    f[i] = std::isfinite(f[i]) && std::isfinite(f_new[i]) ? f[i] + omega * (f_new[i] - f[i]) : f_new[i];
  }
}

PotentialPair make_potentials(const Grid& gmu, const Grid& gnu, std::span<const double> f,
                              std::span<const double> g, double eps) {
  PotentialPair p(gmu, gnu);
  p.eps = eps;
  for (std::size_t i = 0; i < f.size(); ++i) {
    p.phi[i] = 0.5 * f[i];
    p.log_a[i] = f[i] / eps;
  }
  for (std::size_t j = 0; j < g.size(); ++j) {
    p.psi[j] = 0.5 * g[j];
    p.log_b[j] = g[j] / eps;
  }
  return p;
}

// Shift sigma with sum_j exp(t_j(sigma)) = target, where t_j(sigma) is the
// column solve at log S_j + sigma, from the first-order model
// t_j(sigma) ~ t_j + sigma eps / (eps + 2 w e^{t_j}). The model sum is convex
// and increasing in sigma, so Newton from the right of the root is monotone.
double mass_shift(std::span<const double> t, double target, double w, double eps) {
  double total = 0.0;
  for (double v : t) total += std::exp(v);
  if (!(total > 0.0) || !std::isfinite(total)) return 0.0;
  std::vector<double> slope(t.size());
  for (std::size_t j = 0; j < t.size(); ++j) slope[j] = eps / (eps + 2.0 * w * std::exp(t[j]));
  const auto model = [&](double s, double& deriv) {
    double m = 0.0;
    deriv = 0.0;
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (!std::isfinite(t[j])) continue;
      const double e = std::exp(t[j] + s * slope[j]);
      m += e;
      deriv += e * slope[j];
    }
    return m - target;
  };
  double deriv = 0.0;
  double s = 0.0;
  double val = model(s, deriv);
  if (std::abs(val) <= 1e-14 * target) return 0.0;
  if (val < 0.0) {
    // step right until the model exceeds the target
    double step = 1.0;
    while (val < 0.0 && step < 1e6) {
      s += step;
      step *= 2.0;
      val = model(s, deriv);
    }
  }
  for (int it = 0; it < 60 && val > 1e-14 * target; ++it) {
    s -= val / deriv;
    val = model(s, deriv);
  }
  return std::isfinite(s) ? s : 0.0;
}

}  // namespace

EntropicConfig EntropicConfig::for_grid(const Grid& grid) {
  const double d2 = grid.diameter() * grid.diameter();
  EntropicConfig cfg;
  cfg.eps_start = 0.1 * d2;
  cfg.eps_final = 1e-4 * d2;
  return cfg;
}

void EntropicConfig::validate() const {
  if (!(eps_final > 0.0) || !(eps_start >= eps_final)) {
    throw InvalidArgument("EntropicConfig: need 0 < eps_final <= eps_start");
  }
  if (!(anneal_factor > 0.0 && anneal_factor < 1.0)) {
    throw InvalidArgument("EntropicConfig: anneal_factor must lie in (0, 1)");
  }
  if (!(overrelax >= 1.0 && overrelax < 2.0)) {
    throw InvalidArgument("EntropicConfig: overrelax must lie in [1, 2)");
  }
  if (!(marginal_tol > 0.0) || !(level_tol > 0.0) || inner_max_iter <= 0) {
    throw InvalidArgument("EntropicConfig: tolerances and iteration budget must be positive");
  }
}

namespace {

struct DualSolve {
  std::vector<double> f;
  std::vector<double> g;
  double eps = 0.0;
  double value = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

// Annealed log-domain Sinkhorn; value is <f, mu> + <g, nu> at the last level.
DualSolve sinkhorn_dual(const Density& mu, const Density& nu, const EntropicConfig& cfg) {
  const auto logmu = log_masses(mu);
  const auto lognu = log_masses(nu);
  DualSolve out;
  out.f.assign(mu.size(), 0.0);
  out.g.assign(nu.size(), 0.0);
  std::vector<double>& f = out.f;
  std::vector<double>& g = out.g;
  std::vector<double> f_new(mu.size());
  std::vector<double> scratch;

  double residual = std::numeric_limits<double>::infinity();
  double eps = cfg.eps_final;
  const auto levels = eps_levels(cfg, false);
  for (std::size_t level = 0; level < levels.size(); ++level) {
    eps = levels[level];
    const bool last = level + 1 == levels.size();
    const double tol = last ? cfg.marginal_tol : std::max(cfg.marginal_tol, cfg.level_tol);
    const detail::GibbsKernel to_mu(nu.grid(), mu.grid(), eps);
    const detail::GibbsKernel to_nu(mu.grid(), nu.grid(), eps);
    c_transform(to_mu, lognu, g, scratch, f);
    int it = 0;
    for (; it < cfg.inner_max_iter; ++it) {
      c_transform(to_nu, logmu, f, scratch, g);
      c_transform(to_mu, lognu, g, scratch, f_new);
      residual = row_violation(logmu, f, f_new, eps);
      if (residual <= tol) break;
      relax_into(f, f_new, cfg.overrelax);
    }
    out.iterations += it + 1;
    if (it == cfg.inner_max_iter) {
      throw ConvergenceError("w2_entropic: marginal violation " + std::to_string(residual) +
                                 " at eps=" + std::to_string(eps),
                             residual, out.iterations);
    }
  }

  long double value = 0.0L;
  const double amu = mu.grid().cell_area();
  const double anu = nu.grid().cell_area();
  for (std::size_t i = 0; i < f.size(); ++i) value += static_cast<long double>(f[i]) * mu[i] * amu;
  for (std::size_t j = 0; j < g.size(); ++j) value += static_cast<long double>(g[j]) * nu[j] * anu;
  out.eps = eps;
  out.value = static_cast<double>(value);
  out.residual = residual;
  return out;
}

// OT_eps(mu, mu): the optimal potentials coincide, so iterate the averaged
// fixed point f <- (f + T f) / 2 of the symmetric c-transform instead.
DualSolve sinkhorn_self(const Density& mu, const EntropicConfig& cfg) {
  const auto logmu = log_masses(mu);
  DualSolve out;
  out.f.assign(mu.size(), 0.0);
  std::vector<double>& f = out.f;
  std::vector<double> tf(mu.size());
  std::vector<double> scratch;
  double residual = std::numeric_limits<double>::infinity();
  double eps = cfg.eps_final;
  const auto levels = eps_levels(cfg, false);
  for (std::size_t level = 0; level < levels.size(); ++level) {
    eps = levels[level];
    const bool last = level + 1 == levels.size();
    const double tol = last ? cfg.marginal_tol : std::max(cfg.marginal_tol, cfg.level_tol);
    const detail::GibbsKernel kernel(mu.grid(), mu.grid(), eps);
    int it = 0;
    for (; it < cfg.inner_max_iter; ++it) {
      c_transform(kernel, logmu, f, scratch, tf);
      residual = row_violation(logmu, f, tf, eps);
      if (residual <= tol) break;
      for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::isfinite(f[i]) ? 0.5 * (f[i] + tf[i]) : tf[i];
    }
    out.iterations += it + 1;
    if (it == cfg.inner_max_iter) {
      throw ConvergenceError("w2_entropic: self-transport violation " + std::to_string(residual) +
                                 " at eps=" + std::to_string(eps),
                             residual, out.iterations);
    }
  }
  long double value = 0.0L;
  for (std::size_t i = 0; i < f.size(); ++i) value += static_cast<long double>(f[i]) * mu[i];
  out.eps = eps;
  out.value = static_cast<double>(2.0L * value * mu.grid().cell_area());
  out.residual = residual;
  return out;
}

}  // namespace

TransportResult w2_entropic(const Density& mu, const Density& nu, const EntropicConfig& cfg) {
  cfg.validate();
  const double mmu = mass(mu);
  const double mnu = mass(nu);
  if (std::abs(mmu - mnu) > 1e-9 * std::max(1.0, mmu)) {
    throw InvalidArgument("w2_entropic: mass mismatch " + std::to_string(mmu) + " vs " +
                          std::to_string(mnu));
  }
  if (!(mmu > 0.0)) throw InvalidArgument("w2_entropic: zero mass");

  const DualSolve cross = sinkhorn_dual(mu, nu, cfg);
  TransportResult result(mu.grid(), nu.grid());
  result.dual_objective = cross.value;
  result.w2_squared = cross.value;
  result.iterations = cross.iterations;
  if (cfg.debias) {
    const DualSolve self_mu = sinkhorn_self(mu, cfg);
    const DualSolve self_nu = sinkhorn_self(nu, cfg);
    result.w2_squared -= 0.5 * (self_mu.value + self_nu.value);
    result.iterations += self_mu.iterations + self_nu.iterations;
  }
  result.potentials = make_potentials(mu.grid(), nu.grid(), cross.f, cross.g, cross.eps);
  result.marginal_residual_mu = cross.residual;
  result.marginal_residual_nu = 0.0;
  return result;
}

double marginal_scalar_solve_log(double log_s, double rho_bar_j, double w, double eps) {
  // phi(t) = eps t + 2 w e^t - R, R = eps log_s + 2 w rho_bar, is convex and
  // increasing in t = log m. The root satisfies t <= R / eps, and t <= log(R / 2w)
  // when t >= 0, so t0 = min(R / eps, max(0, log(R / 2w))) lies right of it and
  // Newton decreases monotonically from there.
  if (log_s == -std::numeric_limits<double>::infinity()) return log_s;
  const double rhs = eps * log_s + 2.0 * w * rho_bar_j;
  const auto phi = [&](double t) { return eps * t + 2.0 * w * std::exp(t) - rhs; };
  double t = rhs / eps;
  if (rhs > 0.0) t = std::min(t, std::max(0.0, std::log(rhs / (2.0 * w))));
  for (int it = 0; it < 200; ++it) {
    const double val = phi(t);
    if (val <= 0.0) break;
    const double step = val / (eps + 2.0 * w * std::exp(t));
    t -= step;
    if (step <= 1e-15 * (1.0 + std::abs(t))) break;
  }
  const double scale = eps * (1.0 + std::abs(t)) + 2.0 * w * (std::exp(t) + std::abs(rho_bar_j));
  if (std::isfinite(t) && std::abs(phi(t)) <= 1e-12 * scale) return t;
  // Bisection fallback on a bracket [lo, hi] with phi(lo) < 0 <= phi(hi).
  double hi = rhs / eps;
  if (rhs > 0.0) hi = std::min(hi, std::max(0.0, std::log(rhs / (2.0 * w))));
  double lo = hi - 1.0;
  while (phi(lo) > 0.0) lo -= 2.0 * (hi - lo);
  for (int it = 0; it < 2000 && hi - lo > 1e-15 * (1.0 + std::abs(lo)); ++it) {
    const double mid = 0.5 * (lo + hi);
    (phi(mid) > 0.0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double marginal_scalar_solve(double s, double rho_bar_j, double w, double eps) {
  if (!(s > 0.0) || !(w > 0.0) || !(eps > 0.0)) {
    throw InvalidArgument("marginal_scalar_solve: s, w, eps must be positive");
  }
  return std::exp(marginal_scalar_solve_log(std::log(s), rho_bar_j, w, eps));
}

ProxW2Result prox_w2(const Field& rho_bar, double lambda, double tau, const Density& rho0,
                     const EntropicConfig& cfg, const PotentialPair* warm_start) {
  cfg.validate();
  if (!(lambda > 0.0) || !(tau > 0.0)) throw InvalidArgument("prox_w2: lambda, tau must be positive");
  if (!rho_bar.all_finite()) throw InvalidArgument("prox_w2: non-finite rho_bar");
  const double m0 = mass(rho0);
  if (!(m0 > 0.0)) throw InvalidArgument("prox_w2: rho0 has zero mass");

  const Grid& gmu = rho0.grid();
  const Grid& gnu = rho_bar.grid();
  const double w = tau / lambda;
  const double log_area = std::log(gnu.cell_area());
  const auto logmu = log_masses(rho0);
  const std::vector<double> logref(gnu.size(), log_area);

  std::vector<double> f(gmu.size(), 0.0);
  std::vector<double> g(gnu.size(), 0.0);
  bool warm = false;
  if (warm_start != nullptr && warm_start->psi.grid() == gnu && warm_start->phi.grid() == gmu) {
    for (std::size_t j = 0; j < g.size(); ++j) g[j] = 2.0 * warm_start->psi[j];
    warm = std::abs(warm_start->eps - cfg.eps_final) <= 1e-12 * cfg.eps_final;
  }
  std::vector<double> f_new(gmu.size());
  std::vector<double> log_s(gnu.size());
  std::vector<double> t_col(gnu.size());
  std::vector<double> scratch;
  const double target_mass = m0 / gnu.cell_area();

  ProxW2Result result{Density(gnu, std::vector<double>(gnu.size(), 0.0)), PotentialPair(gmu, gnu)};
  double residual = std::numeric_limits<double>::infinity();
  double eps = cfg.eps_final;
  const auto levels = eps_levels(cfg, warm);
  for (std::size_t level = 0; level < levels.size(); ++level) {
    eps = levels[level];
    const bool last = level + 1 == levels.size();
    const double tol = last ? cfg.marginal_tol : std::max(cfg.marginal_tol, cfg.level_tol);
    const detail::GibbsKernel to_mu(gnu, gmu, eps);
    const detail::GibbsKernel to_nu(gmu, gnu, eps);
    c_transform(to_mu, logref, g, scratch, f);
    int it = 0;
    for (; it < cfg.inner_max_iter; ++it) {
      // log S_j = log sum_i mu_i exp((f_i - c_ij)/eps); the second marginal is
      // h^2 S_j exp(g_j/eps), balanced against the quadratic penalty.
      scratch.resize(f.size());
      for (std::size_t i = 0; i < f.size(); ++i) scratch[i] = logmu[i] + f[i] / eps;
      to_nu.apply(scratch, log_s);
      for (std::size_t j = 0; j < g.size(); ++j) t_col[j] = marginal_scalar_solve_log(log_s[j], rho_bar[j], w, eps);
      // Translation step: shifting f by eps * sigma moves every log S_j by
      // sigma; choose sigma so that the columns carry the mass of rho0. This
      // removes the slowly contracting constant mode of the scaling iteration.
      const double sigma = mass_shift(t_col, target_mass, w, eps);
      if (sigma != 0.0) {
        for (std::size_t i = 0; i < f.size(); ++i) f[i] += eps * sigma;
        for (std::size_t j = 0; j < g.size(); ++j) {
          log_s[j] += sigma;
          t_col[j] = marginal_scalar_solve_log(log_s[j], rho_bar[j], w, eps);
        }
      }
      for (std::size_t j = 0; j < g.size(); ++j) g[j] = eps * (t_col[j] - log_s[j]);
      c_transform(to_mu, logref, g, scratch, f_new);
      residual = row_violation(logmu, f, f_new, eps);
      if (residual <= tol) {
        f.swap(f_new);
        break;
      }
      relax_into(f, f_new, cfg.overrelax);
    }
    result.iterations += std::min(it + 1, cfg.inner_max_iter);
    if (it == cfg.inner_max_iter) {
      throw ConvergenceError("prox_w2: marginal violation " + std::to_string(residual) +
                                 " at eps=" + std::to_string(eps),
                             residual, result.iterations);
    }
  }

  // f now balances the rows exactly; read the second marginal off that plan.
  scratch.resize(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) scratch[i] = logmu[i] + f[i] / eps;
  detail::GibbsKernel(gmu, gnu, eps).apply(scratch, log_s);
  std::vector<double> rho(gnu.size());
  long double value = 0.0L;
  for (std::size_t j = 0; j < g.size(); ++j) {
    rho[j] = std::exp(g[j] / eps + log_s[j]);
    if (!std::isfinite(rho[j])) {
      throw ConvergenceError("prox_w2: non-finite marginal", residual, result.iterations);
    }
  }
  const double anu = gnu.cell_area();
  const double amu = gmu.cell_area();
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (rho0[i] > 0.0) value += static_cast<long double>(f[i]) * rho0[i] * amu;
  }
  for (std::size_t j = 0; j < g.size(); ++j) {
    if (rho[j] > 0.0) value += static_cast<long double>(g[j] - eps * std::log(rho[j])) * rho[j] * anu;
  }
  result.rho = Density(gnu, std::move(rho));
  result.potentials = make_potentials(gmu, gnu, f, g, eps);
  result.w2_estimate = static_cast<double>(value);
  result.marginal_residual = residual;
  return result;
}

std::vector<WeightedPoint> to_point_set(const Density& rho) {
  std::vector<WeightedPoint> pts;
  const double area = rho.grid().cell_area();
  for (std::size_t k = 0; k < rho.size(); ++k) {
    if (rho[k] > 0.0) pts.push_back({rho.grid().cell_center(k), rho[k] * area});
  }
  return pts;
}

namespace {

// Integer supplies summing exactly to kScale.
std::vector<std::int64_t> integer_masses(std::span<const WeightedPoint> pts, double total,
                                         std::int64_t scale) {
  std::vector<std::int64_t> q(pts.size());
  std::int64_t sum = 0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    q[i] = std::llround(pts[i].mass / total * static_cast<double>(scale));
    sum += q[i];
  }
  if (!q.empty()) {
    const auto big = std::max_element(q.begin(), q.end()) - q.begin();
    q[big] += scale - sum;
    if (q[big] < 0) throw InvalidArgument("w2_exact_oracle: mass rounding failed");
  }
  return q;
}

}  // namespace

double w2_exact_oracle(std::span<const WeightedPoint> mu, std::span<const WeightedPoint> nu) {
  constexpr std::size_t kMaxSupport = 64;
  constexpr std::int64_t kScale = 1'000'000'000;
  if (mu.empty() || nu.empty()) throw InvalidArgument("w2_exact_oracle: empty support");
  if (mu.size() > kMaxSupport || nu.size() > kMaxSupport) {
    throw InvalidArgument("w2_exact_oracle: support larger than 64 points");
  }
  double tmu = 0.0;
  double tnu = 0.0;
  for (const auto& p : mu) {
    if (!(p.mass >= 0.0)) throw InvalidArgument("w2_exact_oracle: negative mass");
    tmu += p.mass;
  }
  for (const auto& p : nu) {
    if (!(p.mass >= 0.0)) throw InvalidArgument("w2_exact_oracle: negative mass");
    tnu += p.mass;
  }
  if (!(tmu > 0.0) || std::abs(tmu - tnu) > 1e-9 * tmu) {
    throw InvalidArgument("w2_exact_oracle: mass mismatch");
  }
  const auto supply = integer_masses(mu, tmu, kScale);
  const auto demand = integer_masses(nu, tnu, kScale);

  // Residual network: source S, sources 0..m-1, sinks m..m+n-1, sink T.
  const int m = static_cast<int>(mu.size());
  const int n = static_cast<int>(nu.size());
  const int S = m + n;
  const int T = S + 1;
  const int V = T + 1;
  std::vector<std::int64_t> flow(static_cast<std::size_t>(m) * n, 0);
  std::vector<std::int64_t> left_supply = supply;
  std::vector<std::int64_t> left_demand = demand;
  std::vector<double> cost(static_cast<std::size_t>(m) * n);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) cost[static_cast<std::size_t>(i) * n + j] = squared_distance(mu[i].x, nu[j].x);
  }

  // Dense Dijkstra with Johnson potentials over the bipartite residual graph;
  // all initial arc costs are >= 0, so zero potentials are valid.
  std::vector<double> pot(V, 0.0);
  std::int64_t remaining = kScale;
  std::vector<double> dist(V);
  std::vector<int> parent(V);
  std::vector<char> done(V);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  while (remaining > 0) {
    std::fill(dist.begin(), dist.end(), kInf);
    std::fill(parent.begin(), parent.end(), -1);
    std::fill(done.begin(), done.end(), 0);
    dist[S] = 0.0;
    for (int round = 0; round < V; ++round) {
      int u = -1;
      for (int v = 0; v < V; ++v) {
        if (!done[v] && dist[v] < kInf && (u < 0 || dist[v] < dist[u])) u = v;
      }
      if (u < 0) break;
      done[u] = 1;
      const auto relax = [&](int v, double c) {
        const double rc = std::max(0.0, c + pot[u] - pot[v]);
        if (dist[u] + rc < dist[v]) {
          dist[v] = dist[u] + rc;
          parent[v] = u;
        }
      };
      if (u == S) {
        for (int i = 0; i < m; ++i) {
          if (left_supply[i] > 0) relax(i, 0.0);
        }
      } else if (u < m) {
        for (int j = 0; j < n; ++j) relax(m + j, cost[static_cast<std::size_t>(u) * n + j]);
      } else if (u < m + n) {
        const int j = u - m;
        for (int i = 0; i < m; ++i) {
          if (flow[static_cast<std::size_t>(i) * n + j] > 0) relax(i, -cost[static_cast<std::size_t>(i) * n + j]);
        }
        if (left_demand[j] > 0) relax(T, 0.0);
      }
    }
    if (dist[T] == kInf) throw InvalidArgument("w2_exact_oracle: no augmenting path");
    for (int v = 0; v < V; ++v) pot[v] += std::min(dist[v], dist[T]);
    // Bottleneck along the path T <- j <- i <- ... <- S.
    std::int64_t delta = remaining;
    for (int v = T; v != S; v = parent[v]) {
      const int u = parent[v];
      if (u == S) delta = std::min(delta, left_supply[v]);
      else if (v == T) delta = std::min(delta, left_demand[u - m]);
      else if (u >= m && v < m) delta = std::min(delta, flow[static_cast<std::size_t>(v) * n + (u - m)]);
    }
    for (int v = T; v != S; v = parent[v]) {
      const int u = parent[v];
      if (u == S) left_supply[v] -= delta;
      else if (v == T) left_demand[u - m] -= delta;
      else if (u < m) flow[static_cast<std::size_t>(u) * n + (v - m)] += delta;
      else flow[static_cast<std::size_t>(v) * n + (u - m)] -= delta;
    }
    remaining -= delta;
  }

  long double total = 0.0L;
  for (std::size_t k = 0; k < flow.size(); ++k) {
    total += static_cast<long double>(flow[k]) * static_cast<long double>(cost[k]);
  }
  return static_cast<double>(total / static_cast<long double>(kScale) * static_cast<long double>(tmu));
}

Field extract_kantorovich(const PotentialPair& potentials, double tau) {
  if (!(tau > 0.0)) throw InvalidArgument("extract_kantorovich: tau must be positive");
  Field out = potentials.psi;
  for (double& v : out.values()) v /= tau;
  return out;
}

}  // namespace tvw
