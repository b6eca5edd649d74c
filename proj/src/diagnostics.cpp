#include "tvw/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

namespace tvw {

std::vector<std::pair<std::string, double>> ELReport::to_key_values() const {
  return {{"calibration", calibration}, {"theta", theta},       {"r_pde", r_pde},
          {"r_compl", r_compl},         {"r_nonneg", r_nonneg}, {"r_zbound", r_zbound},
          {"r_pairing", r_pairing},     {"beta_inf", beta_inf}, {"tv_rho1", tv_rho1},
          {"mass_rho1", mass_rho1},     {"rof_discrepancy", rof_discrepancy}};
}

ELReport assemble_el(const Density& rho1, const DualField& z, const Field& psi, double tau,
                     double theta) {
  if (!(tau > 0.0)) throw InvalidArgument("assemble_el: tau must be positive");
  if (!(rho1.grid() == z.grid()) || !(rho1.grid() == psi.grid())) {
    throw InvalidArgument("assemble_el: grid mismatch");
  }
  const Grid& grid = rho1.grid();
  const Field div = z.divergence();
  double rmax = 0.0;
  for (double v : rho1.values()) rmax = std::max(rmax, v);
  if (!(rmax > 0.0)) throw InvalidArgument("assemble_el: empty support");

  // C / tau = -sum_S rho (psi / tau - div z) / sum_S rho.
  double num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k < rho1.size(); ++k) {
    if (rho1[k] > theta * rmax) {
      num += rho1[k] * (psi[k] / tau - div[k]);
      den += rho1[k];
    }
  }
  if (!(den > 0.0)) throw InvalidArgument("assemble_el: empty calibration set");

  ELReport r{Field(grid), Field(grid)};
  r.theta = theta;
  r.calibration = -tau * num / den;
  double pde = 0.0;
  double compl_sum = 0.0;
  for (std::size_t k = 0; k < rho1.size(); ++k) {
    r.psi_calibrated[k] = psi[k] + r.calibration;
    r.beta[k] = r.psi_calibrated[k] / tau - div[k];
    const double e = r.psi_calibrated[k] / tau - div[k] - r.beta[k];
    pde += e * e;
    compl_sum += r.beta[k] * rho1[k];
    r.r_nonneg = std::max(r.r_nonneg, -r.beta[k]);
    r.beta_inf = std::max(r.beta_inf, std::abs(r.beta[k]));
  }
  r.r_pde = std::sqrt(pde * grid.cell_area());
  r.r_compl = std::abs(compl_sum * grid.cell_area());
  r.r_zbound = std::max(0.0, z.max_norm() - 1.0);
  r.tv_rho1 = tv_value(rho1.field());
  r.mass_rho1 = mass(rho1);
  r.r_pairing = std::abs(-dot(div, rho1.field()) - r.tv_rho1);
  return r;
}

double beta_rof_crosscheck(const Field& psi_calibrated, double tau, const Field& beta,
                           const TvProxOptions& options) {
  if (!(tau > 0.0)) throw InvalidArgument("beta_rof_crosscheck: tau must be positive");
  Field data = psi_calibrated;
  for (double& v : data.values()) v /= tau;
  const ProxCertificate rof = prox_tv(data, 1.0, options);
  const double scale = std::max(l2_norm(beta), l2_norm(data));
  if (scale == 0.0) return 0.0;
  return l2_distance(rof.u, beta) / scale;
}

double discrete_perimeter(const Grid& grid, const std::vector<char>& set) {
  const int nx = grid.nx();
  const int ny = grid.ny();
  const auto in = [&](int i, int j) {
    return i >= 0 && j >= 0 && i < nx && j < ny && set[grid.index(i, j)];
  };
  long edges = 0;
  for (int j = -1; j < ny; ++j) {
    for (int i = -1; i < nx; ++i) {
      if (in(i, j) != in(i + 1, j) && j >= 0) ++edges;
      if (in(i, j) != in(i, j + 1) && i >= 0) ++edges;
    }
  }
  return static_cast<double>(edges) * grid.spacing();
}

namespace {

double set_energy(const Grid& grid, const std::vector<char>& set, const Field& potential) {
  double bulk = 0.0;
  for (std::size_t k = 0; k < set.size(); ++k) {
    if (set[k]) bulk += potential[k];
  }
  return discrete_perimeter(grid, set) + bulk * grid.cell_area();
}

std::vector<char> morph(const Grid& grid, const std::vector<char>& set, bool dilate) {
  std::vector<char> out = set;
  const int nx = grid.nx();
  const int ny = grid.ny();
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const int di[4] = {1, -1, 0, 0};
      const int dj[4] = {0, 0, 1, -1};
      for (int q = 0; q < 4; ++q) {
        const int a = i + di[q];
        const int b = j + dj[q];
        const bool nb = a >= 0 && b >= 0 && a < nx && b < ny && set[grid.index(a, b)];
        if (dilate && nb) out[grid.index(i, j)] = 1;
        if (!dilate && !nb) out[grid.index(i, j)] = 0;
      }
    }
  }
  return out;
}

}  // namespace

double LevelSetReport::fraction() const {
  int total = 0;
  int good = 0;
  for (const auto& l : levels) {
    total += l.perturbations;
    good += l.non_improving;
  }
  return total ? static_cast<double>(good) / total : 1.0;
}

LevelSetReport levelset_check(const Density& rho1, const Field& psi_calibrated, double tau,
                              const std::vector<double>& thresholds, int trials,
                              std::uint64_t seed) {
  if (!(tau > 0.0)) throw InvalidArgument("levelset_check: tau must be positive");
  const Grid& grid = rho1.grid();
  Field potential = psi_calibrated;
  for (double& v : potential.values()) v /= tau;

  LevelSetReport report;
  report.slack = grid.spacing() * max_abs(potential);
  std::mt19937_64 rng(seed);
  for (double s : thresholds) {
    std::vector<char> set(grid.size(), 0);
    std::size_t count = 0;
    for (std::size_t k = 0; k < rho1.size(); ++k) {
      set[k] = rho1[k] > s;
      count += set[k];
    }
    if (count == 0) throw InvalidArgument("levelset_check: empty level set");

    LevelSetResult res;
    res.threshold = s;
    res.energy = set_energy(grid, set, potential);
    const auto judge = [&](const std::vector<char>& other) {
      ++res.perturbations;
      if (set_energy(grid, other, potential) >= res.energy - report.slack) ++res.non_improving;
    };

    // Boundary band: cells whose 4-neighbourhood straddles the set boundary.
    std::vector<std::size_t> band;
    for (int j = 0; j < grid.ny(); ++j) {
      for (int i = 0; i < grid.nx(); ++i) {
        const bool c = set[grid.index(i, j)];
        bool straddle = false;
        const int di[4] = {1, -1, 0, 0};
        const int dj[4] = {0, 0, 1, -1};
        for (int q = 0; q < 4; ++q) {
          const int a = i + di[q];
          const int b = j + dj[q];
          const bool nb = a >= 0 && b >= 0 && a < grid.nx() && b < grid.ny() && set[grid.index(a, b)];
          straddle = straddle || nb != c;
        }
        if (straddle) band.push_back(grid.index(i, j));
      }
    }
    std::uniform_int_distribution<std::size_t> pick(0, band.empty() ? 0 : band.size() - 1);
    for (int t = 0; t < trials && !band.empty(); ++t) {
      std::vector<char> flipped = set;
      const std::size_t k = band[pick(rng)];
      flipped[k] = !flipped[k];
      judge(flipped);
    }
    judge(morph(grid, set, true));
    const auto eroded = morph(grid, set, false);
    if (std::any_of(eroded.begin(), eroded.end(), [](char c) { return c != 0; })) judge(eroded);
    report.levels.push_back(res);
  }
  return report;
}

RadiusEstimate estimate_radius(const Density& rho) {
  RadiusEstimate r;
  const Point c = barycenter(rho);
  r.moment = std::sqrt(2.0 * second_moment(rho, c));
  double rmax = 0.0;
  for (double v : rho.values()) rmax = std::max(rmax, v);
  std::size_t count = 0;
  for (double v : rho.values()) count += v > 0.5 * rmax;
  r.area = std::sqrt(static_cast<double>(count) * rho.grid().cell_area() / std::numbers::pi);
  return r;
}

}  // namespace tvw
