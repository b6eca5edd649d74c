#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "tvw/grid.hpp"
#include "tvw/tv.hpp"

namespace tvw {

/// Residuals of the optimality system
///   beta = (psi + C) / tau - div z,  beta >= 0,  beta rho1 = 0,
///   |z| <= 1,  <-div z, rho1> = TV(rho1),
/// with z in the certificate convention of prox_tv (-div z is a TV
/// subgradient) and psi the potential for the cost |x - y|^2 / 2.
struct ELReport {
  Field beta;
  Field psi_calibrated;  // psi + C
  double calibration = 0.0;
  double theta = 0.1;
  double r_pde = 0.0;
  double r_compl = 0.0;
  double r_nonneg = 0.0;
  double r_zbound = 0.0;
  double r_pairing = 0.0;
  double beta_inf = 0.0;
  double tv_rho1 = 0.0;
  double mass_rho1 = 0.0;
  double rof_discrepancy = -1.0;  // filled by beta_rof_crosscheck; < 0 if not run

  std::vector<std::pair<std::string, double>> to_key_values() const;
};

/// Calibrates C by rho1-weighted least squares of beta on {rho1 > theta max},
/// then evaluates every residual.
ELReport assemble_el(const Density& rho1, const DualField& z, const Field& psi, double tau,
                     double theta = 0.1);

/// Relative L2 distance between beta and the ROF solution with data
/// psi_calibrated / tau and lambda = 1, normalised by max(|beta|, |data|).
double beta_rof_crosscheck(const Field& psi_calibrated, double tau, const Field& beta,
                           const TvProxOptions& options = {});

struct LevelSetResult {
  double threshold = 0.0;
  double energy = 0.0;
  int perturbations = 0;
  int non_improving = 0;
  double fraction() const { return perturbations ? static_cast<double>(non_improving) / perturbations : 1.0; }
};

struct LevelSetReport {
  double slack = 0.0;
  std::vector<LevelSetResult> levels;
  double fraction() const;
};

/// Anisotropic perimeter h * #(edges between E and its complement), counting
/// edges to the exterior of the grid.
double discrete_perimeter(const Grid& grid, const std::vector<char>& set);

/// Compares J(E) = Per(E) + (1/tau) int_E psi for E = {rho1 > s} against
/// random one-cell flips on the boundary band plus one-cell dilation and
/// erosion. Thresholds are absolute density values.
LevelSetReport levelset_check(const Density& rho1, const Field& psi_calibrated, double tau,
                              const std::vector<double>& thresholds, int trials,
                              std::uint64_t seed = 7);

struct RadiusEstimate {
  double moment = 0.0;  // sqrt(2 E|x - barycenter|^2)
  double area = 0.0;    // sqrt(area{rho > max/2} / pi)
};

RadiusEstimate estimate_radius(const Density& rho);

}  // namespace tvw
