#pragma once

#include <vector>

#include "tvw/grid.hpp"

namespace tvw {

/// Discrete vector field paired with the forward-difference gradient.
///
/// The gradient is taken with zero extension outside the grid and is
/// evaluated on the (nx+1) x (ny+1) cells {-1..nx-1} x {-1..ny-1}, so every
/// jump to the exterior (including on the low-index sides) is an edge of the
/// stencil. z lives on that extended index set; the pair (z_x, z_y) stored at
/// one extended cell is the one constrained by |z| <= 1.
class DualField {
 public:
  explicit DualField(const Grid& grid);

  const Grid& grid() const noexcept { return grid_; }
  int ext_nx() const noexcept { return grid_.nx() + 1; }
  int ext_ny() const noexcept { return grid_.ny() + 1; }
  std::size_t ext_index(int i, int j) const noexcept {
    return static_cast<std::size_t>(j + 1) * (grid_.nx() + 1) + (i + 1);
  }

  std::vector<double>& zx() noexcept { return zx_; }
  std::vector<double>& zy() noexcept { return zy_; }
  const std::vector<double>& zx() const noexcept { return zx_; }
  const std::vector<double>& zy() const noexcept { return zy_; }

  /// Largest per-cell Euclidean norm of (z_x, z_y).
  double max_norm() const noexcept;
  /// Discrete divergence, the negative adjoint of the gradient used by TV.
  Field divergence() const;
  DualField scaled(double c) const;

  friend bool operator==(const DualField&, const DualField&) = default;

 private:
  Grid grid_;
  std::vector<double> zx_;
  std::vector<double> zy_;
};

/// Gradient (physical units, 1/h factor included) on the extended index set.
void gradient(const Field& u, std::vector<double>& gx, std::vector<double>& gy);

/// Isotropic total variation with zero extension: h * sum |D u|.
double tv_value(const Field& u);

struct TvProxOptions {
  /// Duality-gap tolerance per unit of L1 mass of the data.
  double tol = 1e-8;
  int max_iter = 20000;
  /// Throw ConvergenceError instead of returning an inexact certificate.
  bool require_convergence = true;
  /// Number of iterations between duality-gap evaluations.
  int check_every = 10;
};

struct ProxCertificate {
  Field u;
  DualField z;
  double gap = 0.0;
  double pairing_residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// argmin_u TV(u) + |u - g|^2 / (2 lambda), by accelerated projected gradient
/// on the dual with adaptive momentum restart. The returned u is g + lambda
/// div z for the returned (feasible) z. `warm_start` may be null.
ProxCertificate prox_tv(const Field& g, double lambda, const TvProxOptions& options,
                        const DualField* warm_start = nullptr);
ProxCertificate prox_tv(const Field& g, double lambda, double tol = 1e-8, int max_iter = 20000);

/// Positive part of the unconstrained prox; solves ROF restricted to u >= 0.
Field rof_nonneg(const Field& g, double lambda, const TvProxOptions& options = {});

struct SubgradientReport {
  double z_excess = 0.0;          // (max |z| - 1)^+
  double pairing_residual = 0.0;  // |<-div z, u> - TV(u)|
  double boundary_flux = 0.0;     // max normal |z| on exterior edges
  bool z_feasible = true;
  bool pairing_ok = true;
};

SubgradientReport check_subgradient(const Field& u, const DualField& z, double tol);

}  // namespace tvw
