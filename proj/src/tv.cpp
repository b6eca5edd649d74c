#include "tvw/tv.hpp"

#include <algorithm>
#include <string>

namespace tvw {

DualField::DualField(const Grid& grid)
    : grid_(grid),
      zx_(static_cast<std::size_t>(grid.nx() + 1) * (grid.ny() + 1), 0.0),
      zy_(zx_.size(), 0.0) {}

double DualField::max_norm() const noexcept {
  double m = 0.0;
  for (std::size_t e = 0; e < zx_.size(); ++e) {
    m = std::max(m, zx_[e] * zx_[e] + zy_[e] * zy_[e]);
  }
  return std::sqrt(m);
}

namespace {

// Raw forward differences of u on the extended index set (no 1/h).
void forward_differences(const Field& u, std::vector<double>& dx, std::vector<double>& dy) {
  const Grid& g = u.grid();
  const int nx = g.nx();
  const int ny = g.ny();
  const std::size_t ext = static_cast<std::size_t>(nx + 1) * (ny + 1);
  dx.assign(ext, 0.0);
  dy.assign(ext, 0.0);
  const auto val = [&](int i, int j) -> double {
    return (i < 0 || j < 0 || i >= nx || j >= ny) ? 0.0 : u.at(i, j);
  };
  std::size_t e = 0;
  for (int j = -1; j < ny; ++j) {
    for (int i = -1; i < nx; ++i, ++e) {
      const double c = val(i, j);
      dx[e] = val(i + 1, j) - c;
      dy[e] = val(i, j + 1) - c;
    }
  }
}

// Backward-difference divergence of raw z (no 1/h), written into out.
void backward_divergence(const Grid& g, const std::vector<double>& zx,
                         const std::vector<double>& zy, std::span<double> out) {
  const int nx = g.nx();
  const int ny = g.ny();
  const std::size_t row = static_cast<std::size_t>(nx + 1);
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const std::size_t e = static_cast<std::size_t>(j + 1) * row + (i + 1);
      out[g.index(i, j)] = zx[e] - zx[e - 1] + zy[e] - zy[e - row];
    }
  }
}

double raw_tv_sum(const std::vector<double>& dx, const std::vector<double>& dy) {
  double s = 0.0;
  for (std::size_t e = 0; e < dx.size(); ++e) s += std::sqrt(dx[e] * dx[e] + dy[e] * dy[e]);
  return s;
}

void project_unit_ball(std::vector<double>& zx, std::vector<double>& zy) {
  for (std::size_t e = 0; e < zx.size(); ++e) {
    const double n2 = zx[e] * zx[e] + zy[e] * zy[e];
    if (n2 > 1.0) {
      const double inv = 1.0 / std::sqrt(n2);
      zx[e] *= inv;
      zy[e] *= inv;
    }
  }
}

}  // namespace

Field DualField::divergence() const {
  Field out(grid_);
  backward_divergence(grid_, zx_, zy_, out.values());
  const double inv_h = 1.0 / grid_.spacing();
  for (double& v : out.values()) v *= inv_h;
  return out;
}

DualField DualField::scaled(double c) const {
  DualField out = *this;
  for (double& v : out.zx_) v *= c;
  for (double& v : out.zy_) v *= c;
  return out;
}

void gradient(const Field& u, std::vector<double>& gx, std::vector<double>& gy) {
  forward_differences(u, gx, gy);
  const double inv_h = 1.0 / u.grid().spacing();
  for (double& v : gx) v *= inv_h;
  for (double& v : gy) v *= inv_h;
}

double tv_value(const Field& u) {
  if (!u.all_finite()) throw InvalidArgument("tv_value: non-finite input");
  std::vector<double> dx;
  std::vector<double> dy;
  forward_differences(u, dx, dy);
  return raw_tv_sum(dx, dy) * u.grid().spacing();
}

ProxCertificate prox_tv(const Field& g, double lambda, const TvProxOptions& options,
                        const DualField* warm_start) {
  if (!(lambda > 0.0)) throw InvalidArgument("prox_tv: lambda must be positive");
  if (!g.all_finite()) throw InvalidArgument("prox_tv: non-finite data");
  const Grid& grid = g.grid();
  const double h = grid.spacing();
  const double area = grid.cell_area();

  double l1 = 0.0;
  for (double v : g.values()) l1 += std::abs(v);
  l1 *= area;
  const double gap_tol = options.tol * (l1 > 0.0 ? l1 : 1.0);

  DualField z(grid);
  if (warm_start != nullptr) {
    if (!(warm_start->grid() == grid)) throw InvalidArgument("prox_tv: warm start grid mismatch");
    z = *warm_start;
    project_unit_ball(z.zx(), z.zy());
  }

  // u = g + lambda div z with div = (backward differences) / h.
  const double lam_over_h = lambda / h;
  Field u(grid);
  std::vector<double> work(grid.size());
  const auto reconstruct = [&](const std::vector<double>& zx, const std::vector<double>& zy) {
    backward_divergence(grid, zx, zy, work);
    for (std::size_t k = 0; k < work.size(); ++k) u[k] = g[k] + lam_over_h * work[k];
  };
  const auto duality_gap = [&](const DualField& zf) {
    // gap = TV(u) + <div z, u>, exactly zero at the saddle point.
    backward_divergence(grid, zf.zx(), zf.zy(), work);
    double pair = 0.0;
    for (std::size_t k = 0; k < work.size(); ++k) {
      u[k] = g[k] + lam_over_h * work[k];
      pair += work[k] * u[k];
    }
    pair *= area / h;
    return tv_value(u) + pair;
  };

  ProxCertificate cert{Field(grid), DualField(grid), 0.0, 0.0, 0, false};
  double gap = duality_gap(z);
  if (gap <= gap_tol) {
    cert.u = u;
    cert.z = z;
    cert.gap = gap;
    cert.pairing_residual = std::abs(gap);
    cert.converged = true;
    return cert;
  }

  // Step 1/L with L = 8 lambda^2 / h^2; in raw differences the update is
  // z += (h / (8 lambda)) D u.
  const double step = h / (8.0 * lambda);
  const std::size_t ext = z.zx().size();
  std::vector<double> yx = z.zx();
  std::vector<double> yy = z.zy();
  std::vector<double> prev_x(ext);
  std::vector<double> prev_y(ext);
  std::vector<double> dx;
  std::vector<double> dy;
  double t = 1.0;
  int it = 0;
  bool converged = false;
  const int check_every = std::max(1, options.check_every);
  while (it < options.max_iter) {
    ++it;
    reconstruct(yx, yy);
    forward_differences(u, dx, dy);
    prev_x = z.zx();
    prev_y = z.zy();
    auto& zx = z.zx();
    auto& zy = z.zy();
    for (std::size_t e = 0; e < ext; ++e) {
      zx[e] = yx[e] + step * dx[e];
      zy[e] = yy[e] + step * dy[e];
    }
    project_unit_ball(zx, zy);

    double restart = 0.0;
    for (std::size_t e = 0; e < ext; ++e) {
      restart += (yx[e] - zx[e]) * (zx[e] - prev_x[e]) + (yy[e] - zy[e]) * (zy[e] - prev_y[e]);
    }
    if (restart > 0.0) {
      t = 1.0;
      yx = zx;
      yy = zy;
    } else {
      const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
      const double beta = (t - 1.0) / t_next;
      for (std::size_t e = 0; e < ext; ++e) {
        yx[e] = zx[e] + beta * (zx[e] - prev_x[e]);
        yy[e] = zy[e] + beta * (zy[e] - prev_y[e]);
      }
      t = t_next;
    }

    if (it % check_every == 0 || it == options.max_iter) {
      gap = duality_gap(z);
      if (gap <= gap_tol) {
        converged = true;
        break;
      }
    }
  }
  if (!converged) gap = duality_gap(z);

  cert.u = u;
  cert.z = z;
  cert.gap = gap;
  cert.pairing_residual = std::abs(gap);
  cert.iterations = it;
  cert.converged = converged || gap <= gap_tol;
  if (!cert.converged && options.require_convergence) {
    throw ConvergenceError("prox_tv: duality gap " + std::to_string(gap) + " above tolerance " +
                               std::to_string(gap_tol) + " after " + std::to_string(it) +
                               " iterations",
                           gap, it);
  }
  return cert;
}

ProxCertificate prox_tv(const Field& g, double lambda, double tol, int max_iter) {
  TvProxOptions options;
  options.tol = tol;
  options.max_iter = max_iter;
  return prox_tv(g, lambda, options);
}

Field rof_nonneg(const Field& g, double lambda, const TvProxOptions& options) {
  return positive_part(prox_tv(g, lambda, options).u);
}

SubgradientReport check_subgradient(const Field& u, const DualField& z, double tol) {
  if (!(u.grid() == z.grid())) throw InvalidArgument("check_subgradient: grid mismatch");
  SubgradientReport r;
  r.z_excess = std::max(0.0, z.max_norm() - 1.0);
  const Field div = z.divergence();
  r.pairing_residual = std::abs(-dot(div, u) - tv_value(u));

  const Grid& g = u.grid();
  double flux = 0.0;
  for (int j = 0; j < g.ny(); ++j) {
    flux = std::max(flux, std::abs(z.zx()[z.ext_index(-1, j)]));
    flux = std::max(flux, std::abs(z.zx()[z.ext_index(g.nx() - 1, j)]));
  }
  for (int i = 0; i < g.nx(); ++i) {
    flux = std::max(flux, std::abs(z.zy()[z.ext_index(i, -1)]));
    flux = std::max(flux, std::abs(z.zy()[z.ext_index(i, g.ny() - 1)]));
  }
  r.boundary_flux = flux;
  r.z_feasible = r.z_excess <= tol;
  r.pairing_ok = r.pairing_residual <= tol * (1.0 + tv_value(u));
  return r;
}

}  // namespace tvw
