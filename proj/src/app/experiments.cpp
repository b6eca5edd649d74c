#include "tvw/app/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "tvw/app/dither.hpp"
#include "tvw/ball_oracle.hpp"

namespace tvw::app {

namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Grid index of pixel (i, row): rows run top to bottom, grid j bottom to top.
std::size_t cell_of_pixel(const Grid& grid, int i, int row) {
  return grid.index(i, grid.ny() - 1 - row);
}

}  // namespace

Grid image_grid(const GrayImage& image, double side) {
  const double h = side / std::max(image.width, image.height);
  return Grid(image.width, image.height, {-0.5 * h * image.width, -0.5 * h * image.height}, h);
}

Density image_to_density(const GrayImage& image, const Grid& grid) {
  if (grid.nx() != image.width || grid.ny() != image.height) {
    throw InvalidArgument("image_to_density: grid does not match the image");
  }
  double total = 0.0;
  for (auto v : image.pixels) total += v;
  if (!(total > 0.0)) throw InvalidArgument("image_to_density: image has zero mass");
  std::vector<double> values(grid.size());
  const double scale = 1.0 / (total * grid.cell_area());
  for (int row = 0; row < image.height; ++row) {
    for (int i = 0; i < image.width; ++i) {
      values[cell_of_pixel(grid, i, row)] = image.pixels[static_cast<std::size_t>(row) * image.width + i] * scale;
    }
  }
  return Density(grid, std::move(values));
}

GrayImage density_to_image(const Field& rho, double gray_mass, int maxval) {
  const Grid& grid = rho.grid();
  GrayImage img;
  img.width = grid.nx();
  img.height = grid.ny();
  img.maxval = maxval;
  img.pixels.resize(grid.size());
  const double scale = gray_mass * grid.cell_area();
  for (int row = 0; row < img.height; ++row) {
    for (int i = 0; i < img.width; ++i) {
      const double v = std::round(rho[cell_of_pixel(grid, i, row)] * scale);
      img.pixels[static_cast<std::size_t>(row) * img.width + i] =
          static_cast<std::uint16_t>(std::clamp(v, 0.0, static_cast<double>(maxval)));
    }
  }
  return img;
}

Diagnostics run_diagnostics(const TvwSolution& sol, double tau, double theta, int trials) {
  const Field psi = extract_kantorovich(sol.potentials, 1.0);
  Diagnostics d{assemble_el(sol.rho1, sol.z, psi, tau, theta), {}};
  TvProxOptions rof;
  rof.tol = 1e-10;
  rof.max_iter = 200000;
  rof.require_convergence = false;
  d.el.rof_discrepancy = beta_rof_crosscheck(d.el.psi_calibrated, tau, d.el.beta, rof);
  double rmax = 0.0;
  for (double v : sol.rho1.values()) rmax = std::max(rmax, v);
  d.levels = levelset_check(sol.rho1, d.el.psi_calibrated, tau, {0.25 * rmax, 0.5 * rmax, 0.75 * rmax}, trials);
  return d;
}

Grid ball_grid(const RunConfig& cfg) {
  const int n = cfg.grid.value_or(128);
  return make_grid(n, {-cfg.half_width, -cfg.half_width}, 2.0 * cfg.half_width);
}

BallRun run_ball(const RunConfig& cfg, double tau) {
  const auto t0 = std::chrono::steady_clock::now();
  const Grid grid = ball_grid(cfg);
  const Density rho0 = rasterize_ball(grid, {0.0, 0.0}, cfg.r0);
  BallRun run;
  run.tau = tau;
  BallParams params;
  params.r0 = cfg.r0;
  params.tau = tau;
  run.analytic_radius = optimal_radius(params);
  if (tau == 0.0) {
    run.measured = estimate_radius(rho0);
  } else {
    run.solution = solve_tvw(rho0, make_dr_config(cfg, grid, tau));
    run.measured = estimate_radius(run.solution->rho1);
  }
  run.rel_error = std::abs(run.measured.moment - run.analytic_radius) / run.analytic_radius;
  run.seconds = seconds_since(t0);
  return run;
}

DitherRun run_dither(const RunConfig& cfg, const GrayImage& image) {
  DitherRun run;
  std::vector<double> unit(image.pixels.size());
  for (std::size_t k = 0; k < unit.size(); ++k) {
    unit[k] = static_cast<double>(image.pixels[k]) / image.maxval;
    run.input_mass += unit[k];
  }
  const auto bits = floyd_steinberg(unit, image.width, image.height);
  run.dithered = GrayImage{image.width, image.height, image.maxval, std::vector<std::uint16_t>(bits.size())};
  for (std::size_t k = 0; k < bits.size(); ++k) {
    run.dithered.pixels[k] = bits[k] ? static_cast<std::uint16_t>(image.maxval) : 0;
    run.on_pixels += bits[k];
  }
  run.tvw = GrayImage{image.width, image.height, image.maxval, std::vector<std::uint16_t>(bits.size(), 0)};
  run.rof = run.tvw;
  if (run.on_pixels == 0) return run;

  const int longest = std::max(image.width, image.height);
  const Grid grid = image_grid(image, cfg.pixel_size * longest);
  const Density rho0 = image_to_density(run.dithered, grid);
  DRConfig dr = make_dr_config(cfg, grid, cfg.tau);
  // Sums of Diracs need a blurrier start of the annealing.
  if (!cfg.eps_start) dr.entropic.eps_start = 0.25 * grid.diameter() * grid.diameter();
  run.solution = solve_tvw(rho0, dr);
  run.tvw_mass = mass(run.solution->rho1);

  TvProxOptions rof;
  rof.tol = 1e-8;
  rof.max_iter = 200000;
  // ROF acts on the 0/1 intensities; lambda is only meaningful at that scale.
  Field bits_field(grid);
  for (int row = 0; row < image.height; ++row) {
    for (int i = 0; i < image.width; ++i) {
      if (bits[static_cast<std::size_t>(row) * image.width + i]) bits_field[cell_of_pixel(grid, i, row)] = 1.0;
    }
  }
  const Field rof_u = rof_nonneg(bits_field, cfg.rof_lambda, rof);
  const double gray_mass = static_cast<double>(run.on_pixels) * image.maxval;
  run.tvw = density_to_image(run.solution->rho1.field(), gray_mass, image.maxval);
  run.rof = density_to_image(rof_u, image.maxval / grid.cell_area(), image.maxval);
  return run;
}

}  // namespace tvw::app
