#pragma once

#include <optional>
#include <vector>

#include "tvw/app/pgm.hpp"
#include "tvw/app/run_config.hpp"
#include "tvw/diagnostics.hpp"
#include "tvw/splitting.hpp"

namespace tvw::app {

/// Square cells fitting the image into [-side/2, side/2]^2 along its longer
/// side; pixel row 0 is the top row (largest y).
Grid image_grid(const GrayImage& image, double side);
/// Intensities proportional to gray values, normalised to unit mass.
Density image_to_density(const GrayImage& image, const Grid& grid);
/// Inverse of image_to_density for an image of total gray mass `gray_mass`,
/// rounded and clamped to [0, maxval].
GrayImage density_to_image(const Field& rho, double gray_mass, int maxval);

struct Diagnostics {
  ELReport el;
  LevelSetReport levels;
};

/// EL residuals, ROF cross-check and level-set test at 0.25/0.5/0.75 max.
Diagnostics run_diagnostics(const TvwSolution& sol, double tau, double theta, int trials);

struct BallRun {
  double tau = 0.0;
  double analytic_radius = 0.0;
  RadiusEstimate measured;
  double rel_error = 0.0;
  double seconds = 0.0;
  std::optional<TvwSolution> solution;  // empty for tau = 0 (identity step)
};

Grid ball_grid(const RunConfig& cfg);
BallRun run_ball(const RunConfig& cfg, double tau);

struct DitherRun {
  GrayImage dithered;
  GrayImage tvw;
  GrayImage rof;
  double input_mass = 0.0;  // sum of gray values / maxval
  long on_pixels = 0;
  double tvw_mass = 0.0;
  std::optional<TvwSolution> solution;  // empty for an all-black input
};

DitherRun run_dither(const RunConfig& cfg, const GrayImage& image);

}  // namespace tvw::app
