#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "tvw/grid.hpp"
#include "tvw/splitting.hpp"

namespace tvw::app {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parameters of one CLI command. Lengths are in domain units. Ball runs and
/// denoise use the square [-half_width, half_width]^2; dither works in pixel
/// units, one cell of side pixel_size per pixel, centred on the origin.
struct RunConfig {
  std::string command;
  std::filesystem::path input;
  std::filesystem::path out = ".";
  /// Cells per side for `balls`; for image commands it must match the image.
  std::optional<int> grid;
  double half_width = 2.0;
  double pixel_size = 1.0;
  double r0 = 1.0;
  std::vector<double> taus = {0.05, 0.1, 0.2};
  double tau = 0.2;
  double lambda = 0.1;
  double relax = 1.0;
  double fp_tol = 1e-5;
  int max_outer = 500;
  /// Cap on dual iterations per TV prox; the dual field is warm-started
  /// across outer iterations.
  int tv_max_iter = 3000;
  AnchorPolicy anchor = AnchorPolicy::kAdaptiveRestart;
  double restart_ratio = 0.2;
  /// Absolute entropic levels; unset means the diam^2-scaled defaults.
  std::optional<double> eps_final;
  std::optional<double> eps_start;
  double rof_lambda = 0.2;
  double theta = 0.1;
  int trials = 200;

  /// Checks cross-field constraints; single values are checked on assignment.
  void validate() const;
  nlohmann::json to_json() const;
};

/// Assigns one key (snake_case, dashes accepted) from its textual value.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Plain `key = value` lines; '#' starts a comment; blank lines ignored.
std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text);
std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path);

/// DR configuration for a solve on `grid`.
DRConfig make_dr_config(const RunConfig& cfg, const Grid& grid, double tau);

}  // namespace tvw::app
