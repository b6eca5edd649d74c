#include "tvw/app/run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "tvw/app/pgm.hpp"

namespace tvw::app {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& v) {
  double out = 0.0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end || !std::isfinite(out)) {
    throw ConfigError("invalid number for " + key + ": '" + v + "'");
  }
  return out;
}

int parse_int(const std::string& key, const std::string& v) {
  int out = 0;
  const auto* end = v.data() + v.size();
  const auto [ptr, ec] = std::from_chars(v.data(), end, out);
  if (ec != std::errc() || ptr != end) throw ConfigError("invalid integer for " + key + ": '" + v + "'");
  return out;
}

double positive(const std::string& key, double v) {
  if (!(v > 0.0)) throw ConfigError(key + " must be positive");
  return v;
}

int positive(const std::string& key, int v) {
  if (v <= 0) throw ConfigError(key + " must be positive");
  return v;
}

}  // namespace

void apply_setting(RunConfig& cfg, const std::string& raw_key, const std::string& raw_value) {
  std::string key = trim(raw_key);
  std::replace(key.begin(), key.end(), '-', '_');
  const std::string v = trim(raw_value);
  if (key == "input") {
    cfg.input = v;
  } else if (key == "out") {
    if (v.empty()) throw ConfigError("out must not be empty");
    cfg.out = v;
  } else if (key == "grid") {
    cfg.grid = positive(key, parse_int(key, v));
    if (*cfg.grid < 2) throw ConfigError("grid must be at least 2");
  } else if (key == "pixel_size") {
    cfg.pixel_size = positive(key, parse_double(key, v));
  } else if (key == "half_width") {
    cfg.half_width = positive(key, parse_double(key, v));
  } else if (key == "r0") {
    cfg.r0 = positive(key, parse_double(key, v));
  } else if (key == "taus") {
    std::vector<double> taus;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
      const double t = parse_double(key, trim(item));
      if (t < 0.0) throw ConfigError("taus must be nonnegative");
      taus.push_back(t);
    }
    if (taus.empty()) throw ConfigError("taus must not be empty");
    cfg.taus = taus;
  } else if (key == "tau") {
    cfg.tau = positive(key, parse_double(key, v));
  } else if (key == "lambda") {
    cfg.lambda = positive(key, parse_double(key, v));
  } else if (key == "relax") {
    cfg.relax = positive(key, parse_double(key, v));
  } else if (key == "fp_tol") {
    cfg.fp_tol = positive(key, parse_double(key, v));
  } else if (key == "max_outer") {
    cfg.max_outer = positive(key, parse_int(key, v));
  } else if (key == "tv_max_iter") {
    cfg.tv_max_iter = positive(key, parse_int(key, v));
  } else if (key == "anchor") {
    if (v == "fixed") {
      cfg.anchor = AnchorPolicy::kFixed;
    } else if (v == "restart") {
      cfg.anchor = AnchorPolicy::kAdaptiveRestart;
    } else {
      throw ConfigError("anchor must be 'fixed' or 'restart'");
    }
  } else if (key == "restart_ratio") {
    cfg.restart_ratio = positive(key, parse_double(key, v));
  } else if (key == "eps_final") {
    cfg.eps_final = positive(key, parse_double(key, v));
  } else if (key == "eps_start") {
    cfg.eps_start = positive(key, parse_double(key, v));
  } else if (key == "rof_lambda") {
    cfg.rof_lambda = positive(key, parse_double(key, v));
  } else if (key == "theta") {
    cfg.theta = positive(key, parse_double(key, v));
  } else if (key == "trials") {
    cfg.trials = positive(key, parse_int(key, v));
  } else {
    throw ConfigError("unknown configuration key '" + raw_key + "'");
  }
}

std::vector<std::pair<std::string, std::string>> parse_config_text(const std::string& text) {
  std::vector<std::pair<std::string, std::string>> out;
  std::stringstream ss(text);
  std::string line;
  int lineno = 0;
  while (std::getline(ss, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)).empty()) {
      throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
    }
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

void RunConfig::validate() const {
  if (relax < 0.05 || relax > 1.95) throw ConfigError("relax must lie in [0.05, 1.95]");
  if (!(restart_ratio < 1.0)) throw ConfigError("restart_ratio must lie in (0, 1)");
  if (!(theta < 1.0)) throw ConfigError("theta must lie in (0, 1)");
  if (eps_final && eps_start && *eps_start < *eps_final) {
    throw ConfigError("eps_start must not be below eps_final");
  }
  if (command == "balls") {
    for (double t : taus) {
      if (r0 + (t > 0.0 ? 4.0 * t / (r0 * r0) : 0.0) >= half_width) {
        throw ConfigError("ball of the largest possible radius does not fit in the domain");
      }
    }
  }
  if ((command == "denoise" || command == "dither") && input.empty()) {
    throw ConfigError(command + " needs an input image");
  }
}

nlohmann::json RunConfig::to_json() const {
  nlohmann::json j;
  j["command"] = command;
  j["input"] = input.string();
  j["out"] = out.string();
  j["grid"] = grid ? nlohmann::json(*grid) : nlohmann::json(nullptr);
  j["half_width"] = half_width;
  j["pixel_size"] = pixel_size;
  j["r0"] = r0;
  j["taus"] = taus;
  j["tau"] = tau;
  j["lambda"] = lambda;
  j["relax"] = relax;
  j["fp_tol"] = fp_tol;
  j["max_outer"] = max_outer;
  j["tv_max_iter"] = tv_max_iter;
  j["anchor"] = anchor == AnchorPolicy::kFixed ? "fixed" : "restart";
  j["restart_ratio"] = restart_ratio;
  j["eps_final"] = eps_final ? nlohmann::json(*eps_final) : nlohmann::json(nullptr);
  j["eps_start"] = eps_start ? nlohmann::json(*eps_start) : nlohmann::json(nullptr);
  j["rof_lambda"] = rof_lambda;
  j["theta"] = theta;
  j["trials"] = trials;
  return j;
}

DRConfig make_dr_config(const RunConfig& cfg, const Grid& grid, double tau) {
  DRConfig dr = DRConfig::for_grid(grid, tau);
  dr.lambda = cfg.lambda;
  dr.relax = cfg.relax;
  dr.fp_tol = cfg.fp_tol;
  dr.max_outer = cfg.max_outer;
  dr.tv_max_iter = cfg.tv_max_iter;
  dr.anchor = cfg.anchor;
  dr.restart_ratio = cfg.restart_ratio;
  if (cfg.eps_final) dr.entropic.eps_final = *cfg.eps_final;
  if (cfg.eps_start) dr.entropic.eps_start = *cfg.eps_start;
  dr.entropic.eps_start = std::max(dr.entropic.eps_start, dr.entropic.eps_final);
  dr.validate();
  return dr;
}

}  // namespace tvw::app
