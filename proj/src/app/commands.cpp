#include "tvw/app/commands.hpp"

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "tvw/app/experiments.hpp"
#include "tvw/app/pgm.hpp"

namespace tvw::app {

namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

void write_json(const std::filesystem::path& path, const json& j) { write_text(path, j.dump(2) + "\n"); }

void ensure_out_dir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) throw IoError("cannot create output directory " + dir.string());
}

json kv_json(const std::vector<std::pair<std::string, double>>& kv) {
  json j = json::object();
  for (const auto& [k, v] : kv) j[k] = v;
  return j;
}

json diagnostics_json(const Diagnostics& d) {
  json j;
  j["el"] = kv_json(d.el.to_key_values());
  j["levelset_slack"] = d.levels.slack;
  j["levelset_fraction"] = d.levels.fraction();
  json levels = json::array();
  for (const auto& l : d.levels.levels) {
    levels.push_back({{"threshold", l.threshold},
                      {"energy", l.energy},
                      {"perturbations", l.perturbations},
                      {"non_improving", l.non_improving}});
  }
  j["levels"] = levels;
  return j;
}

json solution_json(const TvwSolution& sol) {
  json j;
  j["converged"] = sol.converged;
  j["iterations"] = sol.iterations;
  const auto& last = sol.history.records.back();
  j["fp_residual_rel"] = last.fp_residual_rel;
  j["objective_estimate"] = last.objective;
  j["mass_rho1"] = mass(sol.rho1);
  return j;
}

double total_seconds(const RunHistory& h) { return h.wall_seconds.empty() ? 0.0 : h.wall_seconds.back(); }

std::string tau_tag(double tau) {
  std::ostringstream ss;
  ss << tau;
  return ss.str();
}

}  // namespace

void write_history_csv(const std::filesystem::path& path, const RunHistory& history) {
  std::ostringstream out;
  out << "iteration,fp_residual,fp_residual_rel,map_residual,objective_estimate,beta,tv_gap,"
         "tv_iterations,ot_iterations,restarted\n";
  out << std::setprecision(17);
  for (const auto& r : history.records) {
    out << r.iteration << ',' << r.fp_residual << ',' << r.fp_residual_rel << ',' << r.map_residual << ','
        << r.objective << ',' << r.beta << ',' << r.tv_gap << ',' << r.tv_iterations << ','
        << r.ot_iterations << ',' << (r.restarted ? 1 : 0) << '\n';
  }
  write_text(path, out.str());
}

int cmd_denoise(const RunConfig& cfg, std::ostream& log) {
  const auto t0 = Clock::now();
  const GrayImage image = read_pgm(cfg.input);
  if (cfg.grid && (*cfg.grid != image.width || *cfg.grid != image.height)) {
    throw ConfigError("grid does not match the input image size");
  }
  ensure_out_dir(cfg.out);
  const Grid grid = image_grid(image, 2.0 * cfg.half_width);
  double gray_mass = 0.0;
  for (auto v : image.pixels) gray_mass += v;
  if (!(gray_mass > 0.0)) throw ConfigError("denoise needs an image with positive mass");
  const Density rho0 = image_to_density(image, grid);
  const TvwSolution sol = solve_tvw(rho0, make_dr_config(cfg, grid, cfg.tau));
  const Diagnostics diag = run_diagnostics(sol, cfg.tau, cfg.theta, cfg.trials);
  const RadiusEstimate radius = estimate_radius(sol.rho1);

  write_pgm(cfg.out / "denoised.pgm", density_to_image(sol.rho1.field(), gray_mass, image.maxval));
  write_history_csv(cfg.out / "history.csv", sol.history);
  json report;
  report["config"] = cfg.to_json();
  report["solution"] = solution_json(sol);
  report["radius"] = {{"moment", radius.moment}, {"area", radius.area}};
  report["diagnostics"] = diagnostics_json(diag);
  write_json(cfg.out / "report.json", report);
  write_json(cfg.out / "timing.json",
             {{"solve_seconds", total_seconds(sol.history)},
              {"total_seconds", std::chrono::duration<double>(Clock::now() - t0).count()}});
  log << "denoise: " << sol.iterations << " iterations, fp residual "
      << sol.history.records.back().fp_residual_rel << (sol.converged ? "" : " (not converged)") << '\n';
  return sol.converged ? kExitOk : kExitNotConverged;
}

int cmd_balls(const RunConfig& cfg, std::ostream& log) {
  const auto t0 = Clock::now();
  ensure_out_dir(cfg.out);
  std::ostringstream table;
  table << std::setprecision(10);
  table << "tau,analytic_radius,moment_radius,area_radius,rel_error,iterations,converged\n";
  json rows = json::array();
  json timing = json::object();
  bool all_converged = true;
  for (double tau : cfg.taus) {
    const BallRun run = run_ball(cfg, tau);
    const int iterations = run.solution ? run.solution->iterations : 0;
    const bool converged = run.solution ? run.solution->converged : true;
    all_converged = all_converged && converged;
    table << tau << ',' << run.analytic_radius << ',' << run.measured.moment << ',' << run.measured.area << ','
          << run.rel_error << ',' << iterations << ',' << (converged ? 1 : 0) << '\n';
    json row = {{"tau", tau},
                {"analytic_radius", run.analytic_radius},
                {"moment_radius", run.measured.moment},
                {"area_radius", run.measured.area},
                {"rel_error", run.rel_error}};
    if (run.solution) {
      const std::string tag = tau_tag(tau);
      row["solution"] = solution_json(*run.solution);
      row["diagnostics"] = diagnostics_json(run_diagnostics(*run.solution, tau, cfg.theta, cfg.trials));
      write_history_csv(cfg.out / ("history_tau" + tag + ".csv"), run.solution->history);
      double rmax = 0.0;
      for (double v : run.solution->rho1.values()) rmax = std::max(rmax, v);
      const double gray = 255.0 / (rmax * run.solution->rho1.grid().cell_area());
      write_pgm(cfg.out / ("ball_tau" + tag + ".pgm"), density_to_image(run.solution->rho1.field(), gray, 255));
    }
    rows.push_back(row);
    timing[tau_tag(tau)] = run.seconds;
    log << "tau " << tau << ": analytic " << run.analytic_radius << ", measured " << run.measured.moment
        << ", rel. error " << run.rel_error << '\n';
  }
  write_text(cfg.out / "balls.csv", table.str());
  write_json(cfg.out / "report.json", {{"config", cfg.to_json()}, {"rows", rows}});
  timing["total_seconds"] = std::chrono::duration<double>(Clock::now() - t0).count();
  write_json(cfg.out / "timing.json", timing);
  return all_converged ? kExitOk : kExitNotConverged;
}

int cmd_dither(const RunConfig& cfg, std::ostream& log) {
  const auto t0 = Clock::now();
  const GrayImage image = read_pgm(cfg.input);
  if (cfg.grid && (*cfg.grid != image.width || *cfg.grid != image.height)) {
    throw ConfigError("grid does not match the input image size");
  }
  ensure_out_dir(cfg.out);
  const DitherRun run = run_dither(cfg, image);
  write_pgm(cfg.out / "dithered.pgm", run.dithered);
  write_pgm(cfg.out / "tvw.pgm", run.tvw);
  write_pgm(cfg.out / "rof.pgm", run.rof);
  json report;
  report["config"] = cfg.to_json();
  report["input_mass"] = run.input_mass;
  report["on_pixels"] = run.on_pixels;
  report["tvw_mass"] = run.tvw_mass;
  json timing = {{"total_seconds", 0.0}};
  if (run.solution) {
    report["solution"] = solution_json(*run.solution);
    write_history_csv(cfg.out / "history.csv", run.solution->history);
    timing["solve_seconds"] = total_seconds(run.solution->history);
  }
  write_json(cfg.out / "report.json", report);
  timing["total_seconds"] = std::chrono::duration<double>(Clock::now() - t0).count();
  write_json(cfg.out / "timing.json", timing);
  log << "dither: " << run.on_pixels << " pixels on (input mass " << run.input_mass << ")\n";
  return !run.solution || run.solution->converged ? kExitOk : kExitNotConverged;
}

int run_cli(int argc, char** argv) {
  CLI::App app{"Total-variation Wasserstein gradient-flow steps"};
  app.require_subcommand(1);
  std::map<std::string, std::string> flags;
  std::vector<std::string> extra;
  std::string config_path;
  std::string input;

  const auto add_common = [&](CLI::App* sub) {
    for (const char* name : {"grid", "tau", "lambda", "eps-final", "fp-tol", "max-outer", "out"}) {
      sub->add_option_function<std::string>(std::string("--") + name,
                                             [&flags, name](const std::string& v) { flags[name] = v; });
    }
    sub->add_option("--config", config_path, "key = value configuration file");
    sub->add_option("--set", extra, "additional key=value settings");
  };
  CLI::App* denoise = app.add_subcommand("denoise", "denoise a grayscale PGM image");
  CLI::App* balls = app.add_subcommand("balls", "uniform-ball experiment against the analytic radius");
  CLI::App* dither = app.add_subcommand("dither", "dither an image and reconstruct it with TVW and ROF");
  for (CLI::App* sub : {denoise, balls, dither}) add_common(sub);
  for (CLI::App* sub : {denoise, dither}) sub->add_option("input", input, "input PGM image");
  balls->add_option_function<std::string>("--taus", [&flags](const std::string& v) { flags["taus"] = v; },
                                          "comma-separated list of steps");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadConfig;
  }

  try {
    RunConfig cfg;
    cfg.command = app.get_subcommands().front()->get_name();
    if (!config_path.empty()) {
      for (const auto& [k, v] : read_config_file(config_path)) apply_setting(cfg, k, v);
    }
    for (const auto& kv : extra) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw ConfigError("--set expects key=value, got '" + kv + "'");
      apply_setting(cfg, kv.substr(0, eq), kv.substr(eq + 1));
    }
    for (const auto& [k, v] : flags) apply_setting(cfg, k, v);
    if (!input.empty()) cfg.input = input;
    cfg.validate();
    if (cfg.command == "denoise") return cmd_denoise(cfg, std::cout);
    if (cfg.command == "balls") return cmd_balls(cfg, std::cout);
    return cmd_dither(cfg, std::cout);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const InvalidArgument& e) {
    std::cerr << "invalid argument: " << e.what() << '\n';
    return kExitBadConfig;
  } catch (const PgmError& e) {
    std::cerr << "image error: " << e.what() << '\n';
    return kExitIo;
  } catch (const IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kExitIo;
  } catch (const ConvergenceError& e) {
    std::cerr << "solver did not converge: " << e.what() << '\n';
    return kExitNotConverged;
  }
}

}  // namespace tvw::app
