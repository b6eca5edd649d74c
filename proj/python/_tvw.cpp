#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "tvw/app/dither.hpp"
#include "tvw/ball_oracle.hpp"
#include "tvw/diagnostics.hpp"
#include "tvw/splitting.hpp"
#include "tvw/transport.hpp"
#include "tvw/tv.hpp"

namespace py = pybind11;
using namespace tvw;

namespace {

using Array = py::array_t<double, py::array::c_style | py::array::forcecast>;

// Arrays are indexed [j, i] (y, x), matching the row-major grid layout.
Field to_field(const Grid& grid, const Array& a) {
  if (a.ndim() != 2 || a.shape(0) != grid.ny() || a.shape(1) != grid.nx()) {
    throw InvalidArgument("array shape must be (ny, nx) = (" + std::to_string(grid.ny()) + ", " +
                          std::to_string(grid.nx()) + ")");
  }
  return Field(grid, std::vector<double>(a.data(), a.data() + a.size()));
}

Array to_array(const Field& f) {
  Array out({f.grid().ny(), f.grid().nx()});
  std::copy(f.values().begin(), f.values().end(), out.mutable_data());
  return out;
}

Array to_array(std::span<const double> v, int rows, int cols) {
  Array out({rows, cols});
  std::copy(v.begin(), v.end(), out.mutable_data());
  return out;
}

EntropicConfig entropic_for(const Grid& grid, std::optional<double> eps_final) {
  EntropicConfig cfg = EntropicConfig::for_grid(grid);
  if (eps_final) cfg.eps_final = *eps_final;
  return cfg;
}

}  // namespace

PYBIND11_MODULE(_tvw, m) {
  m.doc() = "Total-variation Wasserstein JKO steps on uniform 2-D grids.";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", PyExc_RuntimeError);

  py::class_<Grid>(m, "Grid")
      .def(py::init([](int nx, int ny, std::pair<double, double> origin, double spacing) {
             return Grid(nx, ny, {origin.first, origin.second}, spacing);
           }),
           py::arg("nx"), py::arg("ny"), py::arg("origin"), py::arg("spacing"))
      .def_property_readonly("nx", &Grid::nx)
      .def_property_readonly("ny", &Grid::ny)
      .def_property_readonly("spacing", &Grid::spacing)
      .def_property_readonly("cell_area", &Grid::cell_area)
      .def_property_readonly("diameter", &Grid::diameter)
      .def_property_readonly("origin", [](const Grid& g) { return std::make_pair(g.origin().x, g.origin().y); })
      .def("__repr__", [](const Grid& g) {
        return "Grid(nx=" + std::to_string(g.nx()) + ", ny=" + std::to_string(g.ny()) +
               ", spacing=" + std::to_string(g.spacing()) + ")";
      });

  m.def("make_grid", [](int n, std::pair<double, double> origin, double side) {
    return make_grid(n, {origin.first, origin.second}, side);
  }, py::arg("n"), py::arg("origin"), py::arg("side"));

  m.def("rasterize_ball", [](const Grid& g, std::pair<double, double> c, double r) {
    return to_array(rasterize_ball(g, {c.first, c.second}, r).field());
  }, py::arg("grid"), py::arg("center"), py::arg("radius"));

  m.def("mass", [](const Grid& g, const Array& a) { return mass(to_field(g, a)); });

  m.def("tv_value", [](const Grid& g, const Array& u) { return tv_value(to_field(g, u)); },
        py::arg("grid"), py::arg("u"));

  m.def("prox_tv", [](const Grid& g, const Array& data, double lambda, double tol, int max_iter) {
    const ProxCertificate c = prox_tv(to_field(g, data), lambda, tol, max_iter);
    py::dict out;
    out["u"] = to_array(c.u);
    out["zx"] = to_array(c.z.zx(), c.z.ext_ny(), c.z.ext_nx());
    out["zy"] = to_array(c.z.zy(), c.z.ext_ny(), c.z.ext_nx());
    out["gap"] = c.gap;
    out["iterations"] = c.iterations;
    out["converged"] = c.converged;
    return out;
  }, py::arg("grid"), py::arg("g"), py::arg("lam"), py::arg("tol") = 1e-8, py::arg("max_iter") = 20000);

  m.def("rof_nonneg", [](const Grid& g, const Array& data, double lambda) {
    return to_array(rof_nonneg(to_field(g, data), lambda));
  }, py::arg("grid"), py::arg("g"), py::arg("lam"));

  m.def("w2_entropic", [](const Grid& g, const Array& mu, const Array& nu, std::optional<double> eps_final) {
    const TransportResult r = w2_entropic(Density(to_field(g, mu)), Density(to_field(g, nu)), entropic_for(g, eps_final));
    return r.w2_squared;
  }, py::arg("grid"), py::arg("mu"), py::arg("nu"), py::arg("eps_final") = py::none());

  m.def("w2_exact", [](const Grid& g, const Array& mu, const Array& nu) {
    const auto a = to_point_set(Density(to_field(g, mu)));
    const auto b = to_point_set(Density(to_field(g, nu)));
    return w2_exact_oracle(a, b);
  }, py::arg("grid"), py::arg("mu"), py::arg("nu"));

  m.def("prox_w2", [](const Grid& g, const Array& rho_bar, double lambda, double tau, const Array& rho0) {
    const ProxW2Result r = prox_w2(to_field(g, rho_bar), lambda, tau, Density(to_field(g, rho0)),
                                   EntropicConfig::for_grid(g));
    py::dict out;
    out["rho"] = to_array(r.rho.field());
    out["psi"] = to_array(r.potentials.psi);
    out["w2_estimate"] = r.w2_estimate;
    return out;
  }, py::arg("grid"), py::arg("rho_bar"), py::arg("lam"), py::arg("tau"), py::arg("rho0"));

  m.def("halpern_beta", &halpern_beta, py::arg("n"), py::arg("beta_prev"));

  m.def("solve_tvw", [](const Grid& g, const Array& rho0, double tau, double lambda, double fp_tol,
                        int max_outer, bool restart, int tv_max_iter) {
    DRConfig cfg = DRConfig::for_grid(g, tau);
    cfg.lambda = lambda;
    cfg.fp_tol = fp_tol;
    cfg.max_outer = max_outer;
    cfg.tv_max_iter = tv_max_iter;
    cfg.anchor = restart ? AnchorPolicy::kAdaptiveRestart : AnchorPolicy::kFixed;
    const Density start(to_field(g, rho0));
    const TvwSolution sol = [&] {
      py::gil_scoped_release release;
      return solve_tvw(start, cfg);
    }();
    const Field psi = extract_kantorovich(sol.potentials, 1.0);
    const ELReport el = assemble_el(sol.rho1, sol.z, psi, tau);
    py::dict report;
    for (const auto& [k, v] : el.to_key_values()) report[py::str(k)] = v;
    py::list fp;
    for (const auto& r : sol.history.records) fp.append(r.fp_residual_rel);
    py::dict out;
    out["rho1"] = to_array(sol.rho1.field());
    out["y"] = to_array(sol.y);
    out["psi"] = to_array(psi);
    out["converged"] = sol.converged;
    out["iterations"] = sol.iterations;
    out["fp_residual_rel"] = fp;
    out["el"] = report;
    return out;
  }, py::arg("grid"), py::arg("rho0"), py::arg("tau"), py::arg("lam") = 0.1, py::arg("fp_tol") = 1e-5,
     py::arg("max_outer") = 500, py::arg("restart") = true, py::arg("tv_max_iter") = 3000);

  m.def("estimate_radius", [](const Grid& g, const Array& rho) {
    const RadiusEstimate r = estimate_radius(Density(to_field(g, rho)));
    return std::make_pair(r.moment, r.area);
  }, py::arg("grid"), py::arg("rho"));

  m.def("optimal_radius", [](double r0, double tau, int d) {
    BallParams p;
    p.r0 = r0;
    p.tau = tau;
    p.d = d;
    return optimal_radius(p);
  }, py::arg("r0"), py::arg("tau"), py::arg("d") = 2);

  m.def("ball_energy", [](double r1, double r0, double tau, int d) {
    BallParams p;
    p.r0 = r0;
    p.tau = tau;
    p.d = d;
    return ball_energy(r1, p);
  }, py::arg("r1"), py::arg("r0"), py::arg("tau"), py::arg("d") = 2);

  m.def("w2_concentric_balls", &w2_concentric_balls, py::arg("r0"), py::arg("r1"), py::arg("d") = 2);

  m.def("floyd_steinberg", [](const Array& u) {
    if (u.ndim() != 2) throw InvalidArgument("floyd_steinberg: expected a 2-D array");
    const int h = static_cast<int>(u.shape(0));
    const int w = static_cast<int>(u.shape(1));
    const auto bits = app::floyd_steinberg(std::span<const double>(u.data(), u.size()), w, h);
    py::array_t<std::uint8_t> out({h, w});
    std::copy(bits.begin(), bits.end(), out.mutable_data());
    return out;
  }, py::arg("u"));
}
