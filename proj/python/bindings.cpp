#include <memory>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "camis/config.hpp"
#include "camis/errors.hpp"
#include "camis/metrics.hpp"
#include "camis/solver.hpp"

namespace py = pybind11;
using namespace camis;

namespace {

std::shared_ptr<HexTerrain> terrain_from_grid(const ElevationGrid& raster, double h, int smoothing) {
  HexTerrain t = resample_to_hex(smoothing > 0 ? smooth(raster, smoothing) : raster, h);
  slope_fields(t);
  return std::make_shared<HexTerrain>(std::move(t));
}

std::shared_ptr<HexTerrain> terrain_from_array(py::array_t<double, py::array::c_style | py::array::forcecast> z,
                                               double cell, double h, int smoothing, double nodata) {
  if (z.ndim() != 2) throw ContractViolation("elevation array must be two-dimensional");
  ElevationGrid g;
  g.n_rows = static_cast<std::size_t>(z.shape(0));
  g.n_cols = static_cast<std::size_t>(z.shape(1));
  g.cell_size = cell;
  g.nodata = nodata;
  g.values.assign(z.data(), z.data() + z.size());
  g.validate();
  return terrain_from_grid(g, h, smoothing);
}

py::array_t<double> to_array(const std::vector<Vec2>& pts) {
  py::array_t<double> out({static_cast<py::ssize_t>(pts.size()), py::ssize_t{2}});
  auto v = out.mutable_unchecked<2>();
  for (std::size_t k = 0; k < pts.size(); ++k) {
    v(k, 0) = pts[k].x();
    v(k, 1) = pts[k].y();
  }
  return out;
}

std::vector<Vec2> from_array(py::array_t<double, py::array::c_style | py::array::forcecast> a) {
  if (a.ndim() != 2 || a.shape(1) != 2) throw ContractViolation("path must be an (n, 2) array");
  std::vector<Vec2> out;
  auto v = a.unchecked<2>();
  for (py::ssize_t k = 0; k < a.shape(0); ++k) out.emplace_back(v(k, 0), v(k, 1));
  return out;
}

HexIndex node_near(const HexTerrain& t, const Vec2& p, const char* what) {
  const auto n = t.node_at(p);
  if (!n) throw ContractViolation(std::string(what) + " lies outside the terrain");
  return *n;
}

py::dict plan_py(const HexTerrain& terrain, const CamisModel& model, std::pair<double, double> start,
                 std::pair<double, double> goal, const std::string& mode, double anisotropy_cap) {
  SolverOptions opt;
  opt.anisotropy_cap = anisotropy_cap;
  const HexIndex s = node_near(terrain, Vec2(start.first, start.second), "start");
  const HexIndex g = node_near(terrain, Vec2(goal.first, goal.second), "goal");
  PlanResult r;
  {
    py::gil_scoped_release release;
    r = plan(s, g, terrain, model, parse_plan_mode(mode), opt);
  }
  py::dict d;
  d["total_cost"] = r.total_cost;
  d["path"] = to_array(r.path);
  d["path_step"] = r.path_step;
  d["meeting"] = py::make_tuple(r.meeting.i, r.meeting.j);
  d["expanded"] = r.diagnostics.expanded;
  d["regime_counts"] = r.diagnostics.regime_counts;
  d["max_anisotropy"] = r.diagnostics.max_anisotropy;
  d["clamped_nodes"] = r.diagnostics.clamped_nodes;
  d["excluded_nodes"] = r.diagnostics.excluded_nodes;
  d["wall_seconds"] = r.diagnostics.wall_seconds;
  d["warnings"] = r.diagnostics.warnings;
  return d;
}

py::dict profile_py(py::array_t<double> path, const HexTerrain& terrain, const CamisModel& model) {
  const PathProfile p = profile(from_array(path), terrain, model);
  const auto n = static_cast<py::ssize_t>(p.samples.size());
  py::array_t<double> s(n), x(n), y(n), z(n), alpha(n), beta(n), pitch(n), roll(n), cost(n), cum(n);
  for (py::ssize_t k = 0; k < n; ++k) {
    const auto& q = p.samples[static_cast<std::size_t>(k)];
    s.mutable_at(k) = q.s;
    x.mutable_at(k) = q.position.x();
    y.mutable_at(k) = q.position.y();
    z.mutable_at(k) = q.elevation;
    alpha.mutable_at(k) = q.alpha;
    beta.mutable_at(k) = q.beta;
    pitch.mutable_at(k) = q.pitch;
    roll.mutable_at(k) = q.roll;
    cost.mutable_at(k) = q.cost;
    cum.mutable_at(k) = q.cum_cost;
  }
  py::dict d;
  d["s"] = s;
  d["x"] = x;
  d["y"] = y;
  d["z"] = z;
  d["alpha"] = alpha;
  d["beta"] = beta;
  d["pitch"] = pitch;
  d["roll"] = roll;
  d["cost"] = cost;
  d["cum_cost"] = cum;
  d["length"] = p.length();
  d["total_cost"] = p.total_cost();
  d["max_abs_roll"] = p.max_abs_roll();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Anisotropic path planning on inclined terrain";

  auto base = py::register_exception<Error>(m, "CamisError", PyExc_RuntimeError);
  py::register_exception<FormatError>(m, "FormatError", base.ptr());
  py::register_exception<DataError>(m, "DataError", base.ptr());
  py::register_exception<BoundsError>(m, "BoundsError", base.ptr());
  py::register_exception<SlipSingularityError>(m, "SlipSingularityError", base.ptr());
  py::register_exception<InvalidEllipseError>(m, "InvalidEllipseError", base.ptr());
  py::register_exception<UnreachableError>(m, "UnreachableError", base.ptr());
  py::register_exception<DivergenceError>(m, "DivergenceError", base.ptr());
  py::register_exception<ConfigError>(m, "ConfigError", base.ptr());

  py::class_<CamisModel>(m, "CamisModel")
      .def(py::init([](double rho, double mass, double gravity, double speed, double alpha_margin_deg,
                       const std::string& slip_family, double c_r, double c_a, double roll_weight_k) {
             CamisModel c;
             c.physics = {rho, mass, gravity, speed, deg2rad(alpha_margin_deg)};
             c.slip.family = parse_slip_family(slip_family);
             c.slip.c_r = c_r;
             c.slip.c_a = c_a;
             c.roll_weight.k = roll_weight_k;
             c.validate();
             return c;
           }),
           py::arg("rho") = 0.45, py::arg("mass") = 2.43, py::arg("gravity") = 9.8, py::arg("speed") = 0.5,
           py::arg("alpha_margin_deg") = 15.0, py::arg("slip_family") = "none", py::arg("c_r") = 0.0,
           py::arg("c_a") = 0.0, py::arg("roll_weight_k") = 0.0)
      .def_static("from_json", [](const std::string& text) { return model_from_json(nlohmann::json::parse(text)); })
      .def("to_json", [](const CamisModel& c) { return model_to_json(c).dump(); })
      .def("cost", &CamisModel::cost, py::arg("alpha"), py::arg("beta"), "Cost per meter at steepness alpha, heading beta")
      .def("direct_cost", &CamisModel::direct_cost, py::arg("alpha"), py::arg("beta"))
      .def("directional_costs",
           [](const CamisModel& c, double alpha) {
             const DirectionalCosts d = c.directional_costs(alpha);
             py::dict out;
             out["descent"] = d.descent;
             out["ascent"] = d.ascent;
             out["lateral1"] = d.lateral1;
             out["lateral2"] = d.lateral2;
             return out;
           },
           py::arg("alpha"))
      .def("anisotropy", [](const CamisModel& c, double alpha) { return anisotropy(c.ellipse(alpha)); },
           py::arg("alpha"))
      .def("isotropic_equivalent",
           [](const CamisModel& c, double alpha) { return isotropic_equivalent(c.ellipse(alpha)); }, py::arg("alpha"))
      .def_property_readonly("rho", [](const CamisModel& c) { return c.physics.rho; })
      .def_property_readonly("roll_weight_k", [](const CamisModel& c) { return c.roll_weight.k; });

  py::class_<HexTerrain, std::shared_ptr<HexTerrain>>(m, "Terrain")
      .def_static("from_array", &terrain_from_array, py::arg("z"), py::arg("cell"), py::arg("h"),
                  py::arg("smoothing") = 0, py::arg("nodata") = -9999.0,
                  "Elevation array with the top (northernmost) row first")
      .def_static("from_file",
                  [](const std::string& path, double h, int smoothing) {
                    return terrain_from_grid(load_elevation(path, ElevationFormat::AsciiGrid), h, smoothing);
                  },
                  py::arg("path"), py::arg("h"), py::arg("smoothing") = 0)
      .def_static("from_config",
                  [](const std::string& path) { return std::make_shared<HexTerrain>(build_terrain(load_run_config(path))); },
                  py::arg("path"))
      .def_property_readonly("resolution", &HexTerrain::resolution)
      .def("__len__", &HexTerrain::size)
      .def("positions",
           [](const HexTerrain& t) {
             std::vector<Vec2> p;
             for (std::size_t k = 0; k < t.size(); ++k) p.push_back(t.position(t.layout().index(k)));
             return to_array(p);
           })
      .def("steepness",
           [](const HexTerrain& t) {
             py::array_t<double> out(static_cast<py::ssize_t>(t.size()));
             for (std::size_t k = 0; k < t.size(); ++k) {
               out.mutable_at(static_cast<py::ssize_t>(k)) = t.node(k).valid ? t.node(k).steepness : std::nan("");
             }
             return out;
           })
      .def("node_at",
           [](const HexTerrain& t, double x, double y) -> py::object {
             const auto n = t.node_at(Vec2(x, y));
             if (!n) return py::none();
             return py::make_tuple(n->i, n->j);
           },
           py::arg("x"), py::arg("y"));

  m.def("plan", &plan_py, py::arg("terrain"), py::arg("model"), py::arg("start"), py::arg("goal"),
        py::arg("mode") = "anisotropic", py::arg("anisotropy_cap") = 10.0,
        "Bi-directional ordered upwind plan between two world points");
  m.def("profile", &profile_py, py::arg("path"), py::arg("terrain"), py::arg("model"),
        "Slope, attitude and cost sampled along a polyline");
}
