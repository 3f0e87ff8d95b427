#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "helix/classical.hpp"
#include "helix/cli/checks.hpp"
#include "helix/cli/config.hpp"
#include "helix/cli/export.hpp"
#include "helix/cli/scenarios.hpp"
#include "helix/errors.hpp"
#include "helix/nonrel.hpp"
#include "helix/numerics/grid.hpp"
#include "helix/numerics/propagate.hpp"
#include "helix/params.hpp"
#include "helix/rel.hpp"
#include "helix/specfun.hpp"

namespace py = pybind11;
using namespace helix;

namespace {

using classical::PhaseSpacePoint;
using classical::TrajectoryParams;

Vec3 vec(const std::array<double, 3>& a) { return {a[0], a[1], a[2]}; }

py::array_t<cplx> to_numpy(const numerics::ComplexField& f) {
  const auto& n = f.grid.n;
  py::array_t<cplx> out({n[0], n[1], n[2]});
  std::copy(f.data.begin(), f.data.end(), out.mutable_data());
  return out;
}

numerics::ComplexField from_numpy(const numerics::Grid3& g, py::array_t<cplx, py::array::c_style | py::array::forcecast> a) {
  if (std::size_t(a.size()) != g.size()) throw DomainError("array size does not match the grid");
  numerics::ComplexField f(g);
  std::copy(a.data(), a.data() + a.size(), f.data.begin());
  return f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Helical Landau states, their relativistic lifts and the numerical checks around them";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<AccuracyError>(m, "AccuracyError", PyExc_ArithmeticError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

  py::class_<PhysParams>(m, "PhysParams")
      .def(py::init([](double mass, double c, double hbar, double B) { return PhysParams{mass, c, hbar, B}; }),
           py::arg("m") = 1.0, py::arg("c") = 1.0, py::arg("hbar") = 1.0, py::arg("B") = 1.0)
      .def_readwrite("m", &PhysParams::m)
      .def_readwrite("c", &PhysParams::c)
      .def_readwrite("hbar", &PhysParams::hbar)
      .def_readwrite("B", &PhysParams::B)
      .def("magnetic_length", &PhysParams::magnetic_length)
      .def("cyclotron_frequency", &PhysParams::cyclotron_frequency, py::arg("M"))
      .def("__repr__", [](const PhysParams& p) {
        std::ostringstream os;
        os << "PhysParams(m=" << p.m << ", c=" << p.c << ", hbar=" << p.hbar << ", B=" << p.B << ")";
        return os.str();
      });
  m.def("natural_units", &natural_units, py::arg("B"));
  m.def("from_si", &from_si, py::arg("mass_kg"), py::arg("B_tesla"));

  py::class_<PhaseSpacePoint>(m, "PhaseSpacePoint")
      .def(py::init([](double x, double y, double z, double px, double py_, double pz) {
             PhaseSpacePoint p;
             p.x = x, p.y = y, p.z = z, p.px = px, p.py = py_, p.pz = pz;
             return p;
           }),
           py::arg("x") = 0.0, py::arg("y") = 0.0, py::arg("z") = 0.0, py::arg("px") = 0.0,
           py::arg("py") = 0.0, py::arg("pz") = 0.0)
      .def_readwrite("x", &PhaseSpacePoint::x)
      .def_readwrite("y", &PhaseSpacePoint::y)
      .def_readwrite("z", &PhaseSpacePoint::z)
      .def_readwrite("px", &PhaseSpacePoint::px)
      .def_readwrite("py", &PhaseSpacePoint::py)
      .def_readwrite("pz", &PhaseSpacePoint::pz)
      .def("as_tuple", [](const PhaseSpacePoint& p) { return py::make_tuple(p.x, p.y, p.z, p.px, p.py, p.pz); });

  py::class_<TrajectoryParams>(m, "TrajectoryParams")
      .def_static("nonrelativistic", &TrajectoryParams::nonrelativistic, py::arg("initial"), py::arg("params"))
      .def_static("relativistic", &TrajectoryParams::relativistic, py::arg("initial"), py::arg("params"))
      .def_static("with_mass", &TrajectoryParams::with_mass, py::arg("initial"), py::arg("params"), py::arg("M"))
      .def_readonly("initial", &TrajectoryParams::initial)
      .def_readonly("M", &TrajectoryParams::M)
      .def_readonly("omega", &TrajectoryParams::omega)
      .def("period", &TrajectoryParams::period)
      .def("at", &classical::trajectory_closed_form, py::arg("t"));
  m.def("trajectory_rk4", &classical::trajectory_rk4, py::arg("traj"), py::arg("t"), py::arg("dt"));
  m.def("hamiltonian_nr", &classical::hamiltonian_nr, py::arg("point"), py::arg("params"));
  m.def("hamiltonian_rl", &classical::hamiltonian_rl, py::arg("point"), py::arg("params"));

  m.def("laguerre", &specfun::laguerre, py::arg("n"), py::arg("l"), py::arg("x"));
  m.def("landau_norm", &specfun::landau_norm, py::arg("n"), py::arg("l"), py::arg("B"));

  m.def(
      "landau_profile",
      [](int n, int l, double B, double x, double y) { return nonrel::landau_profile({n, l}, B, x, y).value; },
      py::arg("n"), py::arg("l"), py::arg("B"), py::arg("x"), py::arg("y"));
  m.def(
      "helical_state",
      [](const PhysParams& P, int n, int l, double d, const TrajectoryParams& tp, std::array<double, 3> r, double t) {
        return nonrel::helical_state(P, {{n, l}, d, 0.0}, tp, vec(r), t);
      },
      py::arg("params"), py::arg("n"), py::arg("l"), py::arg("d"), py::arg("traj"), py::arg("r"), py::arg("t"));
  m.def(
      "density_helical",
      [](const PhysParams& P, int n, int l, double d, const TrajectoryParams& tp, std::array<double, 3> r, double t) {
        return nonrel::density_helical(P, {{n, l}, d, 0.0}, tp, vec(r), t);
      },
      py::arg("params"), py::arg("n"), py::arg("l"), py::arg("d"), py::arg("traj"), py::arg("r"), py::arg("t"));
  m.def(
      "centroid",
      [](const PhysParams& P, int n, int l, double d, const TrajectoryParams& tp, double t) {
        const nonrel::PacketParams pk{{n, l}, d, 0.0};
        const auto c = nonrel::centroid(P, pk, tp, t, nonrel::default_quadrature(P, pk, tp, t));
        return py::make_tuple(c.mean[0], c.mean[1], c.mean[2]);
      },
      py::arg("params"), py::arg("n"), py::arg("l"), py::arg("d"), py::arg("traj"), py::arg("t"));

  py::enum_<rel::Spin>(m, "Spin").value("up", rel::Spin::up).value("down", rel::Spin::down);
  py::class_<rel::KGHelicalParams>(m, "KGHelicalParams")
      .def(py::init([](int n, int l, double M, const PhaseSpacePoint& traj, rel::Spin spin) {
             return rel::KGHelicalParams{{n, l}, M, traj, spin};
           }),
           py::arg("n"), py::arg("l"), py::arg("M"), py::arg("traj") = PhaseSpacePoint{},
           py::arg("spin") = rel::Spin::up)
      .def_readwrite("M", &rel::KGHelicalParams::M)
      .def_readwrite("traj", &rel::KGHelicalParams::traj)
      .def_readwrite("spin", &rel::KGHelicalParams::spin);
  m.def(
      "kg_helical",
      [](const rel::KGHelicalParams& p, const PhysParams& P, std::array<double, 3> r, double t) {
        return rel::kg_helical(p, P, vec(r), t);
      },
      py::arg("kg"), py::arg("params"), py::arg("r"), py::arg("t"));
  m.def(
      "dirac_helical",
      [](const rel::KGHelicalParams& p, const PhysParams& P, std::array<double, 3> r, double t) {
        return rel::dirac_helical(p, P, vec(r), t).c;
      },
      py::arg("kg"), py::arg("params"), py::arg("r"), py::arg("t"));
  m.def(
      "dirac_lift_of_kg",
      [](const rel::KGHelicalParams& p, const PhysParams& P, std::array<double, 3> r, double t) {
        return rel::dirac_lift(rel::kg_helical_jet(p, P, vec(r), t), p.spin, P, vec(r)).c;
      },
      py::arg("kg"), py::arg("params"), py::arg("r"), py::arg("t"));
  m.def(
      "dirac_corrections",
      [](const rel::KGHelicalParams& p, const PhysParams& P, double t_minus) {
        const auto c = rel::dirac_corrections(p, P, t_minus);
        return py::make_tuple(c.x, c.y);
      },
      py::arg("kg"), py::arg("params"), py::arg("t_minus"));
  m.def(
      "corrections_oracle",
      [](const rel::KGHelicalParams& p, const PhysParams& P, double t_minus) {
        const auto c = rel::corrections_oracle(p, P, t_minus, rel::default_corrections_quadrature(p, P, t_minus));
        return py::make_tuple(c.x, c.y);
      },
      py::arg("kg"), py::arg("params"), py::arg("t_minus"));
  m.def(
      "wrong_side_fraction",
      [](const rel::KGHelicalParams& p, const PhysParams& P, std::array<double, 3> probe, double t_span, int samples,
         bool conjugate) { return rel::positivity_spectrum(p, P, vec(probe), t_span, samples, conjugate).wrong_side_fraction; },
      py::arg("kg"), py::arg("params"), py::arg("probe"), py::arg("t_span"), py::arg("samples") = 4096,
      py::arg("conjugate") = false);

  py::class_<numerics::Grid3>(m, "Grid3")
      .def(py::init([](std::array<int, 3> n, std::array<double, 3> origin, std::array<double, 3> spacing) {
             numerics::Grid3 g{n, vec(origin), vec(spacing)};
             g.validate();
             return g;
           }),
           py::arg("n"), py::arg("origin"), py::arg("spacing"))
      .def_static("centered", &numerics::Grid3::centered, py::arg("dim"), py::arg("count"), py::arg("half_width"))
      .def_readonly("n", &numerics::Grid3::n)
      .def_readonly("origin", &numerics::Grid3::origin)
      .def_readonly("spacing", &numerics::Grid3::spacing);
  m.def(
      "splitstep_propagate",
      [](const numerics::Grid3& g, py::array_t<cplx, py::array::c_style | py::array::forcecast> initial, double M,
         const PhysParams& P, double t_final, int steps) {
        numerics::ComplexField out;
        {
          auto f = from_numpy(g, initial);
          py::gil_scoped_release release;
          out = numerics::splitstep_propagate(f, M, P, t_final, steps);
        }
        return to_numpy(out);
      },
      py::arg("grid"), py::arg("initial"), py::arg("M"), py::arg("params"), py::arg("t_final"), py::arg("steps"));

  m.def(
      "load_field",
      [](const std::string& path) {
        const auto f = cli::load_field(path);
        py::array_t<double> values(f.values.size());
        std::copy(f.values.begin(), f.values.end(), values.mutable_data());
        return py::make_tuple(values, f.grid, f.meta.dump());
      },
      py::arg("path"), "Payload as a flat float64 array, its grid and the sidecar JSON text.");
  m.def(
      "run_config",
      [](const std::string& path, std::optional<std::string> out) {
        auto c = cli::load_config(path);
        if (out) c.output = *out;
        std::ostringstream log;
        const int code = cli::run(c, log);
        return py::make_tuple(code, log.str());
      },
      py::arg("path"), py::arg("out") = py::none());
  m.def("available_checks", &cli::available_checks);
  m.def(
      "run_checks",
      [](const std::vector<std::string>& names, double tolerance_scale) {
        return cli::run_checks(names, tolerance_scale).to_json().dump();
      },
      py::arg("names") = std::vector<std::string>{}, py::arg("tolerance_scale") = 1.0,
      "Runs verification checks and returns the report as JSON text.");
}
