#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "wave_nonuniq/constructor.hpp"
#include "wave_nonuniq/errors.hpp"
#include "wave_nonuniq/fdtd.hpp"
#include "wave_nonuniq/laplace.hpp"
#include "wave_nonuniq/scenario.hpp"
#include "wave_nonuniq/verification.hpp"

namespace py = pybind11;
using namespace wave_nonuniq;

namespace {

using ModeTuple = std::pair<int, int>;

ModeIndex to_mode(const ModeTuple& m) { return {m.first, m.second}; }

BoxDomain domain(double L1, double L2) {
  BoxDomain d{L1, L2};
  d.validate();
  return d;
}

py::array_t<double> trace_values(const SurfaceTrace& tr) {
  py::array_t<double> out({tr.nt(), tr.nx()});
  std::copy(tr.values.begin(), tr.values.end(), out.mutable_data());
  return out;
}

SurfaceTrace trace_from(std::vector<double> x1, std::vector<double> t, const py::array_t<double>& values) {
  SurfaceTrace tr(std::move(x1), std::move(t));
  const auto v = values.unchecked<2>();
  if (static_cast<std::size_t>(v.shape(0)) != tr.nt() || static_cast<std::size_t>(v.shape(1)) != tr.nx())
    throw InvalidInput("values must have shape (len(t), len(x1))");
  for (std::size_t i = 0; i < tr.nt(); ++i)
    for (std::size_t j = 0; j < tr.nx(); ++j) tr(i, j) = v(i, j);
  return tr;
}

std::string rational_repr(const RationalFn& f) {
  std::ostringstream s;
  s << "RationalFn(num=[";
  for (int k = 0; k <= f.num().degree(); ++k) s << (k ? ", " : "") << f.num()[k];
  s << "], den=[";
  for (int k = 0; k <= f.den().degree(); ++k) s << (k ? ", " : "") << f.den()[k];
  s << "])";
  return s.str();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Nonuniqueness counterexamples for recovering a wave speed from surface data";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<InvalidInput>(m, "InvalidInput", base.ptr());
  py::register_exception<ContractError>(m, "ContractError", base.ptr());
  py::register_exception<UnsupportedMultiplicity>(m, "UnsupportedMultiplicity", base.ptr());
  py::register_exception<DegenerateVelocities>(m, "DegenerateVelocities", base.ptr());
  py::register_exception<ModeMismatch>(m, "ModeMismatch", base.ptr());
  py::register_exception<TrivialSource>(m, "TrivialSource", base.ptr());
  py::register_exception<UnsupportedRepresentation>(m, "UnsupportedRepresentation", base.ptr());
  py::register_exception<GridMismatch>(m, "GridMismatch", base.ptr());
  py::register_exception<StabilityError>(m, "StabilityError", base.ptr());

  py::class_<RationalFn>(m, "RationalFn", "Real rational function num(p)/den(p), ascending coefficients")
      .def(py::init([](std::vector<double> num, std::vector<double> den) {
             return RationalFn(Polynomial(std::move(num)), Polynomial(std::move(den)));
           }),
           py::arg("num"), py::arg("den"))
      .def_property_readonly("num", [](const RationalFn& f) { return f.num().coeffs(); })
      .def_property_readonly("den", [](const RationalFn& f) { return f.den().coeffs(); })
      .def("strictly_proper", &RationalFn::strictly_proper)
      .def("__call__", [](const RationalFn& f, double p) { return f(p); })
      .def("__call__", [](const RationalFn& f, std::complex<double> p) { return f(p); })
      .def("__add__", [](const RationalFn& a, const RationalFn& b) { return a + b; })
      .def("__sub__", [](const RationalFn& a, const RationalFn& b) { return a - b; })
      .def("__mul__", [](const RationalFn& a, const RationalFn& b) { return a * b; })
      .def("__mul__", [](const RationalFn& a, double s) { return rat_scale(a, s); })
      .def("__rmul__", [](const RationalFn& a, double s) { return rat_scale(a, s); })
      .def("__neg__", [](const RationalFn& a) { return -a; })
      .def("__repr__", &rational_repr);

  py::class_<TimeSignal>(m, "TimeSignal", "Sum of t^k/k! e^{a t} (alpha cos bt + beta sin bt)")
      .def(py::init([](const std::vector<std::tuple<int, double, double, double, double>>& terms) {
             std::vector<SignalTerm> out;
             for (const auto& [k, a, b, alpha, beta] : terms) out.push_back({k, a, b, alpha, beta});
             return TimeSignal(std::move(out));
           }),
           py::arg("terms"))
      .def_property_readonly("terms",
                             [](const TimeSignal& s) {
                               std::vector<std::tuple<int, double, double, double, double>> out;
                               for (const SignalTerm& t : s.terms()) out.emplace_back(t.k, t.a, t.b, t.alpha, t.beta);
                               return out;
                             })
      .def("__call__", [](const TimeSignal& s, double t) { return s(t); })
      .def("sample", [](const TimeSignal& s, const std::vector<double>& t) { return s.sample(t); });

  m.def("inverse_laplace", &inverse_laplace, py::arg("f"));
  m.def("laplace", &laplace, py::arg("signal"));
  m.def("partial_fractions", [](const RationalFn& f) {
    std::vector<std::tuple<std::complex<double>, int, std::vector<std::complex<double>>>> out;
    for (const PartialFraction& pf : partial_fractions(f))
      out.emplace_back(pf.pole.location, pf.pole.multiplicity, pf.coeffs);
    return out;
  });

  py::class_<CounterexampleScenario>(m, "Scenario")
      .def_property_readonly("c1", [](const CounterexampleScenario& s) { return s.c1.c(); })
      .def_property_readonly("c2", [](const CounterexampleScenario& s) { return s.c2.c(); })
      .def_property_readonly("L1", [](const CounterexampleScenario& s) { return s.dom.L1; })
      .def_property_readonly("L2", [](const CounterexampleScenario& s) { return s.dom.L2; })
      .def_readonly("warnings", &CounterexampleScenario::warnings)
      .def_property_readonly("source",
                             [](const CounterexampleScenario& s) {
                               std::map<ModeTuple, RationalFn> out;
                               for (const auto& [mode, rep] : s.src.entries())
                                 if (const auto* f = std::get_if<RationalFn>(&rep)) out.emplace(ModeTuple{mode.m1, mode.m2}, *f);
                               return out;
                             })
      .def("to_json", [](const CounterexampleScenario& s) { return serialize_scenario(scenario_from(s)); });

  m.def("paper_example", &paper_example);
  m.def(
      "construct_pair",
      [](double c1, double c2, ModeTuple a, ModeTuple b, const RationalFn& seed, double L1, double L2) {
        return construct_pair(VelocityProfile(c1), VelocityProfile(c2), to_mode(a), to_mode(b), seed, domain(L1, L2));
      },
      py::arg("c1"), py::arg("c2"), py::arg("mode_a"), py::arg("mode_b"), py::arg("seed"),
      py::arg("L1") = std::numbers::pi, py::arg("L2") = std::numbers::pi,
      "Seed mode_b and solve for mode_a.");
  m.def(
      "construct_multi",
      [](double c1, double c2, const std::vector<ModeTuple>& modes, const std::vector<RationalFn>& seeds, double L1,
         double L2) {
        std::vector<ModeIndex> ms;
        for (const auto& mt : modes) ms.push_back(to_mode(mt));
        return construct_multi(VelocityProfile(c1), VelocityProfile(c2), ms, seeds, domain(L1, L2));
      },
      py::arg("c1"), py::arg("c2"), py::arg("modes"), py::arg("seeds"), py::arg("L1") = std::numbers::pi,
      py::arg("L2") = std::numbers::pi, "Seed all but the last mode and solve for the last.");
  m.def(
      "verify_identity_symbolic",
      [](const CounterexampleScenario& s) {
        const SymbolicCheck chk = verify_identity_symbolic(s.src, s.c1, s.c2, s.dom);
        py::dict out;
        out["zero"] = chk.zero;
        out["trivial"] = chk.trivial;
        out["residuals"] = chk.residuals;
        out["scales"] = chk.scales;
        return out;
      },
      py::arg("scenario"));

  py::class_<SurfaceTrace>(m, "SurfaceTrace", "Surface values u(x1, 0, t), shape (len(t), len(x1))")
      .def(py::init(&trace_from), py::arg("x1"), py::arg("t"), py::arg("values"))
      .def_readonly("x1", &SurfaceTrace::x1)
      .def_readonly("t", &SurfaceTrace::t)
      .def_property_readonly("values", &trace_values)
      .def("max_abs", &SurfaceTrace::max_abs);

  m.def(
      "surface_trace",
      [](const CounterexampleScenario& s, double c, double t_end, double dt, int nx1) {
        return surface_trace(s.src, VelocityProfile(c), s.dom, surface_grid(s.dom, nx1), uniform_time_grid(t_end, dt));
      },
      py::arg("scenario"), py::arg("c"), py::arg("t_end") = 10.0, py::arg("dt") = 0.01, py::arg("nx1") = 64,
      "Spectral surface trace for wave speed c.");
  m.def(
      "fdtd_trace",
      [](const CounterexampleScenario& s, double c, double h, double t_end, double dt, int nx1, double fdtd_dt) {
        const VelocityProfile v(c);
        const FdtdGrid g = make_fdtd_grid(s.dom, h, v, fdtd_dt);
        return simulate(s.src, v, s.dom, g, surface_grid(s.dom, nx1), uniform_time_grid(t_end, dt));
      },
      py::arg("scenario"), py::arg("c"), py::arg("h") = std::numbers::pi / 200, py::arg("t_end") = 10.0,
      py::arg("dt") = 0.01, py::arg("nx1") = 64, py::arg("fdtd_dt") = 0.0,
      "Finite-difference surface trace; fdtd_dt = 0 picks the largest stable step.");
  m.def(
      "compare_traces",
      [](const SurfaceTrace& a, const SurfaceTrace& b, double tol, double floor) {
        const TraceReport r = compare_traces(a, b, tol, floor);
        py::dict out;
        out["sup_diff"] = r.sup_diff;
        out["l2_diff"] = r.l2_diff;
        out["max_magnitude"] = r.max_magnitude;
        out["tolerance"] = r.tolerance;
        out["nontriviality_floor"] = r.nontriviality_floor;
        out["pass"] = r.pass;
        return out;
      },
      py::arg("a"), py::arg("b"), py::arg("tol") = kSpectralTraceTol, py::arg("floor") = -1.0);
  m.def("relative_l2_error", &relative_l2_error, py::arg("reference"), py::arg("candidate"));
  m.def(
      "convergence_study",
      [](const CounterexampleScenario& s, double c, const std::vector<double>& hs, double t_end) {
        const ConvergenceReport r = convergence_study(s.src, VelocityProfile(c), s.dom, hs, t_end);
        py::dict out;
        out["h"] = r.h;
        out["dt"] = r.dt;
        out["errors"] = r.errors;
        out["orders"] = r.orders;
        out["observed_order"] = r.observed_order;
        out["degenerate"] = r.degenerate;
        return out;
      },
      py::arg("scenario"), py::arg("c"), py::arg("hs"), py::arg("t_end"));
  m.def(
      "surface_source_obstruction",
      [](double c1, double c2, int m1, int truncation, const std::vector<double>& p, double L1, double L2) {
        const ObstructionReport r =
            surface_source_obstruction(VelocityProfile(c1), VelocityProfile(c2), m1, truncation, p, domain(L1, L2));
        py::list rows;
        for (const ObstructionRow& row : r.rows) {
          py::dict d;
          d["p"] = row.p;
          d["partial_sums"] = row.partial_sums;
          d["same_sign"] = row.same_sign;
          d["monotone"] = row.monotone;
          rows.append(d);
        }
        py::dict out;
        out["expected_sign"] = r.expected_sign;
        out["rows"] = rows;
        out["forces_trivial_source"] = r.forces_trivial_source();
        return out;
      },
      py::arg("c1"), py::arg("c2"), py::arg("m1"), py::arg("truncation"), py::arg("p"),
      py::arg("L1") = std::numbers::pi, py::arg("L2") = std::numbers::pi);
}
