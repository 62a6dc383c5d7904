#include "wave_nonuniq/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "wave_nonuniq/constructor.hpp"
#include "wave_nonuniq/errors.hpp"
#include "wave_nonuniq/fdtd.hpp"
#include "wave_nonuniq/scenario.hpp"
#include "wave_nonuniq/verification.hpp"

namespace wave_nonuniq::cli {

namespace {

std::vector<double> parse_numbers(const std::string& text, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != cell.size() || !std::isfinite(v))
      throw InvalidInput(std::string("bad number '") + cell + "' in " + what);
    out.push_back(v);
  }
  if (out.empty()) throw InvalidInput(std::string("empty list for ") + what);
  return out;
}

ModeIndex parse_mode(const std::string& text) {
  const auto v = parse_numbers(text, "--modes");
  if (v.size() != 2 || v[0] != std::floor(v[0]) || v[1] != std::floor(v[1]) || v[0] < 0 || v[1] < 0)
    throw InvalidInput("mode '" + text + "' must be two nonnegative integers 'm1,m2'");
  return {static_cast<int>(v[0]), static_cast<int>(v[1])};
}

double default_tolerance() {
  if (const char* env = std::getenv(kToleranceEnv)) {
    const auto v = parse_numbers(env, kToleranceEnv);
    if (v.size() != 1 || !(v[0] > 0.0)) throw InvalidInput(std::string(kToleranceEnv) + " must be one positive number");
    return v[0];
  }
  return kSpectralTraceTol;
}

void print_report(std::ostream& out, const TraceReport& r) {
  out << "sup_diff: " << r.sup_diff << '\n'
      << "l2_diff: " << r.l2_diff << '\n'
      << "max_magnitude: " << r.max_magnitude << '\n'
      << "tolerance: " << r.tolerance << '\n'
      << "nontriviality_floor: " << r.nontriviality_floor << '\n'
      << "pass: " << (r.pass ? "true" : "false") << '\n';
}

struct ConstructArgs {
  bool paper = false;
  double c1 = NAN, c2 = NAN;
  std::vector<std::string> modes;
  std::vector<std::string> seed_num, seed_den;
  double L1 = std::numbers::pi, L2 = std::numbers::pi;
  SimulationSettings sim;
  int truncation = 50;
  std::string output;
};

int cmd_construct(const ConstructArgs& a, std::ostream& out, std::ostream& err) {
  ScenarioFile file;
  std::vector<std::string> warnings;
  if (a.paper) {
    const CounterexampleScenario sc = paper_example();
    file = scenario_from(sc);
    file.construction = ConstructionRecord{"paper-example", {{0, 2}, {0, 1}}, {std::get<RationalFn>(sc.src.at({0, 2}))}};
  } else {
    if (std::isnan(a.c1) || std::isnan(a.c2)) throw InvalidInput("construct needs --c1 and --c2 (or --paper-example)");
    if (a.modes.size() < 2) throw InvalidInput("construct needs at least two --modes");
    if (a.seed_num.size() != a.modes.size() - 1 || a.seed_den.size() != a.modes.size() - 1)
      throw InvalidInput("construct needs one --seed-num and one --seed-den per seeded mode (" +
                         std::to_string(a.modes.size() - 1) + ")");
    // The first listed mode is solved; the rest carry the seeds in order.
    std::vector<ModeIndex> modes;
    for (std::size_t i = 1; i < a.modes.size(); ++i) modes.push_back(parse_mode(a.modes[i]));
    modes.push_back(parse_mode(a.modes[0]));
    std::vector<RationalFn> seeds;
    for (std::size_t i = 0; i < a.seed_num.size(); ++i)
      seeds.emplace_back(Polynomial(parse_numbers(a.seed_num[i], "--seed-num")),
                         Polynomial(parse_numbers(a.seed_den[i], "--seed-den")));
    const BoxDomain dom{a.L1, a.L2};
    const CounterexampleScenario sc = construct_multi(VelocityProfile(a.c1), VelocityProfile(a.c2), modes, seeds, dom);
    warnings = sc.warnings;
    file = scenario_from(sc);
    file.construction = ConstructionRecord{"seeded", modes, seeds};
  }
  file.simulation = a.sim;
  file.obstruction_truncation = a.truncation;

  const SymbolicCheck check =
      verify_identity_symbolic(file.source, VelocityProfile(file.c1), VelocityProfile(file.c2), file.dom);
  if (!check.zero) throw ContractError("constructed scenario fails the symbolic matching check");
  write_scenario(a.output, file);
  for (const std::string& w : warnings) err << "warning: " << w << '\n';
  out << "wrote " << a.output << " (" << file.source.entries().size() << " modal entries, symbolic residual zero)\n";
  return kPass;
}

struct SimulateArgs {
  std::string scenario;
  std::string method = "spectral";
  std::string velocity = "c1";
  std::string output;
  std::optional<double> t_end, dt, fdtd_h, fdtd_dt;
  std::optional<int> nx1;
};

SimulationSettings apply_overrides(SimulationSettings s, const SimulateArgs& a) {
  if (a.t_end) s.t_end = *a.t_end;
  if (a.dt) s.dt = *a.dt;
  if (a.nx1) s.n_x1 = *a.nx1;
  if (a.fdtd_h) s.fdtd_h = *a.fdtd_h;
  if (a.fdtd_dt) s.fdtd_dt = *a.fdtd_dt;
  return s;
}

SurfaceTrace run_simulation(const ScenarioFile& file, const SimulationSettings& sim, const std::string& method,
                            VelocityProfile c) {
  const auto t = uniform_time_grid(sim.t_end, sim.dt);
  const auto x1 = surface_grid(file.dom, sim.n_x1);
  if (method == "spectral") return surface_trace(file.source, c, file.dom, x1, t);
  const FdtdGrid grid = make_fdtd_grid(file.dom, sim.fdtd_h, c, sim.fdtd_dt);
  return simulate(file.source, c, file.dom, grid, x1, t);
}

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  const ScenarioFile file = read_scenario(a.scenario);
  const VelocityProfile c(a.velocity == "c1" ? file.c1 : file.c2);
  const SurfaceTrace trace = run_simulation(file, apply_overrides(file.simulation, a), a.method, c);
  write_trace_csv(std::filesystem::path(a.output), trace);
  out << "wrote " << a.output << " (" << trace.nt() << " times x " << trace.nx() << " surface points, " << a.method
      << ", c = " << c.c() << ")\n";
  return kPass;
}

struct VerifyArgs {
  std::string trace_a, trace_b, scenario;
  bool obstruction = false;
  bool cross_check = false;
  std::optional<double> tol, floor;
  double c1 = 1.0, c2 = 2.0;
  int m1 = 0;
  int truncation = 50;
  std::string p_samples = "0.1,0.5,1,2,5,10";
};

int cmd_verify_obstruction(const VerifyArgs& a, std::ostream& out) {
  const auto p = parse_numbers(a.p_samples, "--p");
  const ObstructionReport rep = surface_source_obstruction(VelocityProfile(a.c1), VelocityProfile(a.c2), a.m1, a.truncation, p);
  out << "obstruction: surface-concentrated source\n"
      << "c1: " << a.c1 << "\nc2: " << a.c2 << "\nm1: " << a.m1 << "\nM: " << a.truncation << '\n'
      << "expected_sign: " << (rep.expected_sign > 0 ? "+" : "-") << '\n'
      << "p,T(M=1),T(M),same_sign,monotone\n";
  for (const ObstructionRow& row : rep.rows)
    out << row.p << ',' << row.partial_sums.at(1) << ',' << row.total() << ',' << (row.same_sign ? "true" : "false")
        << ',' << (row.monotone ? "true" : "false") << '\n';
  out << "forces_trivial_source: " << (rep.forces_trivial_source() ? "true" : "false") << '\n';
  return rep.forces_trivial_source() ? kPass : kVerificationFailed;
}

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
  if (a.obstruction) return cmd_verify_obstruction(a, out);
  const double tol = a.tol.value_or(default_tolerance());
  const double floor = a.floor.value_or(-1.0);

  if (!a.trace_a.empty() || !a.trace_b.empty()) {
    if (a.trace_a.empty() || a.trace_b.empty()) throw InvalidInput("verify needs both --trace-a and --trace-b");
    const TraceReport r = compare_traces(read_trace_csv(std::filesystem::path(a.trace_a)),
                                         read_trace_csv(std::filesystem::path(a.trace_b)), tol, floor);
    print_report(out, r);
    return r.pass ? kPass : kVerificationFailed;
  }
  if (a.scenario.empty()) throw InvalidInput("verify needs --scenario, --trace-a/--trace-b or --obstruction");

  const ScenarioFile file = read_scenario(a.scenario);
  const VelocityProfile c1(file.c1), c2(file.c2);
  bool pass = true;
  if (file.source.all_rational()) {
    const SymbolicCheck check = verify_identity_symbolic(file.source, c1, c2, file.dom);
    out << "symbolic_residual_zero: " << (check.zero ? "true" : "false") << '\n';
    pass = pass && check.zero && !check.trivial;
  }
  const SurfaceTrace u1 = run_simulation(file, file.simulation, "spectral", c1);
  const SurfaceTrace u2 = run_simulation(file, file.simulation, "spectral", c2);
  const TraceReport r = compare_traces(u1, u2, tol, floor);
  print_report(out, r);
  pass = pass && r.pass;
  if (a.cross_check) {
    for (const auto& [name, c] : {std::pair{"c1", c1}, std::pair{"c2", c2}}) {
      const SurfaceTrace fd = run_simulation(file, file.simulation, "fdtd", c);
      const double err = relative_l2_error(name == std::string("c1") ? u1 : u2, fd);
      out << "fdtd_relative_l2_" << name << ": " << err << '\n';
      pass = pass && err <= kFdtdRelativeL2Tol;
    }
  }
  out << "verdict: " << (pass ? "pass" : "fail") << '\n';
  return pass ? kPass : kVerificationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Construct and verify velocity-nonuniqueness counterexamples for surface wave data", "wave-nonuniq"};
  app.require_subcommand(1);

  ConstructArgs ca;
  auto* construct = app.add_subcommand("construct", "build a counterexample scenario file");
  construct->add_flag("--paper-example", ca.paper, "two-mode example with c1 = 1, c2 = 2");
  construct->add_option("--c1", ca.c1, "first wave speed");
  construct->add_option("--c2", ca.c2, "second wave speed");
  construct->add_option("--modes", ca.modes, "modes 'm1,m2'; the first is solved, the rest are seeded");
  construct->add_option("--seed-num", ca.seed_num, "seed numerator, ascending coefficients")->allow_extra_args(false);
  construct->add_option("--seed-den", ca.seed_den, "seed denominator, ascending coefficients")->allow_extra_args(false);
  construct->add_option("--L1", ca.L1, "box length along the surface");
  construct->add_option("--L2", ca.L2, "box depth");
  construct->add_option("--t-end", ca.sim.t_end);
  construct->add_option("--dt", ca.sim.dt);
  construct->add_option("--nx1", ca.sim.n_x1, "surface samples");
  construct->add_option("--fdtd-h", ca.sim.fdtd_h);
  construct->add_option("--truncation", ca.truncation);
  construct->add_option("-o,--output", ca.output, "scenario file to write")->required();

  SimulateArgs sa;
  auto* sim = app.add_subcommand("simulate", "write the surface trace of a scenario as CSV");
  sim->add_option("-s,--scenario", sa.scenario)->required();
  sim->add_option("--method", sa.method)->check(CLI::IsMember({"spectral", "fdtd"}));
  sim->add_option("--velocity", sa.velocity)->check(CLI::IsMember({"c1", "c2"}));
  sim->add_option("-o,--output", sa.output)->required();
  sim->add_option("--t-end", sa.t_end);
  sim->add_option("--dt", sa.dt);
  sim->add_option("--nx1", sa.nx1);
  sim->add_option("--fdtd-h", sa.fdtd_h);
  sim->add_option("--fdtd-dt", sa.fdtd_dt, "FDTD time step (default: largest stable)");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "compare surface traces or run the obstruction check");
  verify->add_option("--trace-a", va.trace_a);
  verify->add_option("--trace-b", va.trace_b);
  verify->add_option("-s,--scenario", va.scenario, "full pipeline: simulate both speeds and compare");
  verify->add_flag("--cross-check", va.cross_check, "also compare each spectral trace with FDTD");
  verify->add_option("--tol", va.tol, std::string("sup-difference tolerance (default ") + kToleranceEnv + " or 1e-9)");
  verify->add_option("--floor", va.floor, "nontriviality floor (default 1e3 x tol)");
  verify->add_flag("--obstruction", va.obstruction, "surface-concentrated source check");
  verify->add_option("--c1", va.c1);
  verify->add_option("--c2", va.c2);
  verify->add_option("--m1", va.m1);
  verify->add_option("--M", va.truncation);
  verify->add_option("--p", va.p_samples, "comma-separated Laplace samples");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  try {
    if (construct->parsed()) return cmd_construct(ca, out, err);
    if (sim->parsed()) return cmd_simulate(sa, out);
    return cmd_verify(va, out);
  } catch (const StabilityError& e) {
    err << "stability error: " << e.what() << '\n';
    return kStabilityError;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace wave_nonuniq::cli
