#include "wave_nonuniq/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "wave_nonuniq/errors.hpp"

namespace wave_nonuniq {

using nlohmann::json;

namespace {

double finite(double x, const char* what) {
  if (!std::isfinite(x)) throw InvalidInput(std::string("scenario field '") + what + "' must be finite");
  return x;
}

json mode_json(ModeIndex m) { return json::array({m.m1, m.m2}); }

ModeIndex mode_from(const json& j) {
  if (!j.is_array() || j.size() != 2) throw InvalidInput("a mode must be a [m1, m2] pair");
  const ModeIndex m{j.at(0).get<int>(), j.at(1).get<int>()};
  if (m.m1 < 0 || m.m2 < 0) throw InvalidInput("mode indices must be nonnegative");
  return m;
}

json coeffs_json(const Polynomial& p) {
  json arr = json::array();
  for (double c : p.coeffs()) arr.push_back(finite(c, "coefficient"));
  if (arr.empty()) arr.push_back(0.0);
  return arr;
}

json rational_json(const RationalFn& f) { return {{"num", coeffs_json(f.num())}, {"den", coeffs_json(f.den())}}; }

RationalFn rational_from(const json& j) {
  std::vector<double> num, den;
  for (const json& c : j.at("num")) num.push_back(finite(c.get<double>(), "num"));
  for (const json& c : j.at("den")) den.push_back(finite(c.get<double>(), "den"));
  return {Polynomial(num), Polynomial(den)};
}

json signal_json(const TimeSignal& s) {
  json arr = json::array();
  for (const SignalTerm& t : s.terms())
    arr.push_back({{"k", t.k}, {"a", finite(t.a, "a")}, {"b", finite(t.b, "b")},
                   {"alpha", finite(t.alpha, "alpha")}, {"beta", finite(t.beta, "beta")}});
  return arr;
}

TimeSignal signal_from(const json& j) {
  std::vector<SignalTerm> terms;
  for (const json& t : j) {
    SignalTerm term{t.at("k").get<int>(), finite(t.at("a").get<double>(), "a"), finite(t.at("b").get<double>(), "b"),
                    finite(t.at("alpha").get<double>(), "alpha"), finite(t.at("beta").get<double>(), "beta")};
    if (term.k < 0) throw InvalidInput("signal term power k must be nonnegative");
    terms.push_back(term);
  }
  return TimeSignal(std::move(terms));
}

std::string format17(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<double> split_csv_numbers(const std::string& line, std::size_t line_no) {
  std::vector<double> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(cell, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || !std::isfinite(v))
      throw InvalidInput("trace CSV line " + std::to_string(line_no) + ": bad number '" + cell + "'");
    out.push_back(v);
  }
  return out;
}

}  // namespace

ScenarioFile scenario_from(const CounterexampleScenario& sc) {
  ScenarioFile out;
  out.dom = sc.dom;
  out.c1 = sc.c1.c();
  out.c2 = sc.c2.c();
  out.source = sc.src;
  return out;
}

std::string serialize_scenario(const ScenarioFile& s) {
  json source = json::array();
  for (const auto& [m, rep] : s.source.entries()) {
    if (const auto* f = std::get_if<RationalFn>(&rep))
      source.push_back({{"mode", mode_json(m)}, {"laplace", rational_json(*f)}});
    else if (const auto* sig = std::get_if<TimeSignal>(&rep))
      source.push_back({{"mode", mode_json(m)}, {"time", signal_json(*sig)}});
    else
      throw UnsupportedRepresentation("callable source entries cannot be written to a scenario file");
  }
  json j = {
      {"schema_version", kScenarioSchemaVersion},
      {"domain", {{"L1", finite(s.dom.L1, "L1")}, {"L2", finite(s.dom.L2, "L2")}}},
      {"c1", finite(s.c1, "c1")},
      {"c2", finite(s.c2, "c2")},
      {"source", source},
      {"simulation",
       {{"t_end", finite(s.simulation.t_end, "t_end")},
        {"dt", finite(s.simulation.dt, "dt")},
        {"n_x1", s.simulation.n_x1},
        {"fdtd_h", finite(s.simulation.fdtd_h, "fdtd_h")},
        {"fdtd_dt", finite(s.simulation.fdtd_dt, "fdtd_dt")}}},
      {"obstruction", {{"truncation", s.obstruction_truncation}}},
  };
  if (s.construction) {
    json modes = json::array(), seeds = json::array();
    for (ModeIndex m : s.construction->modes) modes.push_back(mode_json(m));
    for (const RationalFn& f : s.construction->seeds) seeds.push_back(rational_json(f));
    j["construction"] = {{"kind", s.construction->kind}, {"modes", modes}, {"seeds", seeds}};
  }
  return j.dump(2) + "\n";
}

ScenarioFile parse_scenario(std::string_view text) {
  try {
    const json j = json::parse(text);
    const int version = j.at("schema_version").get<int>();
    if (version != kScenarioSchemaVersion)
      throw InvalidInput("unsupported scenario schema_version " + std::to_string(version));
    ScenarioFile s;
    s.dom = {finite(j.at("domain").at("L1").get<double>(), "L1"), finite(j.at("domain").at("L2").get<double>(), "L2")};
    s.dom.validate();
    s.c1 = finite(j.at("c1").get<double>(), "c1");
    s.c2 = finite(j.at("c2").get<double>(), "c2");
    for (const json& e : j.at("source")) {
      const ModeIndex m = mode_from(e.at("mode"));
      if (s.source.contains(m)) throw InvalidInput("duplicate source entry for a mode");
      if (e.contains("laplace"))
        s.source.set(m, rational_from(e.at("laplace")));
      else if (e.contains("time"))
        s.source.set(m, signal_from(e.at("time")));
      else
        throw InvalidInput("source entry needs a 'laplace' or 'time' representation");
    }
    if (j.contains("simulation")) {
      const json& sim = j.at("simulation");
      s.simulation.t_end = finite(sim.value("t_end", s.simulation.t_end), "t_end");
      s.simulation.dt = finite(sim.value("dt", s.simulation.dt), "dt");
      s.simulation.n_x1 = sim.value("n_x1", s.simulation.n_x1);
      s.simulation.fdtd_h = finite(sim.value("fdtd_h", s.simulation.fdtd_h), "fdtd_h");
      s.simulation.fdtd_dt = finite(sim.value("fdtd_dt", s.simulation.fdtd_dt), "fdtd_dt");
    }
    if (j.contains("obstruction")) s.obstruction_truncation = j.at("obstruction").value("truncation", 50);
    if (j.contains("construction")) {
      ConstructionRecord rec;
      const json& c = j.at("construction");
      rec.kind = c.at("kind").get<std::string>();
      for (const json& m : c.at("modes")) rec.modes.push_back(mode_from(m));
      for (const json& f : c.at("seeds")) rec.seeds.push_back(rational_from(f));
      s.construction = std::move(rec);
    }
    return s;
  } catch (const json::exception& e) {
    throw InvalidInput(std::string("malformed scenario file: ") + e.what());
  }
}

ScenarioFile read_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open scenario file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_scenario(ss.str());
}

void write_scenario(const std::filesystem::path& path, const ScenarioFile& s) {
  const std::string text = serialize_scenario(s);
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write scenario file " + path.string());
  out << text;
}

void write_trace_csv(std::ostream& out, const SurfaceTrace& trace) {
  out << 't';
  for (double x : trace.x1) out << ',' << format17(x);
  out << '\n';
  for (std::size_t i = 0; i < trace.nt(); ++i) {
    out << format17(trace.t[i]);
    for (std::size_t j = 0; j < trace.nx(); ++j) out << ',' << format17(trace(i, j));
    out << '\n';
  }
}

SurfaceTrace read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("t,", 0) != 0)
    throw InvalidInput("trace CSV must start with a 't,<x1 values>' header");
  std::vector<double> x1 = split_csv_numbers(line.substr(2), 1);
  std::vector<double> t, values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<double> row = split_csv_numbers(line, line_no);
    if (row.size() != x1.size() + 1)
      throw InvalidInput("trace CSV line " + std::to_string(line_no) + " has " + std::to_string(row.size()) +
                         " columns, expected " + std::to_string(x1.size() + 1));
    t.push_back(row[0]);
    values.insert(values.end(), row.begin() + 1, row.end());
  }
  SurfaceTrace trace(std::move(x1), std::move(t));
  trace.values = std::move(values);
  return trace;
}

void write_trace_csv(const std::filesystem::path& path, const SurfaceTrace& trace) {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write trace file " + path.string());
  write_trace_csv(out, trace);
}

SurfaceTrace read_trace_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open trace file " + path.string());
  return read_trace_csv(in);
}

}  // namespace wave_nonuniq
