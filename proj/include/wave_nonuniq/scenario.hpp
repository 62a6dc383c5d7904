#pragma once

#include <filesystem>
#include <iosfwd>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wave_nonuniq/constructor.hpp"
#include "wave_nonuniq/spectral.hpp"

namespace wave_nonuniq {

inline constexpr int kScenarioSchemaVersion = 1;

struct SimulationSettings {
  double t_end = 10.0;
  double dt = 0.01;
  int n_x1 = 64;
  double fdtd_h = std::numbers::pi / 200.0;
  /// Nonpositive selects the largest stable step.
  double fdtd_dt = 0.0;
};

/// How the source was produced; informational, not needed to simulate.
struct ConstructionRecord {
  std::string kind;              // "paper-example" or "seeded"
  std::vector<ModeIndex> modes;  // seeded modes first, solved mode last
  std::vector<RationalFn> seeds;
};

/// Everything a CLI run needs: geometry, the two speeds, the modal source in
/// Laplace or closed-form time representation, and run parameters.
struct ScenarioFile {
  BoxDomain dom;
  double c1 = 1.0;
  double c2 = 2.0;
  ModalSource source;
  SimulationSettings simulation;
  int obstruction_truncation = 50;
  std::optional<ConstructionRecord> construction;
};

ScenarioFile scenario_from(const CounterexampleScenario& sc);

/// Canonical JSON text (sorted keys, shortest round-trip doubles, trailing
/// newline). Throws UnsupportedRepresentation for callable source entries.
std::string serialize_scenario(const ScenarioFile& s);
/// Throws InvalidInput on malformed text, schema violations or non-finite numbers.
ScenarioFile parse_scenario(std::string_view text);

ScenarioFile read_scenario(const std::filesystem::path& path);
void write_scenario(const std::filesystem::path& path, const ScenarioFile& s);

/// CSV with header `t,<x1_0>,<x1_1>,...` and one row per time sample; every
/// number is written with 17 significant digits.
void write_trace_csv(std::ostream& out, const SurfaceTrace& trace);
SurfaceTrace read_trace_csv(std::istream& in);

void write_trace_csv(const std::filesystem::path& path, const SurfaceTrace& trace);
SurfaceTrace read_trace_csv(const std::filesystem::path& path);

}  // namespace wave_nonuniq
