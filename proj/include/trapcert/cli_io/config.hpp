#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "trapcert/dtnverify.hpp"
#include "trapcert/geometry.hpp"
#include "trapcert/sequences.hpp"

// Run configuration: one JSON document, unknown keys rejected.
//
// {
//   "dimension": 2,
//   "schedule": {
//     "k": {"family": "paper-default", "c": 2} | {"family": "table", "values": [...]},
//     "a": {"family": "power", "A": 1e-4, "p": 0.25} | {"family": "table", ...},
//     "d": {"family": "shifted-power", "D": 2, "s": 6, "q": 1.2} | {"family": "table", ...}
//   },
//   "layout": "layered" | "stacked",
//   "layers": 30,            (layered)   or   "boxCount": 12   (stacked)
//   "precisionDigits": 15,
//   "growthFloorC": 2,
//   "outputs": {"json": ..., "csv": ..., "svg": ..., "report": ..., "dtn": ..., "selftest": ...},
//   "sweep": {"dimensions": [2,3,4,5], "mMax": 100, "rhoMin": 0.05, "rhoMax": 200,
//             "rhoPoints": 2000, "alphas": [], "emit": "all" | "violations" | "summary"}
// }
//
// Output paths are relative to the --out directory.

namespace trapcert::cli_io {

enum class SweepEmit { All, Violations, Summary };

struct OutputPaths {
  std::optional<std::string> json;
  std::optional<std::string> csv;
  std::optional<std::string> svg;
  std::optional<std::string> report;
  std::optional<std::string> dtn;
  std::optional<std::string> selftest;
};

struct SweepConfig {
  SweepSpec spec;
  SweepEmit emit = SweepEmit::Violations;
};

struct RunConfig {
  int dimension = 2;
  KFamily k = PaperDefaultK{};
  AFamily a = PowerA{};
  DFamily d = ShiftedPowerD{};
  Layout layout = Layout::Layered;
  Index truncation = 30;
  int precision_digits = 15;
  double growth_floor_c = 2.0;
  OutputPaths outputs;
  std::optional<SweepConfig> sweep;

  Schedule schedule() const;
};

/// Throws ConfigError.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// The figure schedule, 30 layers, no outputs.
RunConfig default_config();

/// Canonical JSON echo of the configuration (for reports).
std::string echo_config(const RunConfig& cfg);

const char* sweep_emit_name(SweepEmit e);

}  // namespace trapcert::cli_io
