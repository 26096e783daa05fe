#pragma once

#include <optional>
#include <string>

#include "trapcert/certify.hpp"
#include "trapcert/dtnverify.hpp"
#include "trapcert/geometry.hpp"
#include "trapcert/sequences.hpp"

namespace trapcert::cli_io {

struct GrowthSummary {
  double c = 0.0;
  Index checked = 0;
  bool pass = true;
  std::optional<Index> first_failure;
};

struct CertSummary {
  Index records = 0;
  double min_margin = 0.0;
  Index min_margin_j = 0;
  double c_lb_first = 0.0;
  bool pass = true;
  std::string failure;
};

struct SelftestSummary {
  Index points = 0;
  double max_wronskian = 0.0;
  double max_halfint = 0.0;
  Index failures = 0;
};

/// Everything a run produced; stages that did not run stay empty.
struct RunReport {
  std::optional<std::string> config_echo;
  std::optional<GrowthSummary> growth;
  std::optional<Layout> layout;
  std::optional<GeometrySummary> geometry;
  std::optional<DisjointnessReport> disjointness;
  std::optional<ConnectivityReport> connectivity;
  std::optional<CertSummary> certification;
  std::optional<SweepSummary> sweep;
  std::optional<SelftestSummary> selftest;

  bool any_stage() const;
  bool all_pass() const;
};

CertSummary summarize(const std::vector<CertRecord>& records);

std::string render_report(const RunReport& r);

}  // namespace trapcert::cli_io
