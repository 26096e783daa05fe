#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "trapcert/certify.hpp"
#include "trapcert/dtnverify.hpp"
#include "trapcert/geometry.hpp"

namespace trapcert::cli_io {

/// Writes to "<path>.tmp" and renames on commit(); an uncommitted file is
/// removed on destruction. Throws std::runtime_error on I/O failure.
class AtomicFile {
public:
  explicit AtomicFile(std::filesystem::path path);
  ~AtomicFile();
  AtomicFile(const AtomicFile&) = delete;
  AtomicFile& operator=(const AtomicFile&) = delete;

  std::ostream& stream() { return out_; }
  void commit();

private:
  std::filesystem::path path_;
  std::filesystem::path tmp_;
  std::ofstream out_;
  bool done_ = false;
};

void write_atomic(const std::filesystem::path& path, const std::string& content);

/// Shortest round-trip decimal of a binary64 value.
std::string shortest(double x);
/// 17 significant digits, lowercase exponent.
std::string sci17(double x);

std::string geometry_json(const Geometry& g);
std::string certification_csv(const std::vector<CertRecord>& records);
/// Throws DomainError for n != 2.
std::string geometry_svg(const Geometry& g);
std::string layer_plan_csv(const std::vector<LayerPlan>& plans);
std::string derived_csv(const Schedule& sched, Index count);

std::string sweep_csv_header();
std::string sweep_csv_row(const ModeCheckRecord& r);
std::string sweep_csv_footer(const SweepSummary& s);

}  // namespace trapcert::cli_io
