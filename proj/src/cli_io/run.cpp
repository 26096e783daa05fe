#include "trapcert/cli_io/run.hpp"

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "trapcert/certify.hpp"
#include "trapcert/cli_io/config.hpp"
#include "trapcert/cli_io/emit.hpp"
#include "trapcert/cli_io/report.hpp"
#include "trapcert/errors.hpp"
#include "trapcert/specfun/bessel.hpp"
#include "trapcert/specfun/halfint.hpp"

namespace trapcert::cli_io {

namespace fs = std::filesystem;

namespace {

struct Options {
  std::string config;
  std::optional<long long> layers;
  std::optional<int> dimension;
  std::optional<int> precision;
  std::string out_dir = ".";
};

struct Context {
  RunConfig cfg;
  fs::path out_dir;
  std::ostream& out;
  RunReport report;

  fs::path target(const std::optional<std::string>& configured, const char* fallback) const {
    return out_dir / (configured ? *configured : fallback);
  }
};

// ------------------------------------------------------------------ stages

void stage_growth(Context& c, const Schedule& sched, Index boxes) {
  if (c.cfg.layout != Layout::Layered) return;
  const GrowthFloorReport g = growth_floor_check(sched, c.cfg.growth_floor_c, boxes);
  c.report.growth = GrowthSummary{c.cfg.growth_floor_c, static_cast<Index>(g.entries.size()), g.pass, g.first_failure};
}

Geometry stage_geometry(Context& c, const Schedule& sched) {
  Geometry g = c.cfg.layout == Layout::Layered ? build_layered(sched, c.cfg.truncation)
                                              : build_stacked(sched, c.cfg.truncation);
  c.report.layout = g.layout;
  c.report.geometry = g.summary;
  stage_growth(c, sched, g.summary.box_count);
  c.report.disjointness = disjointness_certificate(g.boxes, sched);
  c.report.connectivity = connectivity_certificate(g.boxes, g.summary);
  return g;
}

bool geometry_ok(const Context& c) {
  return c.report.disjointness->pass && c.report.connectivity->pass && (!c.report.growth || c.report.growth->pass);
}

std::optional<std::vector<CertRecord>> stage_certify(Context& c, const Geometry& g, const Schedule& sched) {
  try {
    auto records = certify_geometry(g.boxes, sched);
    c.report.certification = summarize(records);
    return records;
  } catch (const CertificateFailure& e) {
    CertSummary s;
    s.pass = false;
    s.failure = e.what();
    c.report.certification = s;
    return std::nullopt;
  }
}

SweepSummary stage_sweep(Context& c) {
  const SweepConfig sc = c.cfg.sweep.value_or(SweepConfig{});
  const fs::path path = c.target(c.cfg.outputs.dtn, "dtn_sweep.csv");
  AtomicFile file(path);
  file.stream() << sweep_csv_header();
  const SweepSummary s = verify_sweep(sc.spec, [&](const ModeCheckRecord& r) {
    if (sc.emit == SweepEmit::All || (sc.emit == SweepEmit::Violations && r.violation()))
      file.stream() << sweep_csv_row(r);
  });
  file.stream() << sweep_csv_footer(s);
  file.commit();
  c.report.sweep = s;
  c.out << "wrote " << path.string() << " (" << s.records << " records, " << s.violations() << " violations, emit "
        << sweep_emit_name(sc.emit) << ")\n";
  return s;
}

SelftestSummary stage_selftest(Context& c, bool have_config) {
  const std::vector<double> ts = log_grid(1e-2, 200.0, 400);
  std::ostringstream csv;
  csv << "nu,t,wronskian_residual,halfint_relerr\n";
  SelftestSummary s;
  for (int twice = 0; twice <= 200; ++twice) {
    const double nu = 0.5 * twice;
    for (double t : ts) {
      ++s.points;
      const double w = specfun::wronskian_residual(nu, t);
      s.max_wronskian = std::max(s.max_wronskian, w);
      bool bad = !(w <= 1e-10);
      csv << sci17(nu) << ',' << sci17(t) << ',' << sci17(w) << ',';
      if (specfun::is_half_integer(nu)) {
        const double h = specfun::halfint_relative_error(nu, t);
        s.max_halfint = std::max(s.max_halfint, h);
        bad = bad || !(h <= 1e-10);
        csv << sci17(h);
      }
      csv << '\n';
      if (bad) ++s.failures;
    }
  }
  if (have_config && c.cfg.outputs.selftest) {
    const fs::path path = c.target(c.cfg.outputs.selftest, "");
    write_atomic(path, csv.str());
    c.out << "wrote " << path.string() << "\n";
  } else {
    c.out << csv.str();
  }
  c.report.selftest = s;
  return s;
}

void maybe_write_report(Context& c, bool force) {
  if (!force && !c.cfg.outputs.report) return;
  const fs::path path = c.target(c.cfg.outputs.report, "report.txt");
  write_atomic(path, render_report(c.report));
  c.out << "wrote " << path.string() << "\n";
}

int verdict(const Context& c) { return c.report.all_pass() ? kOk : kCertificateFailure; }

// ------------------------------------------------------------- subcommands

int cmd_plan(Context& c) {
  const Schedule sched = c.cfg.schedule();
  if (c.cfg.layout == Layout::Layered) {
    const auto plans = layer_plans(sched, c.cfg.truncation);
    const Index boxes = plans.back().start + plans.back().count - 1;
    stage_growth(c, sched, boxes);
    c.out << layer_plan_csv(plans);
  } else {
    c.out << derived_csv(sched, c.cfg.truncation);
  }
  maybe_write_report(c, false);
  return verdict(c);
}

int cmd_build(Context& c) {
  const Schedule sched = c.cfg.schedule();
  const Geometry g = stage_geometry(c, sched);
  const fs::path path = c.target(c.cfg.outputs.json, "geometry.json");
  write_atomic(path, geometry_json(g));
  c.out << "wrote " << path.string() << " (" << g.summary.box_count << " boxes)\n";
  maybe_write_report(c, false);
  return verdict(c);
}

int cmd_certify(Context& c) {
  const Schedule sched = c.cfg.schedule();
  const Geometry g = stage_geometry(c, sched);
  if (!geometry_ok(c)) {
    maybe_write_report(c, false);
    return kCertificateFailure;
  }
  const auto records = stage_certify(c, g, sched);
  if (records) {
    const fs::path path = c.target(c.cfg.outputs.csv, "certificates.csv");
    write_atomic(path, certification_csv(*records));
    c.out << "wrote " << path.string() << " (" << records->size() << " records, min margin "
          << c.report.certification->min_margin << ")\n";
  } else {
    c.out << "certification failed: " << c.report.certification->failure << "\n";
  }
  maybe_write_report(c, false);
  return verdict(c);
}

int cmd_verify_dtn(Context& c) {
  stage_sweep(c);
  maybe_write_report(c, false);
  return verdict(c);
}

int cmd_selftest(Context& c, bool have_config) {
  stage_selftest(c, have_config);
  if (have_config) maybe_write_report(c, false);
  return verdict(c);
}

int cmd_plot(Context& c) {
  if (c.cfg.dimension != 2) throw DomainError("plot needs dimension 2");
  const Schedule sched = c.cfg.schedule();
  const Geometry g = stage_geometry(c, sched);
  const fs::path path = c.target(c.cfg.outputs.svg, "figure.svg");
  write_atomic(path, geometry_svg(g));
  c.out << "wrote " << path.string() << " (" << g.boxes.size() << " box outlines)\n";
  maybe_write_report(c, false);
  return verdict(c);
}

int cmd_report(Context& c) {
  const Schedule sched = c.cfg.schedule();
  c.report.config_echo = echo_config(c.cfg);
  const Geometry g = stage_geometry(c, sched);
  if (geometry_ok(c)) stage_certify(c, g, sched);
  if (c.cfg.sweep) stage_sweep(c);
  maybe_write_report(c, true);
  c.out << render_report(c.report);
  return verdict(c);
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Certificates for layered-cube trapping obstacles", "trapcert"};
  app.fallthrough();
  app.require_subcommand(1, 1);
  Options o;
  app.add_option("--config", o.config, "JSON run configuration");
  app.add_option("--layers", o.layers, "override layers (layered) or boxCount (stacked)");
  app.add_option("--dimension", o.dimension, "override the dimension n");
  app.add_option("--out", o.out_dir, "output directory (default .)");
  app.add_option("--precision", o.precision, "override precisionDigits");

  const char* names[] = {"plan", "build", "certify", "verify-dtn", "specfun-selftest", "plot", "report"};
  const char* help[] = {"print the layer plan and growth-floor check",
                        "build the geometry, certify disjointness and connectivity, write JSON",
                        "build and write per-box resolvent certificates (CSV)",
                        "sweep the DtN mode inequalities (CSV)",
                        "Wronskian and closed-form residual table (CSV)",
                        "write the n = 2 geometry as SVG",
                        "run every stage and write a text report"};
  for (int i = 0; i < 7; ++i) app.add_subcommand(names[i], help[i]);
  const std::string usage = app.help();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << usage;
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << usage;
    return kUsageOrConfig;
  }

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    Context c{default_config(), fs::path(o.out_dir), out, {}};
    const bool have_config = !o.config.empty();
    if (have_config) {
      c.cfg = load_config(o.config);
    } else if (cmd != "specfun-selftest") {
      err << "error: --config is required for " << cmd << "\n\n" << usage;
      return kUsageOrConfig;
    }
    if (o.layers) {
      if (*o.layers < 1) throw ConfigError("--layers must be >= 1");
      c.cfg.truncation = *o.layers;
    }
    if (o.dimension) {
      if (*o.dimension < 2 || *o.dimension > 64) throw ConfigError("--dimension must lie in [2, 64]");
      c.cfg.dimension = *o.dimension;
    }
    if (o.precision) {
      if (*o.precision < 15 || *o.precision > Schedule::kMaxPrecisionDigits)
        throw ConfigError("--precision must lie in [15, " + std::to_string(Schedule::kMaxPrecisionDigits) + "]");
      c.cfg.precision_digits = *o.precision;
    }
    c.cfg.schedule();

    if (cmd == "plan") return cmd_plan(c);
    if (cmd == "build") return cmd_build(c);
    if (cmd == "certify") return cmd_certify(c);
    if (cmd == "verify-dtn") return cmd_verify_dtn(c);
    if (cmd == "specfun-selftest") return cmd_selftest(c, have_config);
    if (cmd == "plot") return cmd_plot(c);
    return cmd_report(c);
  } catch (const CertificateFailure& e) {
    err << "certificate failure: " << e.what() << "\n";
    return kCertificateFailure;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << "\n";
    return kUsageOrConfig;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << "\n";
    return kUsageOrConfig;
  } catch (const RangeError& e) {
    err << "range error: " << e.what() << "\n";
    return kUsageOrConfig;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsageOrConfig;
  }
}

}  // namespace trapcert::cli_io
