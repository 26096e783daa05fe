#include "trapcert/cli_io/report.hpp"

#include <sstream>

namespace trapcert::cli_io {

namespace {

const char* verdict(bool ok) { return ok ? "PASS" : "FAIL"; }

}  // namespace

bool RunReport::any_stage() const {
  return growth || geometry || disjointness || connectivity || certification || sweep || selftest;
}

bool RunReport::all_pass() const {
  if (growth && !growth->pass) return false;
  if (disjointness && !disjointness->pass) return false;
  if (connectivity && !connectivity->pass) return false;
  if (certification && !certification->pass) return false;
  if (sweep && sweep->violations() != 0) return false;
  if (selftest && selftest->failures != 0) return false;
  return true;
}

CertSummary summarize(const std::vector<CertRecord>& records) {
  CertSummary s;
  s.records = static_cast<Index>(records.size());
  if (records.empty()) return s;
  s.c_lb_first = records.front().c_lb;
  s.min_margin = records.front().margin;
  s.min_margin_j = records.front().j;
  for (const CertRecord& r : records) {
    if (r.margin < s.min_margin) {
      s.min_margin = r.margin;
      s.min_margin_j = r.j;
    }
  }
  s.pass = s.min_margin > 0.0;
  return s;
}

std::string render_report(const RunReport& r) {
  std::ostringstream os;
  os.precision(10);
  os << "trapcert run report\n===================\n\n";
  if (!r.any_stage()) {
    os << "no stages executed\n";
    return os.str();
  }
  if (r.config_echo) os << "Schedule\n--------\n" << *r.config_echo << "\n\n";

  if (r.growth) {
    os << "Growth floor (c = " << r.growth->c << ", j <= " << r.growth->checked << "): " << verdict(r.growth->pass);
    if (r.growth->first_failure) os << ", first failure at j = " << *r.growth->first_failure;
    os << "\n\n";
  }

  if (r.geometry) {
    const GeometrySummary& g = *r.geometry;
    os << "Geometry";
    if (r.layout) os << " (" << layout_name(*r.layout) << ")";
    os << "\n  boxes              " << g.box_count << "\n  horizontal extent  " << g.horizontal_extent
       << "\n  height interval    [" << g.height.lo << ", " << g.height.hi << "]"
       << "\n  volume interval    [" << g.volume.lo << ", " << g.volume.hi << "]"
       << "\n  R_Gamma upper      " << g.r_gamma_upper << (g.finite_obstacle ? "\n  (finite obstacle from explicit tables)" : "")
       << "\n\n";
  }

  if (r.disjointness) {
    const DisjointnessReport& d = *r.disjointness;
    os << "Disjointness: " << verdict(d.pass) << "\n  closures pairwise disjoint  " << verdict(d.closures_disjoint)
       << "\n  in-layer gap bounds         " << d.in_layer.size() << " layers checked"
       << "\n  adjacent-layer gap bounds   " << d.cross_layer.size() << " pairs checked"
       << "\n  non-adjacent layers         " << verdict(d.far_layers_ok) << "\n";
    for (const std::string& f : d.failures) os << "  ! " << f << "\n";
    os << "\n";
  }

  if (r.connectivity) {
    os << "Connectivity: " << verdict(r.connectivity->pass) << "\n";
    int i = 1;
    for (const ConnectivityFact& f : r.connectivity->facts) {
      os << "  fact " << i++ << " " << f.name << ": " << verdict(f.ok);
      if (!f.detail.empty()) os << " (" << f.detail << ")";
      os << "\n";
    }
    os << "\n";
  }

  if (r.certification) {
    const CertSummary& c = *r.certification;
    os << "Certification: " << verdict(c.pass) << "\n  records       " << c.records;
    if (c.records > 0)
      os << "\n  c_lb (j = 1)  " << c.c_lb_first << "\n  min margin    " << c.min_margin << " at j = " << c.min_margin_j;
    if (!c.failure.empty()) os << "\n  ! " << c.failure;
    os << "\n  bounds hold for every R > R_Gamma\n\n";
  }

  if (r.sweep) {
    const SweepSummary& s = *r.sweep;
    os << "DtN sweep: " << verdict(s.violations() == 0) << "\n  records             " << s.records
       << "\n  violations          " << s.violations() << "  (B " << s.b_violations << ", A " << s.a_violations
       << ", Re " << s.re_violations << ", Im " << s.im_violations << ", failed " << s.evaluation_failures << ")"
       << "\n  max B/scale         " << s.b_max_rel << "\n  max A/scale         " << s.a_max_rel
       << "\n  max Re/scale        " << s.re_max_rel << "\n  max Im residual     " << s.im_max_residual
       << "\n  probes outside hypotheses: B>tol " << s.b_probe_positive << ", A>tol (nu<1/2) " << s.a_probe_positive
       << "\n\n";
  }

  if (r.selftest) {
    const SelftestSummary& s = *r.selftest;
    os << "Special-function self test: " << verdict(s.failures == 0) << "\n  points              " << s.points
       << "\n  max Wronskian       " << s.max_wronskian << "\n  max half-int error  " << s.max_halfint << "\n\n";
  }

  os << "Overall: " << verdict(r.all_pass()) << "\n";
  return os.str();
}

}  // namespace trapcert::cli_io
