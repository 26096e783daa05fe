#include "trapcert/cli_io/emit.hpp"

#include <algorithm>
#include <cstdio>
#include <stdexcept>

#include "json.hpp"
#include "trapcert/errors.hpp"

namespace trapcert::cli_io {

namespace {

using ojson = nlohmann::ordered_json;

std::string fixed6(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", x);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

}  // namespace

AtomicFile::AtomicFile(std::filesystem::path path) : path_(std::move(path)) {
  if (path_.has_parent_path()) std::filesystem::create_directories(path_.parent_path());
  tmp_ = path_;
  tmp_ += ".tmp";
  out_.open(tmp_, std::ios::binary | std::ios::trunc);
  if (!out_) throw std::runtime_error("cannot open " + tmp_.string() + " for writing");
}

AtomicFile::~AtomicFile() {
  if (!done_) {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(tmp_, ec);
  }
}

void AtomicFile::commit() {
  out_.flush();
  if (!out_) throw std::runtime_error("write to " + tmp_.string() + " failed");
  out_.close();
  std::filesystem::rename(tmp_, path_);
  done_ = true;
}

void write_atomic(const std::filesystem::path& path, const std::string& content) {
  AtomicFile f(path);
  f.stream() << content;
  f.commit();
}

std::string shortest(double x) { return ojson(x).dump(); }

std::string sci17(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.16e", x);
  return buf;
}

std::string geometry_json(const Geometry& g) {
  ojson doc;
  doc["dimension"] = g.dimension;
  doc["layout"] = layout_name(g.layout);
  const GeometrySummary& s = g.summary;
  doc["summary"] = {{"boxCount", s.box_count},
                    {"horizontalExtent", s.horizontal_extent},
                    {"heightInterval", {s.height.lo, s.height.hi}},
                    {"volumeInterval", {s.volume.lo, s.volume.hi}},
                    {"rGammaUpper", s.r_gamma_upper}};
  ojson boxes = ojson::array();
  for (const BoxSpec& b : g.boxes) {
    boxes.push_back({{"j", b.j},
                     {"layer", b.layer},
                     {"side", b.side},
                     {"translation", b.translation},
                     {"gap", b.gap},
                     {"wavenumber", b.wavenumber},
                     {"targetA", b.target}});
  }
  doc["boxes"] = std::move(boxes);
  return doc.dump(1) + "\n";
}

std::string certification_csv(const std::vector<CertRecord>& records) {
  std::string out = "j,k,a,eps,infsup_ub,cprime_lb,c_lb,margin\n";
  for (const CertRecord& r : records) {
    out += std::to_string(r.j);
    for (double v : {r.k, r.a, r.eps, r.infsup_ub, r.c_prime_lb, r.c_lb, r.margin}) {
      out += ',';
      out += sci17(v);
    }
    out += '\n';
  }
  return out;
}

std::string geometry_svg(const Geometry& g) {
  if (g.dimension != 2) throw DomainError("SVG output needs dimension 2");
  const GeometrySummary& s = g.summary;
  double top = 0.0;
  for (const BoxSpec& b : g.boxes) top = std::max(top, b.hi(1));
  const double x0 = 0.0, x1 = s.horizontal_extent;
  const double y0 = s.height.hi, y1 = top;
  const double mx = 0.05 * (x1 - x0), my = 0.05 * (y1 - y0);
  const double vx = x0 - mx, vw = (x1 - x0) + 2 * mx;
  const double vy = -(y1 + my), vh = (y1 - y0) + 2 * my;
  const double stroke = 0.002 * std::max(vw, vh);

  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + fixed6(vx) + " " + fixed6(vy) + " " + fixed6(vw) +
         " " + fixed6(vh) + "\">\n";
  out += "<g fill=\"#d0d0d0\" stroke=\"#000000\" stroke-width=\"" + fixed6(stroke) +
         "\" stroke-linejoin=\"miter\" stroke-linecap=\"butt\">\n";
  for (const BoxSpec& b : g.boxes) {
    const double x = b.lo(0), y = b.lo(1), l = b.side;
    // bottom edge from the end of the opening, counter-clockwise back to the corner
    const double pts[5][2] = {{x + l * b.gap, y}, {x + l, y}, {x + l, y + l}, {x, y + l}, {x, y}};
    out += "<path d=\"M";
    for (int i = 0; i < 5; ++i) {
      if (i) out += " L";
      out += fixed6(pts[i][0]) + "," + fixed6(-pts[i][1]);
    }
    out += "\"/>\n";
  }
  out += "</g>\n</svg>\n";
  return out;
}

std::string layer_plan_csv(const std::vector<LayerPlan>& plans) {
  std::string out = "i,count,start,height,max_side,pitch,spacing,width\n";
  for (const LayerPlan& p : plans) {
    out += std::to_string(p.i) + "," + std::to_string(p.count) + "," + std::to_string(p.start);
    for (double v : {p.height, p.max_side, p.pitch, p.spacing, p.width()}) out += "," + sci17(v);
    out += '\n';
  }
  return out;
}

std::string derived_csv(const Schedule& sched, Index count) {
  std::string out = "j,k,a,ell,eps\n";
  for (Index j = 1; j <= count; ++j) {
    const DerivedParams d = sched.derived(j);
    out += std::to_string(j);
    for (double v : {d.k, d.a, d.ell, d.eps}) out += "," + sci17(v);
    out += '\n';
  }
  return out;
}

std::string sweep_csv_header() {
  return "n,m,nu,rho,alpha,a_nu,a_rel,b_m,b_rel,re_sign,re_rel,im_residual,a_asserted,b_asserted,violation\n";
}

std::string sweep_csv_row(const ModeCheckRecord& r) {
  std::string out = std::to_string(r.n) + "," + std::to_string(r.m);
  for (double v : {r.nu, r.rho, r.alpha, r.a_nu, r.a_rel, r.b_m, r.b_rel, r.re_sign, r.re_rel, r.im_residual})
    out += "," + sci17(v);
  out += r.a_asserted ? ",1" : ",0";
  out += r.b_asserted ? ",1" : ",0";
  out += r.violation() ? ",1\n" : ",0\n";
  return out;
}

std::string sweep_csv_footer(const SweepSummary& s) {
  return "summary,records=" + std::to_string(s.records) + ",violations=" + std::to_string(s.violations()) +
         ",b_violations=" + std::to_string(s.b_violations) + ",a_violations=" + std::to_string(s.a_violations) +
         ",re_violations=" + std::to_string(s.re_violations) + ",im_violations=" + std::to_string(s.im_violations) +
         ",evaluation_failures=" + std::to_string(s.evaluation_failures) + ",b_probe_positive=" +
         std::to_string(s.b_probe_positive) + ",a_probe_positive=" + std::to_string(s.a_probe_positive) +
         ",b_max_rel=" + sci17(s.b_max_rel) + ",a_max_rel=" + sci17(s.a_max_rel) + ",re_max_rel=" +
         sci17(s.re_max_rel) + ",im_max_residual=" + sci17(s.im_max_residual) + "\n";
}

}  // namespace trapcert::cli_io
