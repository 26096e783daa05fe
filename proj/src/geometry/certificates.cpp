#include <algorithm>
#include <cfloat>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>
#include <sstream>

#include "trapcert/errors.hpp"
#include "trapcert/geometry.hpp"

namespace trapcert {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Upper end of [t, t + ell] rounded outward: fl(t + ell) is within half an ulp
// of the exact sum, one step up covers it.
double hi_up(const BoxSpec& b, int axis) { return std::nextafter(b.hi(axis), kInf); }

bool closures_disjoint(const BoxSpec& a, const BoxSpec& b, int n) {
  for (int ax = 0; ax < n; ++ax)
    if (hi_up(a, ax) < b.lo(ax) || hi_up(b, ax) < a.lo(ax)) return true;
  return false;
}

double distance(const BoxSpec& a, const BoxSpec& b, int n) {
  double s = 0.0;
  for (int ax = 0; ax < n; ++ax) {
    const double sep = std::max({0.0, b.lo(ax) - a.hi(ax), a.lo(ax) - b.hi(ax)});
    s += sep * sep;
  }
  return std::sqrt(s);
}

double magnitude(const BoxSpec& b, int n) {
  double m = 1.0;
  for (int ax = 0; ax < n; ++ax) m = std::max({m, std::abs(b.lo(ax)), std::abs(b.hi(ax))});
  return m;
}

double slack(double scale) { return 16.0 * DBL_EPSILON * scale; }

struct Slab {
  double bottom = kInf;
  double top = -kInf;      // outward rounded
  double scale = 1.0;
  std::vector<std::size_t> members;
};

std::map<Index, Slab> slabs_by_layer(const std::vector<BoxSpec>& boxes, int n) {
  std::map<Index, Slab> slabs;
  for (std::size_t k = 0; k < boxes.size(); ++k) {
    const BoxSpec& b = boxes[k];
    Slab& s = slabs[b.layer];
    s.bottom = std::min(s.bottom, b.lo(n - 1));
    s.top = std::max(s.top, hi_up(b, n - 1));
    s.scale = std::max(s.scale, magnitude(b, n));
    s.members.push_back(k);
  }
  return slabs;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

DisjointnessReport disjointness_certificate(const std::vector<BoxSpec>& boxes, const Schedule& sched) {
  DisjointnessReport r;
  if (boxes.empty()) return r;
  const int n = static_cast<int>(boxes.front().translation.size());

  // Sweep along the last axis; boxes whose vertical closures are strictly
  // separated are disjoint and never compared.
  std::vector<std::size_t> order(boxes.size());
  for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return boxes[a].lo(n - 1) < boxes[b].lo(n - 1); });

  std::map<Index, std::pair<double, double>> in_layer;  // layer -> (min gap, scale)
  std::vector<std::size_t> active;
  for (std::size_t idx : order) {
    const BoxSpec& b = boxes[idx];
    const double bottom = b.lo(n - 1);
    std::erase_if(active, [&](std::size_t a) { return hi_up(boxes[a], n - 1) < bottom; });
    for (std::size_t a : active) {
      const BoxSpec& o = boxes[a];
      if (!closures_disjoint(o, b, n)) {
        r.closures_disjoint = false;
        if (!r.first_overlap) r.first_overlap = std::make_pair(std::min(o.j, b.j), std::max(o.j, b.j));
        continue;
      }
      if (o.layer == b.layer) {
        auto [it, fresh] = in_layer.try_emplace(b.layer, kInf, 1.0);
        it->second.first = std::min(it->second.first, distance(o, b, n));
        it->second.second = std::max({it->second.second, magnitude(o, n), magnitude(b, n)});
      }
    }
    active.push_back(idx);
  }
  if (!r.closures_disjoint) {
    r.pass = false;
    r.failures.push_back("closures of boxes " + std::to_string(r.first_overlap->first) + " and " +
                         std::to_string(r.first_overlap->second) + " intersect");
  }

  for (const auto& [layer, gap_scale] : in_layer) {
    GapRecord g;
    g.layer_a = g.layer_b = layer;
    g.min_gap = gap_scale.first;
    g.required = sched.spacing(layer) / std::log(static_cast<double>(layer) + std::numbers::e);
    g.ok = g.min_gap >= g.required - slack(gap_scale.second);
    if (!g.ok) {
      r.pass = false;
      r.failures.push_back("layer " + std::to_string(layer) + " in-layer gap " + fmt(g.min_gap) + " < " +
                           fmt(g.required));
    }
    r.in_layer.push_back(g);
  }

  const auto slabs = slabs_by_layer(boxes, n);
  double prefix_bottom = kInf;  // min bottom over layers <= i' - 2
  Index prev_layer = 0;
  const Slab* prev = nullptr;
  const Slab* prev2 = nullptr;
  for (const auto& [layer, slab] : slabs) {
    if (prev && layer == prev_layer + 1) {
      GapRecord g;
      g.layer_a = prev_layer;
      g.layer_b = layer;
      g.min_gap = kInf;
      for (std::size_t a : prev->members)
        for (std::size_t b : slab.members) g.min_gap = std::min(g.min_gap, distance(boxes[a], boxes[b], n));
      g.required = sched.spacing(prev_layer);
      g.ok = g.min_gap >= g.required - slack(std::max(prev->scale, slab.scale));
      if (!g.ok) {
        r.pass = false;
        r.failures.push_back("layers " + std::to_string(prev_layer) + "/" + std::to_string(layer) + " gap " +
                             fmt(g.min_gap) + " < " + fmt(g.required));
      }
      r.cross_layer.push_back(g);
    }
    if (prev2) prefix_bottom = std::min(prefix_bottom, prev2->bottom);
    if (prefix_bottom < kInf) {
      const double required = sched.spacing(layer - 1);
      if (prefix_bottom - slab.top < required - slack(slab.scale)) {
        r.far_layers_ok = false;
        r.pass = false;
        r.failures.push_back("layer " + std::to_string(layer) + " is closer than d_" + std::to_string(layer - 1) +
                             " to a non-adjacent layer above");
      }
    }
    prev2 = prev;
    prev = &slab;
    prev_layer = layer;
  }
  return r;
}

ConnectivityReport connectivity_certificate(const std::vector<BoxSpec>& boxes, const GeometrySummary& summary) {
  ConnectivityReport r;
  if (boxes.empty()) throw DomainError("connectivity certificate needs at least one box");
  const int n = static_cast<int>(boxes.front().translation.size());

  ConnectivityFact f1{"positive openings", true, ""};
  for (const BoxSpec& b : boxes) {
    if (!(b.gap > 0.0 && b.gap < 1.0) || !(b.side > 0.0)) {
      f1.ok = false;
      f1.detail = "box " + std::to_string(b.j) + " has eps = " + fmt(b.gap);
      break;
    }
  }

  const auto slabs = slabs_by_layer(boxes, n);
  ConnectivityFact f2{"layers ordered with positive gaps", true, ""};
  {
    const Slab* prev = nullptr;
    Index prev_layer = 0;
    for (const auto& [layer, slab] : slabs) {
      if (prev && !(slab.top < prev->bottom)) {
        f2.ok = false;
        f2.detail = "layer " + std::to_string(layer) + " reaches layer " + std::to_string(prev_layer);
        break;
      }
      prev = &slab;
      prev_layer = layer;
    }
  }

  ConnectivityFact f3{"bounded horizontal extent", true, ""};
  {
    double reach = 0.0;
    double radius = 0.0;
    for (const BoxSpec& b : boxes) {
      double r2 = 0.0;
      for (int ax = 0; ax < n; ++ax) {
        const double far = std::max(std::abs(b.lo(ax)), std::abs(b.hi(ax)));
        r2 += far * far;
        if (ax < n - 1) reach = std::max(reach, b.hi(ax));
      }
      radius = std::max(radius, std::sqrt(r2));
    }
    if (!std::isfinite(summary.horizontal_extent) || !std::isfinite(summary.r_gamma_upper)) {
      f3.ok = false;
      f3.detail = "extent not finite";
    } else if (reach > summary.horizontal_extent * (1.0 + 1e-12)) {
      f3.ok = false;
      f3.detail = "a box reaches " + fmt(reach) + " beyond the extent " + fmt(summary.horizontal_extent);
    } else if (radius > summary.r_gamma_upper * (1.0 + 1e-12)) {
      f3.ok = false;
      f3.detail = "a box corner lies outside R_Gamma upper " + fmt(summary.r_gamma_upper);
    }
  }

  ConnectivityFact f4{"finitely many boxes above each layer", true, ""};
  {
    std::vector<double> tops;
    tops.reserve(boxes.size());
    for (const BoxSpec& b : boxes) tops.push_back(b.hi(n - 1));
    std::sort(tops.begin(), tops.end());
    std::size_t above = 0;
    for (const auto& [layer, slab] : slabs) {
      above += slab.members.size();
      const auto reaching =
          static_cast<std::size_t>(tops.end() - std::lower_bound(tops.begin(), tops.end(), slab.bottom));
      if (reaching != above) {
        f4.ok = false;
        f4.detail = "boxes below layer " + std::to_string(layer) + " reach above its floor";
        break;
      }
    }
    const double lowest = slabs.rbegin()->second.bottom;
    if (f4.ok && !std::isfinite(summary.height.lo)) {
      f4.ok = false;
      f4.detail = "height interval unbounded";
    } else if (f4.ok && (summary.height.hi > lowest || (!summary.finite_obstacle && !(summary.height.hi < lowest)))) {
      f4.ok = false;
      f4.detail = "uncomputed layers are not below the computed ones";
    }
  }

  r.facts = {f1, f2, f3, f4};
  r.pass = std::all_of(r.facts.begin(), r.facts.end(), [](const ConnectivityFact& f) { return f.ok; });
  return r;
}

}  // namespace trapcert
