#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>

#include "trapcert/errors.hpp"
#include "trapcert/geometry.hpp"

namespace trapcert {

namespace {

constexpr double kEps = DBL_EPSILON;

// Below this layer the analytic bounds on ell_{B_i} are not valid and exact
// sums are used instead.
constexpr Index kAnalyticFrom = 9;

// (beta log beta)^(1/n) >= A_n (i/2) log(i/2) for i >= 9, beta the lower bound on B_i.
double a_const(int n) { return std::pow(0.8328 * n, 1.0 / n); }

double widen_down(double x, double rel) { return x - rel * std::abs(x) - DBL_MIN; }
double widen_up(double x, double rel) { return x + rel * std::abs(x) + DBL_MIN; }

bool paper_default_k(const Schedule& s) { return std::holds_alternative<PaperDefaultK>(s.k_family()); }

const ShiftedPowerD& require_power_d(const Schedule& s) {
  if (auto* p = std::get_if<ShiftedPowerD>(&s.d_family())) return *p;
  throw DomainError("an explicit d table has no tail bound; combine it with an explicit k table");
}

// Number of complete layers an explicit k table defines.
Index full_layers(const Schedule& s) {
  const Index size = *s.k_count();
  Index start = 1;
  Index i = 1;
  while (start + layer_box_count(i, s.dimension()) - 1 <= size) {
    start += layer_box_count(i, s.dimension());
    ++i;
  }
  return i - 1;
}

}  // namespace

const char* layout_name(Layout l) { return l == Layout::Layered ? "layered" : "stacked"; }

Index layer_per_axis(Index i) {
  if (i < 1) throw DomainError("layer index must be >= 1");
  if (i == 1) return 1;
  return static_cast<Index>(std::floor(static_cast<double>(i) * std::log(static_cast<double>(i) + std::numbers::e)));
}

Index layer_box_count(Index i, int n) {
  const Index m = layer_per_axis(i);
  Index c = 1;
  for (int a = 0; a < n - 1; ++a) c *= m;
  return c;
}

std::vector<Index> grid_position(Index offset, Index per_axis, int n) {
  std::vector<Index> f(static_cast<std::size_t>(n - 1), 0);
  for (int a = n - 2; a >= 0; --a) {
    f[static_cast<std::size_t>(a)] = offset % per_axis;
    offset /= per_axis;
  }
  return f;
}

std::vector<LayerPlan> layer_plans(const Schedule& sched, Index L) {
  if (L < 1) throw DomainError("layer count must be >= 1");
  const int n = sched.dimension();
  std::vector<LayerPlan> plans;
  plans.reserve(static_cast<std::size_t>(L));
  Index start = 1;
  double height = 0.0;
  for (Index i = 1; i <= L; ++i) {
    LayerPlan p;
    p.i = i;
    p.per_axis = layer_per_axis(i);
    p.count = layer_box_count(i, n);
    p.start = start;
    p.max_side = sched.side(start);
    if (i > 1) height = height - p.max_side - plans.back().spacing;
    p.height = height;
    p.spacing = sched.spacing(i);
    p.pitch = p.max_side + p.spacing / std::log(static_cast<double>(i) + std::numbers::e);
    plans.push_back(p);
    start += p.count;
  }
  return plans;
}

LayerPlan layer_plan(const Schedule& sched, Index i) { return layer_plans(sched, i).back(); }

double max_side_tail_bound(const Schedule& sched, Index I) {
  if (!paper_default_k(sched)) throw DomainError("analytic side tail needs the paper-default k family");
  if (I < 1) throw DomainError("layer index must be >= 1");
  const int n = sched.dimension();
  const double c = std::get<PaperDefaultK>(sched.k_family()).c;
  double exact = 0.0;
  if (I < kAnalyticFrom) {
    const auto plans = layer_plans(sched, kAnalyticFrom - 1);
    for (Index i = I; i < kAnalyticFrom; ++i) exact += plans[static_cast<std::size_t>(i - 1)].max_side;
    I = kAnalyticFrom;
  }
  const double lead = 2.0 * std::numbers::pi * std::sqrt(static_cast<double>(n)) / (c * a_const(n));
  return exact + lead / std::log(std::log((static_cast<double>(I) - 1.0) / 2.0));
}

double width_tail_bound(const Schedule& sched, Index I) {
  if (!paper_default_k(sched)) throw DomainError("analytic width bound needs the paper-default k family");
  if (I < 1) throw DomainError("layer index must be >= 1");
  const auto& d = require_power_d(sched);
  const int n = sched.dimension();
  const double c = std::get<PaperDefaultK>(sched.k_family()).c;
  double best = 0.0;
  if (I < kAnalyticFrom) {
    const auto plans = layer_plans(sched, kAnalyticFrom - 1);
    for (Index i = I; i < kAnalyticFrom; ++i) best = std::max(best, plans[static_cast<std::size_t>(i - 1)].width());
    I = kAnalyticFrom;
  }
  const double x = static_cast<double>(I);
  const double half = x / 2.0;
  const double side_part = 2.0 * std::numbers::pi * std::sqrt(static_cast<double>(n)) * std::log(x + std::numbers::e) /
                           (c * a_const(n) * std::log(half) * std::pow(std::log(std::log(half)), 2));
  const double shift = d.s >= 0.0 ? 1.0 : x / (x + d.s);
  const double gap_part = shift * d.D * std::pow(x + d.s, 1.0 - d.q);
  return std::max(best, side_part + gap_part);
}

Geometry build_layered(const Schedule& sched, Index layers) {
  if (layers < 1) throw DomainError("layers must be >= 1");
  const int n = sched.dimension();
  const bool infinite = paper_default_k(sched);
  if (infinite) require_power_d(sched);

  Index lmax = layers;
  if (!infinite) {
    lmax = full_layers(sched);
    if (layers > lmax)
      throw DomainError("the k table holds " + std::to_string(lmax) + " complete layers, " + std::to_string(layers) +
                        " requested");
  }

  Geometry g;
  g.dimension = n;
  g.layout = Layout::Layered;
  const Index plan_count = infinite ? std::max<Index>(layers, kAnalyticFrom - 1) : lmax;
  auto plans = layer_plans(sched, plan_count);

  const Index box_total = plans[static_cast<std::size_t>(layers - 1)].start + plans[static_cast<std::size_t>(layers - 1)].count - 1;
  g.boxes.reserve(static_cast<std::size_t>(box_total));
  double volume = 0.0;
  double extent = 0.0;
  for (Index i = 1; i <= layers; ++i) {
    const LayerPlan& p = plans[static_cast<std::size_t>(i - 1)];
    extent = std::max(extent, p.width());
    for (Index off = 0; off < p.count; ++off) {
      BoxSpec b;
      b.j = p.start + off;
      b.layer = i;
      const DerivedParams dp = sched.derived(b.j);
      b.side = dp.ell;
      b.gap = dp.eps;
      b.wavenumber = dp.k;
      b.target = dp.a;
      const auto f = grid_position(off, p.per_axis, n);
      b.translation.reserve(static_cast<std::size_t>(n));
      for (Index fi : f) b.translation.push_back(p.pitch * static_cast<double>(fi));
      b.translation.push_back(p.height);
      volume += std::pow(b.side, n);
      g.boxes.push_back(std::move(b));
    }
  }

  GeometrySummary& s = g.summary;
  s.box_count = box_total;
  s.horizontal_extent = extent;
  const double sum_rel = 2.0 * static_cast<double>(box_total + 1) * kEps;
  s.volume.lo = widen_down(volume, sum_rel);

  double wsup = 0.0;
  if (infinite) {
    s.finite_obstacle = false;
    const LayerPlan& last = plans[static_cast<std::size_t>(layers - 1)];
    const Index next_start = last.start + last.count;
    const double h_next = last.height - sched.side(next_start) - last.spacing;  // H_{L+1}
    const double lo = h_next - max_side_tail_bound(sched, layers + 2) - spacing_tail_bound(sched, layers);
    const double rel = 4.0 * static_cast<double>(layers + 2) * kEps;
    s.height = {widen_down(lo, rel), widen_up(h_next, rel)};
    s.volume.hi = widen_up(volume + side_power_tail_bound(sched, box_total), sum_rel);
    for (Index i = 1; i <= plan_count; ++i) wsup = std::max(wsup, plans[static_cast<std::size_t>(i - 1)].width());
    wsup = std::max(wsup, width_tail_bound(sched, plan_count + 1));
  } else {
    s.finite_obstacle = true;
    double full_volume = volume;
    for (Index j = box_total + 1; j < plans.back().start + plans.back().count; ++j)
      full_volume += std::pow(sched.side(j), n);
    s.height = {plans.back().height, plans.back().height};
    s.volume.hi = widen_up(full_volume, sum_rel);
    for (const auto& p : plans) wsup = std::max(wsup, p.width());
  }
  const double vertical = std::max(plans.front().max_side, -s.height.lo);
  s.r_gamma_upper = widen_up(std::sqrt((n - 1) * wsup * wsup + vertical * vertical), 8 * kEps);

  plans.resize(static_cast<std::size_t>(layers));
  g.layers = std::move(plans);
  return g;
}

Geometry build_stacked(const Schedule& sched, Index count) {
  if (count < 1) throw DomainError("box count must be >= 1");
  if (paper_default_k(sched))
    throw DomainError("stacked layout needs a summable sum of 1/k_j; the paper-default k family diverges, "
                      "use an explicit k table");
  const int n = sched.dimension();
  const Index size = *sched.k_count();
  if (count > size)
    throw DomainError("the k table holds " + std::to_string(size) + " entries, " + std::to_string(count) + " requested");

  Geometry g;
  g.dimension = n;
  g.layout = Layout::Stacked;
  g.boxes.reserve(static_cast<std::size_t>(count));

  double height = 0.0;
  double volume = 0.0;
  double full_volume = 0.0;
  double max_side = 0.0;
  double extent = 0.0;
  for (Index j = 1; j <= size; ++j) {
    const double side = sched.side(j);
    if (j > 1) height = height - side - sched.spacing(j - 1);
    full_volume += std::pow(side, n);
    max_side = std::max(max_side, side);
    if (j > count) continue;
    BoxSpec b;
    b.j = j;
    b.layer = j;
    const DerivedParams dp = sched.derived(j);
    b.side = dp.ell;
    b.gap = dp.eps;
    b.wavenumber = dp.k;
    b.target = dp.a;
    b.translation.assign(static_cast<std::size_t>(n), 0.0);
    b.translation.back() = height;
    volume += std::pow(b.side, n);
    extent = std::max(extent, b.side);
    g.boxes.push_back(std::move(b));
  }

  GeometrySummary& s = g.summary;
  s.finite_obstacle = true;
  s.box_count = count;
  s.horizontal_extent = extent;
  s.height = {height, height};
  const double sum_rel = 2.0 * static_cast<double>(size + 1) * kEps;
  s.volume = {widen_down(volume, sum_rel), widen_up(full_volume, sum_rel)};
  const double vertical = std::max(g.boxes.front().side, -height);
  s.r_gamma_upper = widen_up(std::sqrt((n - 1) * max_side * max_side + vertical * vertical), 8 * kEps);
  return g;
}

}  // namespace trapcert
