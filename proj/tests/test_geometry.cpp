#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "oracles/reference_values.hpp"
#include "trapcert/errors.hpp"
#include "trapcert/geometry.hpp"

using namespace trapcert;

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

double relerr(double got, double want) { return std::abs(got - want) / std::abs(want); }

const Geometry& figure30() {
  static const Geometry g = build_layered(Schedule::figure_default(), 30);
  return g;
}

Schedule two_box_stack() {
  const double r = std::numbers::pi * std::sqrt(2.0);
  return Schedule(2, ExplicitTable{{r, 2 * r}}, PowerA{}, ExplicitTable{{1.0}});
}

std::vector<BoxSpec> first_layers(const Geometry& g, Index layers) {
  std::vector<BoxSpec> out;
  for (const BoxSpec& b : g.boxes)
    if (b.layer <= layers) out.push_back(b);
  return out;
}

}  // namespace

TEST_CASE("layer counts") {
  CHECK(layer_per_axis(1) == 1);
  CHECK(layer_per_axis(2) == 3);
  for (int n : {2, 3, 4}) CHECK(layer_box_count(2, n) == static_cast<Index>(std::pow(3, n - 1)));
  Index total = 1;
  for (Index i = 2; i <= 30; ++i)
    total += static_cast<Index>(std::floor(static_cast<double>(i) * std::log(static_cast<double>(i) + std::numbers::e)));
  CHECK(total == 1413);
  CHECK(figure30().summary.box_count == 1413);
  CHECK(figure30().boxes.size() == 1413);
}

TEST_CASE("layer recursion") {
  const Schedule s = Schedule::figure_default();
  const LayerPlan p1 = layer_plan(s, 1);
  CHECK(p1.start == 1);
  CHECK(p1.height == 0.0);
  const LayerPlan p2 = layer_plan(s, 2);
  CHECK(p2.start == 2);
  CHECK(relerr(p2.height, oracle::H2) <= 1e-13);
  CHECK(relerr(p2.pitch, oracle::h2) <= 1e-13);
  CHECK(relerr(layer_plan(s, 3).height, oracle::H3) <= 1e-13);
  CHECK(layer_plan(s, 3).start == 5);

  const auto plans = layer_plans(s, 30);
  for (std::size_t i = 1; i < plans.size(); ++i) {
    CHECK(plans[i].start == plans[i - 1].start + plans[i - 1].count);
    CHECK(plans[i].height < plans[i - 1].height);
  }
}

TEST_CASE("box placement") {
  const Geometry one = build_layered(Schedule::figure_default(), 1);
  REQUIRE(one.boxes.size() == 1);
  CHECK(one.boxes[0].translation == std::vector<double>{0.0, 0.0});
  CHECK(relerr(one.boxes[0].side, oracle::ell1) <= 1e-13);

  const BoxSpec& b3 = figure30().boxes[2];
  CHECK(b3.j == 3);
  CHECK(relerr(b3.translation[0], oracle::h2) <= 1e-13);
  CHECK(relerr(b3.translation[1], oracle::H2) <= 1e-13);

  CHECK(grid_position(0, 3, 3) == std::vector<Index>{0, 0});
  CHECK(grid_position(1, 3, 3) == std::vector<Index>{0, 1});
  CHECK(grid_position(5, 3, 3) == std::vector<Index>{1, 2});
}

TEST_CASE("stacked layout") {
  const Geometry g = build_stacked(two_box_stack(), 2);
  REQUIRE(g.boxes.size() == 2);
  CHECK(g.boxes[0].side == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g.boxes[1].side == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g.boxes[1].translation[0] == 0.0);
  CHECK(g.boxes[1].translation[1] == doctest::Approx(-1.5).epsilon(1e-15));
  CHECK(g.summary.finite_obstacle);

  const Geometry one = build_stacked(two_box_stack(), 1);
  CHECK(one.boxes.size() == 1);
  CHECK(one.boxes[0].translation == std::vector<double>{0.0, 0.0});

  CHECK_THROWS_AS(build_stacked(Schedule::figure_default(), 3), DomainError);
  CHECK_THROWS_AS(build_stacked(two_box_stack(), 3), DomainError);
}

TEST_CASE("explicit tables give finite obstacles") {
  CHECK_THROWS_AS(build_layered(Schedule(2, PaperDefaultK{}, PowerA{}, ExplicitTable{{1.0, 0.5}}), 3), DomainError);
  std::vector<double> k;
  for (int j = 0; j < 20; ++j) k.push_back(3.0 * std::pow(1.2, j));
  const Schedule s(2, ExplicitTable{k}, PowerA{}, ShiftedPowerD{});
  CHECK_THROWS_AS(build_layered(s, 10), DomainError);  // 1 + 3 + 5 + 7 = 16 <= 20 < 26
  const Geometry g = build_layered(s, 4);
  CHECK(g.summary.finite_obstacle);
  CHECK(g.summary.box_count == 16);
  CHECK(g.summary.height.lo == g.summary.height.hi);
  CHECK(g.summary.height.lo == g.layers.back().height);
}

TEST_CASE("summary intervals nest as layers grow") {
  const Schedule s = Schedule::figure_default();
  Geometry prev = build_layered(s, 3);
  for (Index L : {5, 10, 20, 30, 60}) {
    CAPTURE(L);
    const Geometry g = build_layered(s, L);
    CHECK(g.summary.height.lo >= prev.summary.height.lo);
    CHECK(g.summary.height.hi <= prev.summary.height.hi);
    CHECK(g.summary.volume.lo >= prev.summary.volume.lo);
    CHECK(g.summary.volume.hi <= prev.summary.volume.hi);
    CHECK(g.summary.r_gamma_upper <= prev.summary.r_gamma_upper);
    prev = g;
  }
  const GeometrySummary& f = figure30().summary;
  CHECK(f.volume.lo == doctest::Approx(oracle::volume1413).epsilon(1e-12));
  const double h31 = figure30().layers.back().height - s.side(1414) - s.spacing(30);
  CHECK(f.height.hi >= h31);
  CHECK(f.height.hi == doctest::Approx(h31).epsilon(1e-13));
}

TEST_CASE("width and side tail bounds") {
  const Schedule s = Schedule::figure_default();
  const auto plans = layer_plans(s, 2000);
  double prev_bound = std::numeric_limits<double>::infinity();
  for (Index I : {9, 10, 20, 50, 100, 500}) {
    CAPTURE(I);
    double sup = 0.0, sum = 0.0;
    for (Index i = I; i <= 2000; ++i) {
      sup = std::max(sup, plans[static_cast<std::size_t>(i - 1)].width());
      sum += plans[static_cast<std::size_t>(i - 1)].max_side;
    }
    const double wb = width_tail_bound(s, I);
    CHECK(wb >= sup);
    CHECK(wb <= prev_bound);
    CHECK(max_side_tail_bound(s, I) >= sum);
    prev_bound = wb;
  }
  // the running sup of W_i decreases
  double tail_sup_prev = std::numeric_limits<double>::infinity();
  for (Index I = 1; I <= 1000; I += 37) {
    double sup = 0.0;
    for (Index i = I; i <= 2000; ++i) sup = std::max(sup, plans[static_cast<std::size_t>(i - 1)].width());
    CHECK(sup <= tail_sup_prev);
    tail_sup_prev = sup;
  }
}

TEST_CASE("disjointness certificate on the figure geometry") {
  const Schedule s = Schedule::figure_default();
  const DisjointnessReport r = disjointness_certificate(figure30().boxes, s);
  CHECK(r.pass);
  CHECK(r.closures_disjoint);
  CHECK(r.far_layers_ok);
  CHECK(r.in_layer.size() == 29);
  CHECK(r.cross_layer.size() == 29);
  for (const GapRecord& g : r.in_layer) {
    CAPTURE(g.layer_a);
    CHECK(g.ok);
    CHECK(relerr(g.min_gap, s.spacing(g.layer_a) / std::log(static_cast<double>(g.layer_a) + std::numbers::e)) <= 1e-12);
  }
  for (const GapRecord& g : r.cross_layer) {
    CAPTURE(g.layer_a);
    CHECK(g.ok);
    CHECK(std::abs(g.min_gap - s.spacing(g.layer_a)) <= 16 * kEps * std::max(1.0, std::abs(g.required) + 20.0));
  }
  CHECK(r.cross_layer.front().required == s.spacing(1));
}

TEST_CASE("disjointness fault injection") {
  const Schedule s = Schedule::figure_default();
  SUBCASE("shared face") {
    auto boxes = first_layers(figure30(), 2);
    boxes[2].translation[0] = boxes[1].translation[0] + boxes[1].side;
    const DisjointnessReport r = disjointness_certificate(boxes, s);
    CHECK_FALSE(r.pass);
    CHECK_FALSE(r.closures_disjoint);
    REQUIRE(r.first_overlap);
    CHECK(r.first_overlap->first == 2);
    CHECK(r.first_overlap->second == 3);
  }
  SUBCASE("layer pushed into its neighbour") {
    auto boxes = first_layers(figure30(), 3);
    for (BoxSpec& b : boxes)
      if (b.layer == 3) b.translation[1] += 0.5 * s.spacing(2);
    const DisjointnessReport r = disjointness_certificate(boxes, s);
    CHECK_FALSE(r.pass);
    CHECK(r.closures_disjoint);
  }
  SUBCASE("far overlap") {
    auto boxes = first_layers(figure30(), 4);
    boxes.back().translation = boxes.front().translation;
    CHECK_FALSE(disjointness_certificate(boxes, s).closures_disjoint);
  }
}

TEST_CASE("connectivity certificate") {
  const ConnectivityReport r = connectivity_certificate(figure30().boxes, figure30().summary);
  CHECK(r.pass);
  REQUIRE(r.facts.size() == 4);
  for (const auto& f : r.facts) CHECK(f.ok);

  auto boxes = figure30().boxes;
  boxes[10].gap = 0.0;
  const ConnectivityReport bad = connectivity_certificate(boxes, figure30().summary);
  CHECK_FALSE(bad.pass);
  CHECK_FALSE(bad.facts[0].ok);
  CHECK(bad.facts[1].ok);

  const Geometry st = build_stacked(two_box_stack(), 2);
  CHECK(connectivity_certificate(st.boxes, st.summary).pass);
}

TEST_CASE("flood fill oracle") {
  auto boxes = first_layers(figure30(), 3);
  const double feature = min_feature_size(boxes);
  CHECK(feature > 0.0);
  CHECK(flood_fill_oracle(boxes, feature / 5));

  for (BoxSpec& b : boxes) b.gap = 0.0;
  CHECK_FALSE(flood_fill_oracle(boxes, feature / 5));

  BoxSpec unit;
  unit.j = 1;
  unit.layer = 1;
  unit.side = 1.0;
  unit.translation = {0.0, 0.0};
  unit.gap = 0.5;
  CHECK(flood_fill_oracle({unit}, 0.01));
  CHECK_THROWS_AS(flood_fill_oracle({unit}, 0.2), DomainError);
  unit.gap = 0.0;
  CHECK_FALSE(flood_fill_oracle({unit}, 0.01));
}
