#pragma once

#include <optional>
#include <string>
#include <vector>

#include "trapcert/sequences.hpp"

// Layered and stacked packings of scaled cubes.
//
// Box j is ell_j [0,1]^n + t_j. Its trapping boundary Gamma_j is the box
// boundary minus the square {x_n = t_{j,n}, t_{j,i} < x_i < t_{j,i} + ell_j eps_j}
// anchored at the lower corner.

namespace trapcert {

enum class Layout { Layered, Stacked };

const char* layout_name(Layout l);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

struct LayerPlan {
  Index i = 0;
  Index per_axis = 0;   // floor(i log(i+e)), 1 for i = 1
  Index count = 0;      // per_axis^(n-1), 1 for i = 1
  Index start = 0;      // B_i
  double height = 0.0;  // H_i
  double max_side = 0.0;  // L_i = ell_{B_i}
  double pitch = 0.0;     // h_i
  double spacing = 0.0;   // d_i
  double width() const { return static_cast<double>(per_axis) * pitch; }  // W_i
};

struct BoxSpec {
  Index j = 0;
  Index layer = 0;
  double side = 0.0;
  std::vector<double> translation;
  double gap = 0.0;
  double wavenumber = 0.0;
  double target = 0.0;

  double lo(int axis) const { return translation[static_cast<std::size_t>(axis)]; }
  double hi(int axis) const { return translation[static_cast<std::size_t>(axis)] + side; }
};

struct GeometrySummary {
  Index box_count = 0;
  double horizontal_extent = 0.0;
  Interval height;  // H_infinity, or the lowest layer height for a finite obstacle
  Interval volume;
  double r_gamma_upper = 0.0;
  bool finite_obstacle = false;  // explicit tables define finitely many boxes
};

struct Geometry {
  int dimension = 2;
  Layout layout = Layout::Layered;
  std::vector<LayerPlan> layers;  // empty for stacked layouts
  std::vector<BoxSpec> boxes;
  GeometrySummary summary;
};

/// floor(i log(i+e)), with layer 1 holding a single box.
Index layer_per_axis(Index i);
Index layer_box_count(Index i, int n);

/// Plans for layers 1..L, computed by the recursion.
std::vector<LayerPlan> layer_plans(const Schedule& sched, Index L);
LayerPlan layer_plan(const Schedule& sched, Index i);

/// f_i(j) in row-major order, last axis fastest.
std::vector<Index> grid_position(Index offset, Index per_axis, int n);

Geometry build_layered(const Schedule& sched, Index layers);
Geometry build_stacked(const Schedule& sched, Index count);

/// Upper bound on sum_{i >= I} ell_{B_i} for the paper-default k family.
double max_side_tail_bound(const Schedule& sched, Index I);
/// Upper bound on sup_{i >= I} W_i for the paper-default k family.
double width_tail_bound(const Schedule& sched, Index I);

// ---------------------------------------------------------------- certificates

struct GapRecord {
  Index layer_a = 0;
  Index layer_b = 0;
  double min_gap = 0.0;
  double required = 0.0;
  bool ok = true;
};

struct DisjointnessReport {
  bool pass = true;
  bool closures_disjoint = true;
  std::optional<std::pair<Index, Index>> first_overlap;  // box indices j
  std::vector<GapRecord> in_layer;     // layer_a == layer_b, layers with >= 2 boxes
  std::vector<GapRecord> cross_layer;  // adjacent layers
  bool far_layers_ok = true;           // non-adjacent pairs, via layer slabs
  std::vector<std::string> failures;
};

/// Closure-disjointness uses outward-rounded coordinates and strict
/// comparisons. The quantitative bounds allow a rounding slack of
/// 16 ulp of the largest coordinate involved.
DisjointnessReport disjointness_certificate(const std::vector<BoxSpec>& boxes, const Schedule& sched);

struct ConnectivityFact {
  std::string name;
  bool ok = true;
  std::string detail;
};

struct ConnectivityReport {
  bool pass = true;
  std::vector<ConnectivityFact> facts;  // always 4 entries
};

ConnectivityReport connectivity_certificate(const std::vector<BoxSpec>& boxes, const GeometrySummary& summary);

/// Smallest positive opening ell_j eps_j and smallest distance between boxes.
double min_feature_size(const std::vector<BoxSpec>& boxes);

/// n = 2 raster test: is every free cell 4-connected to the outer border?
/// Throws DomainError when resolution is not below a quarter of min_feature_size.
bool flood_fill_oracle(const std::vector<BoxSpec>& boxes, double resolution);

}  // namespace trapcert
