#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

// Closed-form schedule families for the wavenumbers k_j, the targets a_j and
// the layer spacings d_i, together with the derived sidelengths ell_j and gap
// fractions eps_j.
//
// Indices are 1-based throughout. log is the natural logarithm.

namespace trapcert {

using Index = std::int64_t;

/// k_j = c (j log(j+e))^(1/n) log^2(log(j + e^e)).
struct PaperDefaultK {
  double c = 2.0;
};
/// a_j = A j^p.
struct PowerA {
  double A = 1e-4;
  double p = 0.25;
};
/// d_i = D (i + s)^(-q), q > 1.
struct ShiftedPowerD {
  double D = 2.0;
  double s = 6.0;
  double q = 1.2;
};
/// A finite list of values; entry 0 is index 1.
struct ExplicitTable {
  std::vector<double> values;
};

using KFamily = std::variant<PaperDefaultK, ExplicitTable>;
using AFamily = std::variant<PowerA, ExplicitTable>;
using DFamily = std::variant<ShiftedPowerD, ExplicitTable>;

struct DerivedParams {
  Index j = 0;
  double k = 0.0;
  double ell = 0.0;
  double eps = 0.0;
  double a = 0.0;
};

class Schedule {
public:
  static constexpr int kMaxPrecisionDigits = 100;

  /// Validates family parameters; throws DomainError.
  Schedule(int dimension, KFamily k, AFamily a, DFamily d, int precision_digits = 15);

  /// The figure schedule: n = 2, c = 2, a_j = j^(1/4)/10000, d_i = 2 (i+6)^(-6/5).
  static Schedule figure_default(int dimension = 2);

  int dimension() const { return n_; }
  int precision_digits() const { return digits_; }
  bool extended_precision() const { return digits_ > 15; }
  const KFamily& k_family() const { return k_; }
  const AFamily& a_family() const { return a_; }
  const DFamily& d_family() const { return d_; }

  /// Number of wavenumbers for table families, nullopt when unbounded.
  std::optional<Index> k_count() const;
  std::optional<Index> d_count() const;

  double wavenumber(Index j) const;
  double target(Index j) const;
  double spacing(Index i) const;
  /// ell_j = pi sqrt(n) / k_j.
  double side(Index j) const;
  double gap(Index j) const;
  DerivedParams derived(Index j) const;

  /// c (j log(j+e))^(1/n) log^2(log(j+e^e)), in the schedule's precision.
  double growth_floor(double c, Index j) const;

  /// Checks k strictly increasing, a positive nondecreasing, d positive
  /// decreasing up to max_index (clamped to table sizes). Throws DomainError.
  void validate_monotonicity(Index max_index) const;

private:
  int n_;
  KFamily k_;
  AFamily a_;
  DFamily d_;
  int digits_;
};

/// eps = (3/(2 pi^2))^(1/3) (1 + 2k sqrt(2k^2 a^2 + a))^(-2/(3n-3)).
/// Throws DomainError for k <= 0, a <= 0, n < 2, or a result outside (0, 1).
double gap_fraction(int n, double k, double a, int precision_digits = 15);

/// The base of the gap formula, 1 + 2k sqrt(2k^2 a^2 + a).
double gap_base(double k, double a);

struct GrowthFloorEntry {
  Index j = 0;
  double k = 0.0;
  double floor = 0.0;
  bool ok = false;
};

struct GrowthFloorReport {
  bool pass = true;
  std::optional<Index> first_failure;
  std::vector<GrowthFloorEntry> entries;
};

GrowthFloorReport growth_floor_check(const Schedule& sched, double c, Index j_max);

/// sum_{j <= J} ell_j^n.
double partial_volume(const Schedule& sched, Index J);
/// pi^n n^(n/2) sum_{j <= J} k_j^(-n), the second form of the same sum.
double partial_volume_via_wavenumbers(const Schedule& sched, Index J);

/// Upper bound on sum_{j > J} ell_j^n. Exact remainder for tables.
double side_power_tail_bound(const Schedule& sched, Index J);

/// Upper bound on sum_{i > I} d_i. Exact remainder for tables.
double spacing_tail_bound(const Schedule& sched, Index I);

/// Upper bound on sum_{j > J} ell_j, or nullopt when the family has no
/// registered bound (the paper-default family diverges).
std::optional<double> side_tail_bound(const Schedule& sched, Index J);

/// j k_j^(-n) <= sum_{i <= j} k_i^(-n) for all j <= J.
bool partial_sum_bound_holds(const Schedule& sched, Index J);

/// j^(-1/n) k_j >= pi sqrt(n) V^(-1/n) for every j <= J, V an upper bound on the total volume.
bool weyl_consistency_holds(const Schedule& sched, Index J, double volume_upper);

}  // namespace trapcert
