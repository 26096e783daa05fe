#include "trapcert/sequences.hpp"

#include <algorithm>
#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <numbers>
#include <string>
#include <type_traits>

#include "trapcert/errors.hpp"

namespace trapcert {

namespace {

using Big = boost::multiprecision::cpp_bin_float_100;

template <class T>
T e_const() {
  if constexpr (std::is_same_v<T, double>) return std::numbers::e;
  else return boost::math::constants::e<T>();
}

template <class T>
T pi_const() {
  if constexpr (std::is_same_v<T, double>) return std::numbers::pi;
  else return boost::math::constants::pi<T>();
}

template <class T>
T growth_floor_t(int n, T c, Index j) {
  using std::exp, std::log, std::pow, boost::multiprecision::exp, boost::multiprecision::log,
      boost::multiprecision::pow;
  const T jj = T(j);
  const T e = e_const<T>();
  const T ll = log(log(jj + exp(e)));
  return c * pow(jj * log(jj + e), T(1) / T(n)) * ll * ll;
}

template <class T>
T gap_fraction_t(int n, T k, T a) {
  using std::pow, std::sqrt, boost::multiprecision::pow, boost::multiprecision::sqrt;
  const T pi = pi_const<T>();
  const T base = T(1) + 2 * k * sqrt(2 * k * k * a * a + a);
  return pow(T(3) / (2 * pi * pi), T(1) / T(3)) * pow(base, T(-2) / T(3 * n - 3));
}

double table_value(const ExplicitTable& t, Index j, const char* what) {
  if (j < 1) throw DomainError(std::string(what) + " index must be >= 1");
  if (j > static_cast<Index>(t.values.size()))
    throw DomainError(std::string(what) + " index " + std::to_string(j) + " is past the end of the table (" +
                      std::to_string(t.values.size()) + " entries)");
  return t.values[static_cast<std::size_t>(j - 1)];
}

void check_table(const ExplicitTable& t, const char* what) {
  if (t.values.empty()) throw DomainError(std::string(what) + " table is empty");
  for (double v : t.values)
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError(std::string(what) + " table entries must be finite and > 0");
}

}  // namespace

Schedule::Schedule(int dimension, KFamily k, AFamily a, DFamily d, int precision_digits)
    : n_(dimension), k_(std::move(k)), a_(std::move(a)), d_(std::move(d)), digits_(precision_digits) {
  if (n_ < 2) throw DomainError("dimension must be >= 2");
  if (digits_ < 15) throw DomainError("precisionDigits must be >= 15");
  if (digits_ > kMaxPrecisionDigits)
    throw DomainError("precisionDigits above " + std::to_string(kMaxPrecisionDigits) + " is not supported");

  if (auto* p = std::get_if<PaperDefaultK>(&k_)) {
    if (!(p->c > 0.0) || !std::isfinite(p->c)) throw DomainError("k family: c must be finite and > 0");
  } else {
    check_table(std::get<ExplicitTable>(k_), "k");
  }
  if (auto* p = std::get_if<PowerA>(&a_)) {
    if (!(p->A > 0.0) || !std::isfinite(p->A)) throw DomainError("a family: A must be finite and > 0");
    if (!(p->p >= 0.0) || !std::isfinite(p->p)) throw DomainError("a family: p must be finite and >= 0");
  } else {
    check_table(std::get<ExplicitTable>(a_), "a");
  }
  if (auto* p = std::get_if<ShiftedPowerD>(&d_)) {
    if (!(p->D > 0.0) || !std::isfinite(p->D)) throw DomainError("d family: D must be finite and > 0");
    if (!(p->q > 1.0) || !std::isfinite(p->q)) throw DomainError("d family: q must be > 1");
    if (!(p->s > -1.0) || !std::isfinite(p->s)) throw DomainError("d family: s must be > -1");
  } else {
    check_table(std::get<ExplicitTable>(d_), "d");
  }
}

Schedule Schedule::figure_default(int dimension) {
  return Schedule(dimension, PaperDefaultK{2.0}, PowerA{1e-4, 0.25}, ShiftedPowerD{2.0, 6.0, 1.2});
}

std::optional<Index> Schedule::k_count() const {
  if (auto* t = std::get_if<ExplicitTable>(&k_)) return static_cast<Index>(t->values.size());
  return std::nullopt;
}

std::optional<Index> Schedule::d_count() const {
  if (auto* t = std::get_if<ExplicitTable>(&d_)) return static_cast<Index>(t->values.size());
  return std::nullopt;
}

double Schedule::growth_floor(double c, Index j) const {
  if (j < 1) throw DomainError("index must be >= 1");
  if (extended_precision()) return static_cast<double>(growth_floor_t<Big>(n_, Big(c), j));
  return growth_floor_t<double>(n_, c, j);
}

double Schedule::wavenumber(Index j) const {
  if (auto* p = std::get_if<PaperDefaultK>(&k_)) return growth_floor(p->c, j);
  return table_value(std::get<ExplicitTable>(k_), j, "k");
}

double Schedule::target(Index j) const {
  if (auto* p = std::get_if<PowerA>(&a_)) {
    if (j < 1) throw DomainError("a index must be >= 1");
    if (extended_precision())
      return static_cast<double>(Big(p->A) * boost::multiprecision::pow(Big(j), Big(p->p)));
    return p->A * std::pow(static_cast<double>(j), p->p);
  }
  return table_value(std::get<ExplicitTable>(a_), j, "a");
}

double Schedule::spacing(Index i) const {
  if (auto* p = std::get_if<ShiftedPowerD>(&d_)) {
    if (i < 1) throw DomainError("d index must be >= 1");
    if (extended_precision())
      return static_cast<double>(Big(p->D) * boost::multiprecision::pow(Big(i) + Big(p->s), Big(-p->q)));
    return p->D * std::pow(static_cast<double>(i) + p->s, -p->q);
  }
  return table_value(std::get<ExplicitTable>(d_), i, "d");
}

double Schedule::side(Index j) const {
  return std::numbers::pi * std::sqrt(static_cast<double>(n_)) / wavenumber(j);
}

double Schedule::gap(Index j) const { return gap_fraction(n_, wavenumber(j), target(j), digits_); }

DerivedParams Schedule::derived(Index j) const {
  DerivedParams d;
  d.j = j;
  d.k = wavenumber(j);
  d.ell = std::numbers::pi * std::sqrt(static_cast<double>(n_)) / d.k;
  d.a = target(j);
  d.eps = gap_fraction(n_, d.k, d.a, digits_);
  return d;
}

void Schedule::validate_monotonicity(Index max_index) const {
  if (max_index < 1) return;
  Index jk = max_index, ja = max_index, jd = max_index;
  if (auto c = k_count()) jk = std::min(jk, *c);
  if (auto* t = std::get_if<ExplicitTable>(&a_)) ja = std::min<Index>(ja, static_cast<Index>(t->values.size()));
  if (auto c = d_count()) jd = std::min(jd, *c);

  for (Index j = 2; j <= jk; ++j)
    if (!(wavenumber(j) > wavenumber(j - 1)))
      throw DomainError("k_j is not strictly increasing at j = " + std::to_string(j));
  for (Index j = 2; j <= ja; ++j)
    if (target(j) < target(j - 1)) throw DomainError("a_j decreases at j = " + std::to_string(j));
  for (Index i = 2; i <= jd; ++i)
    if (!(spacing(i) < spacing(i - 1)))
      throw DomainError("d_i is not strictly decreasing at i = " + std::to_string(i));
}

double gap_base(double k, double a) { return 1.0 + 2.0 * k * std::sqrt(2.0 * k * k * a * a + a); }

double gap_fraction(int n, double k, double a, int precision_digits) {
  if (n < 2) throw DomainError("dimension must be >= 2");
  if (!(k > 0.0) || !std::isfinite(k)) throw DomainError("gap_fraction: k must be finite and > 0");
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("gap_fraction: a must be finite and > 0");
  const double eps = precision_digits > 15 ? static_cast<double>(gap_fraction_t<Big>(n, Big(k), Big(a)))
                                           : gap_fraction_t<double>(n, k, a);
  // Unreachable in exact arithmetic (the prefactor is below 0.54), but an
  // underflow to 0 for huge k a must not pass silently.
  if (!(eps > 0.0) || !(eps < 1.0))
    throw DomainError("gap fraction left (0, 1): eps = " + std::to_string(eps));
  return eps;
}

GrowthFloorReport growth_floor_check(const Schedule& sched, double c, Index j_max) {
  if (j_max < 1) throw DomainError("jMax must be >= 1");
  GrowthFloorReport r;
  if (auto cnt = sched.k_count()) j_max = std::min(j_max, *cnt);
  r.entries.reserve(static_cast<std::size_t>(j_max));
  for (Index j = 1; j <= j_max; ++j) {
    GrowthFloorEntry e;
    e.j = j;
    e.k = sched.wavenumber(j);
    e.floor = c == 0.0 ? 0.0 : sched.growth_floor(c, j);
    e.ok = e.k >= e.floor;
    if (!e.ok && r.pass) {
      r.pass = false;
      r.first_failure = j;
    }
    r.entries.push_back(e);
  }
  return r;
}

double partial_volume(const Schedule& sched, Index J) {
  if (J < 1) throw DomainError("J must be >= 1");
  const double n = sched.dimension();
  double sum = 0.0;
  for (Index j = 1; j <= J; ++j) sum += std::pow(sched.side(j), n);
  return sum;
}

double partial_volume_via_wavenumbers(const Schedule& sched, Index J) {
  if (J < 1) throw DomainError("J must be >= 1");
  const double n = sched.dimension();
  double sum = 0.0;
  for (Index j = 1; j <= J; ++j) sum += std::pow(sched.wavenumber(j), -n);
  return std::pow(std::numbers::pi, n) * std::pow(n, n / 2.0) * sum;
}

double side_power_tail_bound(const Schedule& sched, Index J) {
  if (J < 0) throw DomainError("J must be >= 0");
  const int n = sched.dimension();
  if (auto cnt = sched.k_count()) {
    if (J > *cnt) throw DomainError("volume tail requested past the end of the k table");
    double sum = 0.0;
    for (Index j = J + 1; j <= *cnt; ++j) sum += std::pow(sched.side(j), n);
    return sum;
  }
  // k_j^(-n) <= c^(-n) / (j log j (log log j)^(2n)); integrate from J >= 3.
  double exact = 0.0;
  Index from = J;
  for (; from < 3; ++from) exact += std::pow(sched.side(from + 1), n);
  const double c = std::get<PaperDefaultK>(sched.k_family()).c;
  const double lead = std::pow(std::numbers::pi * std::sqrt(static_cast<double>(n)) / c, n);
  const double ll = std::log(std::log(static_cast<double>(from)));
  return exact + lead / ((2.0 * n - 1.0) * std::pow(ll, 2 * n - 1));
}

double spacing_tail_bound(const Schedule& sched, Index I) {
  if (I < 0) throw DomainError("I must be >= 0");
  if (auto cnt = sched.d_count()) {
    if (I > *cnt) throw DomainError("spacing tail requested past the end of the d table");
    double sum = 0.0;
    for (Index i = I + 1; i <= *cnt; ++i) sum += sched.spacing(i);
    return sum;
  }
  const auto& p = std::get<ShiftedPowerD>(sched.d_family());
  const double x = static_cast<double>(I) + p.s;
  if (!(x > 0.0)) {
    // d_{I+1} + bound from I+1.
    return sched.spacing(I + 1) + spacing_tail_bound(sched, I + 1);
  }
  return p.D * std::pow(x, 1.0 - p.q) / (p.q - 1.0);
}

std::optional<double> side_tail_bound(const Schedule& sched, Index J) {
  if (J < 0) throw DomainError("J must be >= 0");
  auto cnt = sched.k_count();
  if (!cnt) return std::nullopt;
  if (J > *cnt) throw DomainError("side tail requested past the end of the k table");
  double sum = 0.0;
  for (Index j = J + 1; j <= *cnt; ++j) sum += sched.side(j);
  return sum;
}

bool partial_sum_bound_holds(const Schedule& sched, Index J) {
  const double n = sched.dimension();
  double sum = 0.0;
  for (Index j = 1; j <= J; ++j) {
    const double term = std::pow(sched.wavenumber(j), -n);
    sum += term;
    // j k_j^(-n) <= sum with a few ulps for the accumulated rounding
    if (static_cast<double>(j) * term > sum * (1.0 + 4e-16 * static_cast<double>(j))) return false;
  }
  return true;
}

bool weyl_consistency_holds(const Schedule& sched, Index J, double volume_upper) {
  if (!(volume_upper > 0.0)) return false;
  const double n = sched.dimension();
  const double rhs = std::numbers::pi * std::sqrt(n) * std::pow(volume_upper, -1.0 / n);
  for (Index j = 1; j <= J; ++j)
    if (std::pow(static_cast<double>(j), -1.0 / n) * sched.wavenumber(j) < rhs) return false;
  return true;
}

}  // namespace trapcert
