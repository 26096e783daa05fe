#include "trapcert/specfun/scaled.hpp"

#include <cfloat>
#include <cmath>
#include <limits>

#include "trapcert/errors.hpp"

namespace trapcert::specfun {

namespace {
// Beyond this exponent gap the smaller addend is below half an ulp of the larger.
constexpr std::int64_t kAlignLimit = 1100;
}  // namespace

ScaledReal::ScaledReal(double value) : mant_(value), exp_(0) { normalize(); }

ScaledReal ScaledReal::from_parts(double mantissa, std::int64_t exponent) {
  ScaledReal r;
  r.mant_ = mantissa;
  r.exp_ = exponent;
  r.normalize();
  return r;
}

void ScaledReal::normalize() {
  if (mant_ == 0.0 || !std::isfinite(mant_)) {
    if (mant_ == 0.0) exp_ = 0;
    return;
  }
  int e = 0;
  mant_ = std::frexp(mant_, &e);
  exp_ += e;
}

bool ScaledReal::is_finite() const { return std::isfinite(mant_); }

bool ScaledReal::representable() const {
  if (!std::isfinite(mant_)) return false;
  if (mant_ == 0.0) return true;
  return exp_ >= DBL_MIN_EXP && exp_ <= DBL_MAX_EXP;
}

double ScaledReal::to_double() const {
  if (!representable()) {
    throw RangeError("value outside the normal binary64 range (log10 |x| = " +
                     std::to_string(log10_abs()) + ")");
  }
  return std::ldexp(mant_, static_cast<int>(exp_));
}

double ScaledReal::to_double_saturating() const {
  if (mant_ == 0.0 || !std::isfinite(mant_)) return mant_;
  if (exp_ > DBL_MAX_EXP) return std::copysign(std::numeric_limits<double>::infinity(), mant_);
  if (exp_ < DBL_MIN_EXP - DBL_MANT_DIG) return std::copysign(0.0, mant_);
  return std::ldexp(mant_, static_cast<int>(exp_));
}

double ScaledReal::log10_abs() const {
  if (mant_ == 0.0) return -std::numeric_limits<double>::infinity();
  return std::log10(std::abs(mant_)) + static_cast<double>(exp_) * std::log10(2.0);
}

ScaledReal ScaledReal::abs() const {
  ScaledReal r = *this;
  r.mant_ = std::abs(r.mant_);
  return r;
}

ScaledReal ScaledReal::sqrt() const {
  if (mant_ < 0.0) throw DomainError("sqrt of a negative ScaledReal");
  if (mant_ == 0.0) return {};
  double m = mant_;
  std::int64_t e = exp_;
  if (e % 2 != 0) {
    m *= 2.0;
    e -= 1;
  }
  return from_parts(std::sqrt(m), e / 2);
}

ScaledReal ScaledReal::ldexp(std::int64_t shift) const {
  if (mant_ == 0.0) return *this;
  ScaledReal r = *this;
  r.exp_ += shift;
  return r;
}

ScaledReal ScaledReal::operator-() const {
  ScaledReal r = *this;
  r.mant_ = -r.mant_;
  return r;
}

ScaledReal& ScaledReal::operator+=(const ScaledReal& rhs) {
  if (rhs.mant_ == 0.0) return *this;
  if (mant_ == 0.0) return *this = rhs;
  const std::int64_t gap = rhs.exp_ - exp_;
  if (gap > kAlignLimit) return *this = rhs;
  if (gap < -kAlignLimit) return *this;
  if (gap >= 0) {
    mant_ = std::ldexp(mant_, static_cast<int>(-gap)) + rhs.mant_;
    exp_ = rhs.exp_;
  } else {
    mant_ = mant_ + std::ldexp(rhs.mant_, static_cast<int>(gap));
  }
  normalize();
  return *this;
}

ScaledReal& ScaledReal::operator-=(const ScaledReal& rhs) { return *this += -rhs; }

ScaledReal& ScaledReal::operator*=(const ScaledReal& rhs) {
  mant_ *= rhs.mant_;
  exp_ += rhs.exp_;
  normalize();
  return *this;
}

ScaledReal& ScaledReal::operator/=(const ScaledReal& rhs) {
  if (rhs.mant_ == 0.0) throw DomainError("ScaledReal division by zero");
  mant_ /= rhs.mant_;
  exp_ -= rhs.exp_;
  normalize();
  return *this;
}

std::partial_ordering operator<=>(const ScaledReal& a, const ScaledReal& b) {
  const ScaledReal diff = a - b;
  if (!std::isfinite(diff.mant_)) return std::partial_ordering::unordered;
  return diff.mant_ <=> 0.0;
}

ScaledReal max_abs(const ScaledReal& a, const ScaledReal& b) {
  const ScaledReal aa = a.abs();
  const ScaledReal bb = b.abs();
  return aa < bb ? bb : aa;
}

}  // namespace trapcert::specfun
