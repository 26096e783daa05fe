#pragma once

#include <compare>
#include <cstdint>

namespace trapcert::specfun {

// A binary64 mantissa with a separate base-2 exponent, value = mantissa * 2^exponent.
//
// Bessel functions of large order at small argument leave the binary64 range
// (Y_100(0.01) is about 1e386 while J_100(0.01) is about 1e-388), but the
// quantities the DtN checks need (Wronskians, moduli, B_m) are products and
// sums of such values and stay meaningful when carried this way.
class ScaledReal {
public:
  constexpr ScaledReal() = default;
  explicit ScaledReal(double value);
  static ScaledReal from_parts(double mantissa, std::int64_t exponent);

  /// Mantissa in [0.5, 1) in magnitude, or 0.
  double mantissa() const { return mant_; }
  std::int64_t exponent() const { return exp_; }

  bool is_zero() const { return mant_ == 0.0; }
  int sign() const { return (mant_ > 0.0) - (mant_ < 0.0); }
  bool is_finite() const;

  /// True when the value is zero or a normal binary64 number.
  bool representable() const;
  /// Throws RangeError unless representable().
  double to_double() const;
  /// Rounds to binary64, flushing to zero / saturating to +-inf outside the range.
  double to_double_saturating() const;

  /// log10 |x|; -inf for zero.
  double log10_abs() const;

  ScaledReal abs() const;
  ScaledReal sqrt() const;
  ScaledReal ldexp(std::int64_t shift) const;

  ScaledReal operator-() const;
  ScaledReal& operator+=(const ScaledReal& rhs);
  ScaledReal& operator-=(const ScaledReal& rhs);
  ScaledReal& operator*=(const ScaledReal& rhs);
  ScaledReal& operator/=(const ScaledReal& rhs);

  friend ScaledReal operator+(ScaledReal a, const ScaledReal& b) { return a += b; }
  friend ScaledReal operator-(ScaledReal a, const ScaledReal& b) { return a -= b; }
  friend ScaledReal operator*(ScaledReal a, const ScaledReal& b) { return a *= b; }
  friend ScaledReal operator/(ScaledReal a, const ScaledReal& b) { return a /= b; }
  friend ScaledReal operator*(ScaledReal a, double b) { return a *= ScaledReal(b); }
  friend ScaledReal operator*(double a, ScaledReal b) { return b *= ScaledReal(a); }

  friend std::partial_ordering operator<=>(const ScaledReal& a, const ScaledReal& b);
  friend bool operator==(const ScaledReal& a, const ScaledReal& b) {
    return a.mant_ == b.mant_ && a.exp_ == b.exp_;
  }

private:
  void normalize();

  double mant_ = 0.0;
  std::int64_t exp_ = 0;
};

ScaledReal max_abs(const ScaledReal& a, const ScaledReal& b);

}  // namespace trapcert::specfun
