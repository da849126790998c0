#ifndef DELTAKIN_SCALAR_HPP
#define DELTAKIN_SCALAR_HPP

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace deltakin {

/// Element of the field Q(sqrt(3)), stored as rat + sqrt3 * sqrt(3) with both
/// parts exact rationals. The representation is unique because sqrt(3) is
/// irrational, so a Scalar is zero iff both parts are zero.
struct Scalar {
  mpq_class rat;    // rational part
  mpq_class sqrt3;  // coefficient of sqrt(3)

  Scalar() : rat(0), sqrt3(0) {}
  Scalar(long v) : rat(v), sqrt3(0) {}  // NOLINT: implicit by design
  explicit Scalar(mpq_class r) : rat(std::move(r)), sqrt3(0) {}
  Scalar(mpq_class r, mpq_class s) : rat(std::move(r)), sqrt3(std::move(s)) {}

  /// (num/den) * sqrt(3)
  static Scalar root3(long num = 1, long den = 1);
  static Scalar fraction(long num, long den);

  bool is_zero() const { return sgn(rat) == 0 && sgn(sqrt3) == 0; }
  bool is_rational() const { return sgn(sqrt3) == 0; }

  /// Exact sign of rat + sqrt3*sqrt(3): -1, 0 or +1.
  int sign() const;

  double to_double() const;
  /// Conversion through 256-bit floating point. Use when rat and sqrt3 are
  /// large and nearly cancel; plain to_double() loses the difference.
  double to_double_accurate() const;

  /// "p/q", "r/s*sqrt3" or "p/q+r/s*sqrt3" (denominator 1 omitted by GMP).
  std::string str() const;

  /// Accepts the forms produced by str() plus plain integers and finite
  /// decimals ("1.5" -> 3/2). Returns nullopt on malformed input.
  static std::optional<Scalar> parse(std::string_view text);

  Scalar operator-() const { return {-rat, -sqrt3}; }
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.rat == b.rat && a.sqrt3 == b.sqrt3;
  }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
};

}  // namespace deltakin

#endif
