#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

#include <Eigen/Core>

namespace mfd {

/// Exact rational number p/q with q > 0 and gcd(p, q) = 1.
///
/// Arithmetic runs through 128-bit intermediates; a result whose reduced
/// numerator or denominator does not fit in 64 bits throws
/// `Error{Capacity, "rational.Overflow"}`.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t num, std::int64_t den);

  std::int64_t num() const noexcept { return num_; }
  std::int64_t den() const noexcept { return den_; }

  bool is_integer() const noexcept { return den_ == 1; }
  bool is_zero() const noexcept { return num_ == 0; }

  /// Largest integer not exceeding the value.
  std::int64_t floor() const noexcept;

  /// Representative of the class mod 1, in [0, 1).
  Rational frac() const;

  double to_double() const noexcept { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "p/q" always, including "0/1" and "3/1".
  std::string str() const;

  /// Accepts "p/q" or a bare integer "p". Denominator must be positive.
  static Rational parse(std::string_view text);

  Rational operator-() const;
  Rational& operator+=(const Rational& rhs);
  Rational& operator-=(const Rational& rhs);
  Rational& operator*=(const Rational& rhs);
  Rational& operator/=(const Rational& rhs);

  friend Rational operator+(Rational lhs, const Rational& rhs) { return lhs += rhs; }
  friend Rational operator-(Rational lhs, const Rational& rhs) { return lhs -= rhs; }
  friend Rational operator*(Rational lhs, const Rational& rhs) { return lhs *= rhs; }
  friend Rational operator/(Rational lhs, const Rational& rhs) { return lhs /= rhs; }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

 private:
  static Rational from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Element of Q/Z, stored as its representative in [0, 1).
class QZ {
 public:
  QZ() = default;
  explicit QZ(const Rational& value) : value_(value.frac()) {}
  QZ(std::int64_t num, std::int64_t den) : value_(Rational(num, den).frac()) {}

  const Rational& value() const noexcept { return value_; }
  bool is_zero() const noexcept { return value_.is_zero(); }
  double to_double() const noexcept { return value_.to_double(); }

  QZ operator-() const { return QZ(-value_); }
  QZ& operator+=(const QZ& rhs) { value_ = (value_ + rhs.value_).frac(); return *this; }
  QZ& operator-=(const QZ& rhs) { value_ = (value_ - rhs.value_).frac(); return *this; }
  friend QZ operator+(QZ lhs, const QZ& rhs) { return lhs += rhs; }
  friend QZ operator-(QZ lhs, const QZ& rhs) { return lhs -= rhs; }
  friend QZ operator*(std::int64_t k, const QZ& x) { return QZ(Rational(k) * x.value_); }

  friend bool operator==(const QZ&, const QZ&) = default;
  friend auto operator<=>(const QZ& lhs, const QZ& rhs) { return lhs.value_ <=> rhs.value_; }

 private:
  Rational value_;
};

std::ostream& operator<<(std::ostream& os, const QZ& x);

}  // namespace mfd

namespace Eigen {

template <>
struct NumTraits<mfd::Rational> : GenericNumTraits<mfd::Rational> {
  typedef mfd::Rational Real;
  typedef mfd::Rational NonInteger;
  typedef mfd::Rational Nested;
  enum {
    IsInteger = 0,
    IsSigned = 1,
    IsComplex = 0,
    RequireInitialization = 1,
    ReadCost = 2,
    AddCost = 8,
    MulCost = 8,
  };
  static inline Real epsilon() { return mfd::Rational(0); }
  static inline Real dummy_precision() { return mfd::Rational(0); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen
