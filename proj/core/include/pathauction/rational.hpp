#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

namespace pathauction {

/// Exact rational number with 64-bit numerator and denominator.
///
/// Values are always kept in lowest terms with a positive denominator.
/// Intermediate products are computed in 128 bits; a result that does not
/// fit back into 64 bits throws std::overflow_error instead of rounding.
class Rational {
 public:
  __extension__ using Wide = __int128;

  constexpr Rational() = default;
  Rational(std::int64_t value) : num_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(std::int64_t numerator, std::int64_t denominator);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }

  bool isInteger() const { return den_ == 1; }
  bool isPositive() const { return num_ > 0; }
  bool isZero() const { return num_ == 0; }

  double toDouble() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// "p" for integers, "p/q" otherwise.
  std::string str() const;

  /// Parses "p" or "p/q". The fraction must already be in lowest terms with
  /// q > 0; anything else throws ParseError.
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

  friend bool operator==(const Rational& lhs, const Rational& rhs) {
    return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& lhs, const Rational& rhs);

 private:
  static Rational fromWide(Wide numerator, Wide denominator);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

std::ostream& operator<<(std::ostream& os, const Rational& value);

}  // namespace pathauction

template <>
struct std::hash<pathauction::Rational> {
  std::size_t operator()(const pathauction::Rational& r) const noexcept {
    return std::hash<std::int64_t>{}(r.numerator()) * 31u ^ std::hash<std::int64_t>{}(r.denominator());
  }
};
