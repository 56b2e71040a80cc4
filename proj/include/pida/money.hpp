#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace pida {

/// Exact rational amount of currency (or any exact ratio).
///
/// Stored as a normalized fraction of 64-bit integers with a positive
/// denominator. Every operation is exact; an intermediate that does not fit
/// in 64 bits throws std::overflow_error instead of rounding.
class Money {
 public:
  constexpr Money() = default;
  Money(std::int64_t whole);  // NOLINT(google-explicit-constructor)
  Money(std::int64_t numerator, std::int64_t denominator);

  /// Parses "1.5", "-0.25", "7" or "3/4".
  static Money parse(std::string_view text);

  std::int64_t numerator() const { return num_; }
  std::int64_t denominator() const { return den_; }

  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }
  double to_double() const;

  /// Terminating decimals print as decimals ("1.5"), anything else as "n/d".
  std::string to_string() const;

  Money operator-() const;
  Money& operator+=(const Money& rhs);
  Money& operator-=(const Money& rhs);
  Money& operator*=(const Money& rhs);
  Money& operator/=(const Money& rhs);

  friend Money operator+(Money lhs, const Money& rhs) { return lhs += rhs; }
  friend Money operator-(Money lhs, const Money& rhs) { return lhs -= rhs; }
  friend Money operator*(Money lhs, const Money& rhs) { return lhs *= rhs; }
  friend Money operator/(Money lhs, const Money& rhs) { return lhs /= rhs; }

  friend bool operator==(const Money& lhs, const Money& rhs) {
    return lhs.num_ == rhs.num_ && lhs.den_ == rhs.den_;
  }
  friend std::strong_ordering operator<=>(const Money& lhs, const Money& rhs);

 private:
  static Money from_wide(__int128 num, __int128 den);

  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

Money min(const Money& a, const Money& b);
Money max(const Money& a, const Money& b);

std::ostream& operator<<(std::ostream& os, const Money& m);

}  // namespace pida
