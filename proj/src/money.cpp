#include "pida/money.hpp"

#include <cctype>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace pida {

namespace {

using i128 = __int128;

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool fits64(i128 v) {
  return v >= std::numeric_limits<std::int64_t>::min() &&
         v <= std::numeric_limits<std::int64_t>::max();
}

}  // namespace

Money::Money(std::int64_t whole) : num_(whole), den_(1) {}

Money::Money(std::int64_t numerator, std::int64_t denominator) {
  if (denominator == 0) throw std::domain_error("Money: zero denominator");
  *this = from_wide(numerator, denominator);
}

Money Money::from_wide(i128 num, i128 den) {
  if (den == 0) throw std::domain_error("Money: division by zero");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  i128 g = gcd128(num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
  if (num == 0) den = 1;
  if (!fits64(num) || !fits64(den)) throw std::overflow_error("Money: 64-bit overflow");
  Money m;
  m.num_ = static_cast<std::int64_t>(num);
  m.den_ = static_cast<std::int64_t>(den);
  return m;
}

Money Money::parse(std::string_view text) {
  auto fail = [&]() -> Money {
    throw std::invalid_argument("Money: cannot parse '" + std::string(text) + "'");
  };
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  std::size_t end = text.size();
  while (end > i && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  text = text.substr(i, end - i);
  if (text.empty()) return fail();

  bool negative = false;
  std::size_t pos = 0;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    pos = 1;
  }

  auto read_digits = [&](std::size_t& p, i128& value, int& count) {
    count = 0;
    while (p < text.size() && std::isdigit(static_cast<unsigned char>(text[p]))) {
      value = value * 10 + (text[p] - '0');
      if (value > std::numeric_limits<std::int64_t>::max()) fail();
      ++p;
      ++count;
    }
  };

  i128 num = 0;
  i128 den = 1;
  int digits = 0;
  read_digits(pos, num, digits);
  if (pos < text.size() && text[pos] == '/') {
    if (digits == 0) return fail();
    ++pos;
    i128 d = 0;
    read_digits(pos, d, digits);
    if (digits == 0 || d == 0) return fail();
    den = d;
  } else if (pos < text.size() && text[pos] == '.') {
    ++pos;
    int frac_digits = 0;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
      num = num * 10 + (text[pos] - '0');
      den *= 10;
      if (num > std::numeric_limits<std::int64_t>::max() ||
          den > std::numeric_limits<std::int64_t>::max())
        fail();
      ++pos;
      ++frac_digits;
    }
    if (digits == 0 && frac_digits == 0) return fail();
  } else if (digits == 0) {
    return fail();
  }
  if (pos != text.size()) return fail();
  return from_wide(negative ? -num : num, den);
}

double Money::to_double() const {
  return static_cast<double>(num_) / static_cast<double>(den_);
}

std::string Money::to_string() const {
  std::int64_t d = den_;
  int twos = 0;
  int fives = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++twos;
  }
  while (d % 5 == 0) {
    d /= 5;
    ++fives;
  }
  if (d != 1 || std::max(twos, fives) > 18) {
    return std::to_string(num_) + "/" + std::to_string(den_);
  }
  const int places = std::max(twos, fives);
  i128 scale = 1;
  for (int k = 0; k < places; ++k) scale *= 10;
  i128 scaled = static_cast<i128>(num_) * (scale / den_);
  const bool negative = scaled < 0;
  if (negative) scaled = -scaled;
  i128 whole = scaled / scale;
  i128 frac = scaled % scale;
  std::string out = negative ? "-" : "";
  out += std::to_string(static_cast<long long>(whole));
  if (places > 0) {
    std::string f = std::to_string(static_cast<long long>(frac));
    out += '.';
    out += std::string(static_cast<std::size_t>(places) - f.size(), '0');
    out += f;
  }
  return out;
}

Money Money::operator-() const {
  return from_wide(-static_cast<i128>(num_), den_);
}

Money& Money::operator+=(const Money& rhs) {
  if (den_ == rhs.den_) {
    *this = from_wide(static_cast<i128>(num_) + rhs.num_, den_);
  } else {
    *this = from_wide(static_cast<i128>(num_) * rhs.den_ + static_cast<i128>(rhs.num_) * den_,
                      static_cast<i128>(den_) * rhs.den_);
  }
  return *this;
}

Money& Money::operator-=(const Money& rhs) { return *this += -rhs; }

Money& Money::operator*=(const Money& rhs) {
  *this = from_wide(static_cast<i128>(num_) * rhs.num_, static_cast<i128>(den_) * rhs.den_);
  return *this;
}

Money& Money::operator/=(const Money& rhs) {
  *this = from_wide(static_cast<i128>(num_) * rhs.den_, static_cast<i128>(den_) * rhs.num_);
  return *this;
}

std::strong_ordering operator<=>(const Money& lhs, const Money& rhs) {
  const i128 l = static_cast<i128>(lhs.num_) * rhs.den_;
  const i128 r = static_cast<i128>(rhs.num_) * lhs.den_;
  if (l < r) return std::strong_ordering::less;
  if (l > r) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

Money min(const Money& a, const Money& b) { return b < a ? b : a; }
Money max(const Money& a, const Money& b) { return a < b ? b : a; }

std::ostream& operator<<(std::ostream& os, const Money& m) { return os << m.to_string(); }

}  // namespace pida
