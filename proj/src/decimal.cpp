#include "ten/decimal.hpp"

#include <cstdlib>
#include <limits>

namespace ten {

namespace {

constexpr std::int32_t kMaxScale = 18;
constexpr std::int64_t kMaxUnits = std::numeric_limits<std::int64_t>::max();

__int128 pow10_128(std::int32_t exp) {
  __int128 p = 1;
  for (std::int32_t i = 0; i < exp; ++i) p *= 10;
  return p;
}

}  // namespace

std::optional<Decimal> Decimal::make(__int128 units, std::int32_t scale) {
  while (scale > 0 && units % 10 == 0) {
    units /= 10;
    --scale;
  }
  if (units == 0) scale = 0;
  if (scale < 0 || scale > kMaxScale) return std::nullopt;
  if (units > kMaxUnits || units < -static_cast<__int128>(kMaxUnits)) {
    return std::nullopt;
  }
  Decimal d;
  d.units_ = static_cast<std::int64_t>(units);
  d.scale_ = scale;
  return d;
}

std::optional<Decimal> Decimal::parse(std::string_view text) {
  if (text.empty()) return std::nullopt;
  bool negative = false;
  std::size_t i = 0;
  if (text[0] == '-') {
    negative = true;
    i = 1;
  }
  __int128 units = 0;
  std::int32_t scale = 0;
  bool seen_int_digit = false;
  bool seen_point = false;
  bool seen_fraction_digit = false;
  bool significant = false;  // past leading zeros
  int sig_digits = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      if (seen_point)
        seen_fraction_digit = true;
      else
        seen_int_digit = true;
      if (c != '0') significant = true;
      if (significant) ++sig_digits;
      if (sig_digits > 18) return std::nullopt;
      units = units * 10 + (c - '0');
      if (seen_point) ++scale;
    } else if (c == '.' && !seen_point && seen_int_digit) {
      seen_point = true;
    } else {
      return std::nullopt;
    }
  }
  if (!seen_int_digit) return std::nullopt;
  if (seen_point && !seen_fraction_digit) return std::nullopt;
  if (negative) units = -units;
  return make(units, scale);
}

std::string Decimal::to_string() const {
  std::int64_t abs_units = units_ < 0 ? -units_ : units_;
  std::string digits = std::to_string(abs_units);
  std::string out;
  if (scale_ == 0) {
    out = digits;
  } else {
    if (static_cast<std::int32_t>(digits.size()) <= scale_) {
      digits.insert(0, static_cast<std::size_t>(scale_) - digits.size() + 1,
                    '0');
    }
    std::size_t point = digits.size() - static_cast<std::size_t>(scale_);
    out = digits.substr(0, point) + "." + digits.substr(point);
  }
  if (units_ < 0) out.insert(0, 1, '-');
  return out;
}

std::optional<Decimal> Decimal::plus(const Decimal& other) const {
  std::int32_t scale = std::max(scale_, other.scale_);
  __int128 a = static_cast<__int128>(units_) * pow10_128(scale - scale_);
  __int128 b =
      static_cast<__int128>(other.units_) * pow10_128(scale - other.scale_);
  return make(a + b, scale);
}

std::optional<Decimal> Decimal::minus(const Decimal& other) const {
  std::int32_t scale = std::max(scale_, other.scale_);
  __int128 a = static_cast<__int128>(units_) * pow10_128(scale - scale_);
  __int128 b =
      static_cast<__int128>(other.units_) * pow10_128(scale - other.scale_);
  return make(a - b, scale);
}

std::optional<Decimal> Decimal::times(const Decimal& other) const {
  // |units| <= 2^63 on both sides, so the product fits __int128.
  __int128 p = static_cast<__int128>(units_) * other.units_;
  return make(p, scale_ + other.scale_);
}

std::optional<Decimal> Decimal::shifted_pow10(int exp) const {
  if (exp >= 0) {
    if (exp > 27) return std::nullopt;
    return make(static_cast<__int128>(units_) * pow10_128(exp), scale_);
  }
  if (-exp > 27) return std::nullopt;
  return make(units_, scale_ + (-exp));
}

Decimal Decimal::rounded_to_places(std::int32_t places) const {
  if (places < 0) places = 0;
  if (scale_ <= places) return *this;
  std::int32_t drop = scale_ - places;
  __int128 div = pow10_128(drop);
  __int128 u = units_;
  __int128 q = u / div;
  __int128 r = u % div;
  if (r < 0) r = -r;
  if (r * 2 >= div) q += (u < 0 ? -1 : 1);
  // Magnitude only shrinks, so make() cannot fail here.
  return *make(q, places);
}

int Decimal::significant_digits() const {
  std::int64_t u = units_ < 0 ? -units_ : units_;
  int n = 1;
  while (u >= 10) {
    u /= 10;
    ++n;
  }
  return n;
}

std::optional<Decimal> Decimal::rounded_to_significant(int digits) const {
  if (digits < 1) return std::nullopt;
  int have = significant_digits();
  if (have <= digits) return *this;
  std::int32_t drop = have - digits;
  __int128 div = pow10_128(drop);
  __int128 u = units_;
  __int128 q = u / div;
  __int128 r = u % div;
  if (r < 0) r = -r;
  if (r * 2 >= div) q += (u < 0 ? -1 : 1);
  return make(q * div, scale_);
}

std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
  std::int32_t scale = std::max(a.scale_, b.scale_);
  __int128 ua = static_cast<__int128>(a.units_) * pow10_128(scale - a.scale_);
  __int128 ub = static_cast<__int128>(b.units_) * pow10_128(scale - b.scale_);
  if (ua < ub) return std::strong_ordering::less;
  if (ua > ub) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace ten
