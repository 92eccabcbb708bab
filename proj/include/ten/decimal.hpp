#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>

namespace ten {

// Exact base-10 number stored as units * 10^-scale. All arithmetic is
// overflow-checked integer arithmetic, never binary floating point, so value
// equality is reproducible: 21.90 == 21.9, 6k == 6,000, and rounding checks
// behave the same on every platform.
//
// Canonical form: scale == 0, or units not divisible by 10. Every factory and
// operation returns canonical values, so operator== is plain member equality.
class Decimal {
 public:
  constexpr Decimal() = default;
  constexpr Decimal(std::int64_t n) : units_(n) {}  // implicit on purpose

  // Parses "[-]digits[.digits]" with no separators. Returns nullopt for any
  // other shape or for more than 18 significant digits (int64 headroom).
  static std::optional<Decimal> parse(std::string_view text);

  std::int64_t units() const { return units_; }
  std::int32_t scale() const { return scale_; }
  bool is_integer() const { return scale_ == 0; }
  bool is_zero() const { return units_ == 0; }

  // Canonical digit form: no separators, minimal digits ("65", "21.9").
  std::string to_string() const;

  // Overflow-checked; nullopt when the result does not fit.
  std::optional<Decimal> plus(const Decimal& other) const;
  std::optional<Decimal> minus(const Decimal& other) const;
  std::optional<Decimal> times(const Decimal& other) const;

  // Multiplies by 10^exp (exp may be negative). Exact in both directions.
  std::optional<Decimal> shifted_pow10(int exp) const;

  // Half-up rounding keeping `places` digits after the decimal point.
  Decimal rounded_to_places(std::int32_t places) const;

  // Half-up rounding to `digits` significant digits (digits >= 1).
  std::optional<Decimal> rounded_to_significant(int digits) const;

  int significant_digits() const;

  friend bool operator==(const Decimal& a, const Decimal& b) {
    return a.units_ == b.units_ && a.scale_ == b.scale_;
  }
  friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b);

 private:
  static std::optional<Decimal> make(__int128 units, std::int32_t scale);

  std::int64_t units_ = 0;
  std::int32_t scale_ = 0;
};

}  // namespace ten

template <>
struct std::hash<ten::Decimal> {
  std::size_t operator()(const ten::Decimal& d) const noexcept {
    return std::hash<std::int64_t>()(d.units()) * 1000003u +
           static_cast<std::size_t>(d.scale());
  }
};
