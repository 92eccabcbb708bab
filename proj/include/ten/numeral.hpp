#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ten/decimal.hpp"

namespace ten {

// Magnitude carried by an attached suffix ("k", "M", "bn") or by a scale word
// following a spelled-out cardinal ("five thousand").
enum class Multiplier { one, thousand, million, billion };

std::int64_t multiplier_factor(Multiplier m);

// One numeric mention in a piece of text. The surface excludes adjacent
// currency symbols and percent signs but includes an attached magnitude
// suffix, so "$400m" yields surface "400m". `value` is the parsed mantissa;
// the full magnitude is normalize() = value * multiplier.
struct Numeral {
  std::string surface;
  Decimal value;
  Multiplier multiplier = Multiplier::one;
  std::size_t begin = 0;  // byte offsets into the source text, [begin, end)
  std::size_t end = 0;
  bool is_word = false;
  // Length of the surface prefix before an attached magnitude suffix; equals
  // surface.size() when there is no suffix. Masking replaces only this part.
  std::size_t mantissa_len = 0;
};

// Full magnitude of a mention: mantissa times its multiplier.
Decimal normalize(const Numeral& n);

// Mantissa digits with thousands separators stripped and the suffix dropped
// ("30K" -> "30", "6,000" -> "6000"). Word numerals use the canonical digit
// form of their value ("nine" -> "9").
std::string digit_string(const Numeral& n);

// Finds every numeric mention left to right, non-overlapping, each maximal:
//   - digit strings with optional thousands separators and a decimal point
//   - an attached magnitude suffix: k/K (thousand), m/M (million), bn/B
//     (billion), only when not followed by another letter or digit
//   - spelled-out cardinals zero..twenty and tens thirty..ninety, including
//     hyphenated compounds ("twenty-one") and a following scale word
//     ("hundred", "thousand", "million")
// Currency symbols and '%' next to a numeral are not part of the surface but
// never block extraction.
std::vector<Numeral> extract_numerals(std::string_view text);

// True iff the first numeral extracted from the generated headline matches
// the reference: equal normalized value, or equal digit string (so "30K"
// matches reference 30). False when the headline has no numeral.
bool numerals_match(std::string_view generated_headline,
                    const Decimal& reference_numeral);

// Replaces the single numeral's mantissa with exactly "____", keeping
// everything else: "Cost $142." -> "Cost $____.", "30K Walmart" -> "____K
// Walmart". Throws ValidationError unless the headline contains exactly one
// numeral.
std::string mask_numeral(std::string_view headline);

// The nine operation labels relating an article's numbers to the headline
// numeral. Enum order matches the reporting column order.
enum class OperationType {
  copy,
  trans,
  paraphrase,
  round,
  subtract,
  add,
  span,
  divide,
  multiply,
};

inline constexpr OperationType kAllOperations[] = {
    OperationType::copy,     OperationType::trans, OperationType::paraphrase,
    OperationType::round,    OperationType::subtract, OperationType::add,
    OperationType::span,     OperationType::divide,   OperationType::multiply,
};

std::optional<OperationType> parse_operation(std::string_view label);
std::string_view to_string(OperationType op);

// Brute-force derivation search: which operations could produce `target` from
// the article's numbers?
//   Copy       target appears in the set
//   Add/Subtract/Multiply/Divide
//              some ordered pair of mentions yields target exactly
//   Round      rounding some value (or a power-of-ten rescaling of it, the
//              paraphrase composition) to 1-3 significant digits or to a
//              decimal place yields target, with an actual change of value
//   Paraphrase target times 10^{3,6,9} appears in the set
// Trans and Span are annotation-only and never inferred. Throws
// ValidationError when article_numerals is empty.
std::set<OperationType> infer_operations(
    const std::vector<Decimal>& article_numerals, const Decimal& target);

}  // namespace ten
