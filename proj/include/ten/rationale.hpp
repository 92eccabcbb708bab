#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "ten/decimal.hpp"

namespace ten {

// One entry of the "Numbers Mentioned" list: the raw snippet as it appears in
// the article ("$142", "May 28, 1985") plus a short description.
struct NumberMention {
  std::string description;
  std::string raw;

  bool operator==(const NumberMention&) const = default;
};

// Structured rationale with the four fixed sections: Topic, Entities
// Mentioned, Numbers Mentioned, Reasoning steps. `reasoning` holds the body
// of the last section without the closing sentence; render() always appends
// "Therefore, the numeral in the headline should be {N}." with N in canonical
// digit form.
struct TenRationale {
  std::string topic;
  std::vector<std::string> entities;
  std::vector<NumberMention> numbers;
  std::string reasoning;
  Decimal final_numeral;

  bool operator==(const TenRationale&) const = default;
};

// Serializes to the canonical template:
//
//   **Topic the headline should focus on**
//   ...
//
//   **Entities Mentioned**
//   1. ...
//
//   **Numbers Mentioned**
//   1. raw (description)
//
//   **Reasoning steps**
//   ...
//
//   Therefore, the numeral in the headline should be {N}.
//
// Throws ValidationError when a section is empty or a field contains a line
// that would parse as a section header.
std::string render(const TenRationale& rationale);

// Inverse of render(). Tolerates the header variants that occur in real model
// output ("**Entitiess Mentioned**", "**Reasoning Steps**", a trailing colon)
// but is strict about section order and presence; errors name the missing
// section. Throws ParseError.
TenRationale parse_rationale(std::string_view text);

// Pulls N out of the last occurrence of "the numeral in the headline should
// be {N}" anywhere in the text. Throws ParseError when the sentence is
// missing or its numeral is absent or ambiguous.
Decimal final_numeral(std::string_view text);

}  // namespace ten
