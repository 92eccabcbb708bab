#include "ten/numeral.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <unordered_map>
#include <unordered_set>

#include "ten/errors.hpp"

namespace ten {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ascii_letter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
bool is_ascii_alnum(char c) { return is_digit(c) || is_ascii_letter(c); }

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

// Spelled-out cardinals: zero..twenty plus the tens thirty..ninety.
const std::unordered_map<std::string, int>& word_lexicon() {
  static const std::unordered_map<std::string, int> lex = {
      {"zero", 0},     {"one", 1},        {"two", 2},       {"three", 3},
      {"four", 4},     {"five", 5},       {"six", 6},       {"seven", 7},
      {"eight", 8},    {"nine", 9},       {"ten", 10},      {"eleven", 11},
      {"twelve", 12},  {"thirteen", 13},  {"fourteen", 14}, {"fifteen", 15},
      {"sixteen", 16}, {"seventeen", 17}, {"eighteen", 18}, {"nineteen", 19},
      {"twenty", 20},  {"thirty", 30},    {"forty", 40},    {"fifty", 50},
      {"sixty", 60},   {"seventy", 70},   {"eighty", 80},   {"ninety", 90},
  };
  return lex;
}

bool is_tens_word(int value) { return value >= 20 && value % 10 == 0; }

// Reads the run of ASCII letters starting at `pos`.
std::string_view letter_run(std::string_view text, std::size_t pos) {
  std::size_t end = pos;
  while (end < text.size() && is_ascii_letter(text[end])) ++end;
  return text.substr(pos, end - pos);
}

struct DigitScan {
  std::string mantissa;  // separators stripped, decimal point kept
  std::size_t end = 0;   // one past the last consumed character
};

// Consumes digits starting at `pos`: a leading digit run, then any number of
// ",ddd" groups (comma only counts as a separator when followed by exactly
// three digits and no fourth), then an optional ".digits" fraction.
DigitScan scan_digits(std::string_view text, std::size_t pos) {
  DigitScan scan;
  std::size_t i = pos;
  while (i < text.size() && is_digit(text[i])) {
    scan.mantissa += text[i];
    ++i;
  }
  while (i < text.size() && text[i] == ',') {
    // a comma separates only when followed by exactly three digits
    if (i + 3 >= text.size() || !is_digit(text[i + 1]) ||
        !is_digit(text[i + 2]) || !is_digit(text[i + 3])) {
      break;
    }
    if (i + 4 < text.size() && is_digit(text[i + 4])) break;
    scan.mantissa.append(text.substr(i + 1, 3));
    i += 4;
  }
  if (i + 1 < text.size() && text[i] == '.' && is_digit(text[i + 1])) {
    scan.mantissa += '.';
    ++i;
    while (i < text.size() && is_digit(text[i])) {
      scan.mantissa += text[i];
      ++i;
    }
  }
  scan.end = i;
  return scan;
}

// Attached magnitude suffix at `pos`, valid only when the next character is
// not a letter or digit ("10km" has no suffix, "$400m" does).
struct SuffixScan {
  Multiplier multiplier = Multiplier::one;
  std::size_t len = 0;
};

SuffixScan scan_suffix(std::string_view text, std::size_t pos) {
  SuffixScan s;
  auto boundary = [&](std::size_t after) {
    return after >= text.size() || !is_ascii_alnum(text[after]);
  };
  if (pos < text.size()) {
    if (text.compare(pos, 2, "bn") == 0 && boundary(pos + 2)) {
      s.multiplier = Multiplier::billion;
      s.len = 2;
      return s;
    }
    char c = text[pos];
    if ((c == 'k' || c == 'K') && boundary(pos + 1)) {
      s.multiplier = Multiplier::thousand;
      s.len = 1;
    } else if ((c == 'm' || c == 'M') && boundary(pos + 1)) {
      s.multiplier = Multiplier::million;
      s.len = 1;
    } else if (c == 'B' && boundary(pos + 1)) {
      s.multiplier = Multiplier::billion;
      s.len = 1;
    }
  }
  return s;
}

}  // namespace

std::int64_t multiplier_factor(Multiplier m) {
  switch (m) {
    case Multiplier::one:
      return 1;
    case Multiplier::thousand:
      return 1000;
    case Multiplier::million:
      return 1000000;
    case Multiplier::billion:
      return 1000000000;
  }
  return 1;
}

Decimal normalize(const Numeral& n) {
  auto scaled = n.value.times(Decimal(multiplier_factor(n.multiplier)));
  if (!scaled) {
    throw ValidationError("numeral magnitude out of range: " + n.surface);
  }
  return *scaled;
}

std::string digit_string(const Numeral& n) {
  if (n.is_word) return n.value.to_string();
  std::string out;
  for (char c : n.surface.substr(0, n.mantissa_len)) {
    if (c != ',') out += c;
  }
  return out;
}

std::vector<Numeral> extract_numerals(std::string_view text) {
  std::vector<Numeral> out;
  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (is_digit(c)) {
      DigitScan scan = scan_digits(text, i);
      auto value = Decimal::parse(scan.mantissa);
      std::size_t end = scan.end;
      if (!value) {
        // Too many digits to represent exactly; skip the whole run.
        i = end;
        continue;
      }
      Numeral n;
      n.begin = i;
      n.mantissa_len = end - i;
      SuffixScan suffix = scan_suffix(text, end);
      end += suffix.len;
      n.end = end;
      n.surface = std::string(text.substr(n.begin, n.end - n.begin));
      n.value = *value;
      n.multiplier = suffix.multiplier;
      out.push_back(std::move(n));
      i = end;
      continue;
    }
    if (is_ascii_letter(c)) {
      bool at_boundary = (i == 0) || !is_ascii_letter(text[i - 1]);
      std::string_view run = letter_run(text, i);
      if (!at_boundary) {
        i += run.size();
        continue;
      }
      const auto& lex = word_lexicon();
      auto it = lex.find(lower(run));
      if (it == lex.end()) {
        i += run.size();
        continue;
      }
      std::int64_t value = it->second;
      std::size_t end = i + run.size();
      // Hyphenated compound: tens word + unit ("twenty-one").
      if (is_tens_word(it->second) && end < text.size() && text[end] == '-') {
        std::string_view unit = letter_run(text, end + 1);
        auto uit = lex.find(lower(unit));
        if (uit != lex.end() && uit->second >= 1 && uit->second <= 9) {
          value += uit->second;
          end += 1 + unit.size();
        }
      }
      // Optional scale word: "nine hundred", "five thousand", "two million".
      Multiplier mult = Multiplier::one;
      if (end < text.size() && text[end] == ' ') {
        std::string scale = lower(letter_run(text, end + 1));
        std::size_t scale_len = scale.size();
        bool word_after =
            end + 1 + scale_len < text.size() &&
            is_ascii_letter(text[end + 1 + scale_len]);
        if (!word_after) {
          if (scale == "hundred") {
            value *= 100;
            end += 1 + scale_len;
          } else if (scale == "thousand") {
            mult = Multiplier::thousand;
            end += 1 + scale_len;
          } else if (scale == "million") {
            mult = Multiplier::million;
            end += 1 + scale_len;
          }
        }
      }
      if (end < text.size() && is_ascii_letter(text[end])) {
        // e.g. "nineX" — not a clean word boundary, skip the run.
        i += run.size();
        continue;
      }
      Numeral n;
      n.begin = i;
      n.end = end;
      n.surface = std::string(text.substr(i, end - i));
      n.value = Decimal(value);
      n.multiplier = mult;
      n.is_word = true;
      n.mantissa_len = n.surface.size();
      out.push_back(std::move(n));
      i = end;
      continue;
    }
    ++i;
  }
  return out;
}

bool numerals_match(std::string_view generated_headline,
                    const Decimal& reference_numeral) {
  auto numerals = extract_numerals(generated_headline);
  if (numerals.empty()) return false;
  const Numeral& first = numerals.front();
  auto scaled = first.value.times(Decimal(multiplier_factor(first.multiplier)));
  if (scaled && *scaled == reference_numeral) return true;
  return digit_string(first) == reference_numeral.to_string();
}

std::string mask_numeral(std::string_view headline) {
  auto numerals = extract_numerals(headline);
  if (numerals.size() != 1) {
    throw ValidationError("mask_numeral: expected exactly one numeral, found " +
                          std::to_string(numerals.size()));
  }
  const Numeral& n = numerals.front();
  std::string out;
  out += headline.substr(0, n.begin);
  out += "____";
  out += headline.substr(n.begin + n.mantissa_len);
  return out;
}

std::optional<OperationType> parse_operation(std::string_view label) {
  for (OperationType op : kAllOperations) {
    if (label == to_string(op)) return op;
  }
  return std::nullopt;
}

std::string_view to_string(OperationType op) {
  switch (op) {
    case OperationType::copy:
      return "Copy";
    case OperationType::trans:
      return "Trans";
    case OperationType::paraphrase:
      return "Paraphrase";
    case OperationType::round:
      return "Round";
    case OperationType::subtract:
      return "Subtract";
    case OperationType::add:
      return "Add";
    case OperationType::span:
      return "Span";
    case OperationType::divide:
      return "Divide";
    case OperationType::multiply:
      return "Multiply";
  }
  return "?";
}

std::set<OperationType> infer_operations(
    const std::vector<Decimal>& article_numerals, const Decimal& target) {
  if (article_numerals.empty()) {
    throw ValidationError("infer_operations: article numeral set is empty");
  }
  std::set<OperationType> out;
  const auto& values = article_numerals;

  for (const Decimal& v : values) {
    if (v == target) {
      out.insert(OperationType::copy);
      break;
    }
  }

  // Paraphrase: the headline keeps the mantissa and shifts the magnitude into
  // a suffix or unit word ("30,000" written as "30K").
  for (int exp : {3, 6, 9}) {
    auto scaled = target.shifted_pow10(exp);
    if (!scaled) continue;
    if (std::find(values.begin(), values.end(), *scaled) != values.end()) {
      out.insert(OperationType::paraphrase);
      break;
    }
  }

  for (std::size_t i = 0; i < values.size(); ++i) {
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (i == j) continue;
      const Decimal& a = values[i];
      const Decimal& b = values[j];
      if (auto sum = a.plus(b); sum && *sum == target) {
        out.insert(OperationType::add);
      }
      if (auto diff = a.minus(b); diff && *diff == target) {
        out.insert(OperationType::subtract);
      }
      if (auto prod = a.times(b); prod && *prod == target) {
        out.insert(OperationType::multiply);
      }
      // a / b == target, checked without division: a == target * b.
      if (!b.is_zero()) {
        if (auto tb = target.times(b); tb && a == *tb) {
          out.insert(OperationType::divide);
        }
      }
    }
  }

  // Round: candidates are the article values plus their power-of-ten
  // rescalings, so paraphrase-composed rounds like 64,728 -> 64.728 -> 65 are
  // found. A witness must actually change the value.
  std::vector<Decimal> pool = values;
  for (const Decimal& v : values) {
    for (int exp : {3, 6, 9, -3, -6, -9}) {
      if (auto shifted = v.shifted_pow10(exp)) pool.push_back(*shifted);
    }
  }
  for (const Decimal& v : pool) {
    if (v == target) continue;
    bool hit = false;
    for (std::int32_t places = 0; places < v.scale() && !hit; ++places) {
      if (v.rounded_to_places(places) == target) hit = true;
    }
    for (int digits = 1; digits <= 3 && !hit; ++digits) {
      auto rounded = v.rounded_to_significant(digits);
      if (rounded && *rounded == target) hit = true;
    }
    if (hit) {
      out.insert(OperationType::round);
      break;
    }
  }

  return out;
}

}  // namespace ten
