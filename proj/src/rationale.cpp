#include "ten/rationale.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "ten/errors.hpp"
#include "ten/numeral.hpp"

namespace ten {

namespace {

constexpr std::string_view kClosingPattern =
    "the numeral in the headline should be";

enum class Section { topic, entities, numbers, reasoning };

std::string_view section_name(Section s) {
  switch (s) {
    case Section::topic:
      return "Topic the headline should focus on";
    case Section::entities:
      return "Entities Mentioned";
    case Section::numbers:
      return "Numbers Mentioned";
    case Section::reasoning:
      return "Reasoning steps";
  }
  return "?";
}

std::string trim(std::string_view s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) {
    c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  return out;
}

std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t nl = text.find('\n', pos);
    if (nl == std::string_view::npos) {
      lines.emplace_back(text.substr(pos));
      break;
    }
    lines.emplace_back(text.substr(pos, nl - pos));
    pos = nl + 1;
  }
  return lines;
}

// Recognizes a section header line, tolerating extra '*', a trailing colon
// (inside or outside the bold markers), capitalization, and the "Entitiess"
// double-s that shows up in model output.
std::optional<Section> match_header(const std::string& line) {
  std::string t = trim(line);
  if (t.size() < 4 || t.compare(0, 2, "**") != 0) return std::nullopt;
  // strip asterisks at both ends, then any trailing colon, then re-trim
  std::size_t b = 0;
  std::size_t e = t.size();
  while (b < e && t[b] == '*') ++b;
  while (e > b && (t[e - 1] == '*' || t[e - 1] == ':')) --e;
  std::string inner = lower(trim(t.substr(b, e - b)));
  if (!inner.empty() && inner.back() == ':') inner.pop_back();
  inner = trim(inner);
  if (inner == "topic the headline should focus on") return Section::topic;
  if (inner == "entities mentioned" || inner == "entitiess mentioned") {
    return Section::entities;
  }
  if (inner == "numbers mentioned") return Section::numbers;
  if (inner == "reasoning steps") return Section::reasoning;
  return std::nullopt;
}

// Strips a "1. " / "2) " list prefix if present.
std::string strip_list_prefix(const std::string& line) {
  std::size_t i = 0;
  while (i < line.size() && line[i] >= '0' && line[i] <= '9') ++i;
  if (i > 0 && i < line.size() && (line[i] == '.' || line[i] == ')')) {
    return trim(line.substr(i + 1));
  }
  return trim(line);
}

// Splits "raw (description)" by the parenthesized group that closes the line.
NumberMention parse_number_line(const std::string& item) {
  NumberMention m;
  if (!item.empty() && item.back() == ')') {
    int depth = 0;
    for (std::size_t i = item.size(); i-- > 0;) {
      if (item[i] == ')') ++depth;
      if (item[i] == '(') {
        --depth;
        if (depth == 0) {
          m.raw = trim(item.substr(0, i));
          m.description = trim(item.substr(i + 1, item.size() - i - 2));
          if (!m.raw.empty()) return m;
          break;  // "(...)" with nothing before it: treat whole line as raw
        }
      }
    }
  }
  m.raw = item;
  m.description.clear();
  return m;
}

std::string drop_trailing_blanks(std::vector<std::string> lines) {
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();
  std::size_t skip = 0;
  while (skip < lines.size() && trim(lines[skip]).empty()) ++skip;
  std::string out;
  for (std::size_t i = skip; i < lines.size(); ++i) {
    if (i > skip) out += '\n';
    out += lines[i];
  }
  return out;
}

// Case-insensitive search for the closing pattern; returns the offset of the
// last occurrence or npos.
std::size_t find_last_closing(std::string_view text) {
  std::string haystack = lower(text);
  std::string needle(kClosingPattern);
  std::size_t found = haystack.rfind(needle);
  return found;
}

Decimal parse_closing_numeral(std::string_view text, std::size_t pattern_pos) {
  std::size_t after = pattern_pos + kClosingPattern.size();
  std::size_t line_end = text.find('\n', after);
  if (line_end == std::string_view::npos) line_end = text.size();
  std::string_view rest = text.substr(after, line_end - after);
  auto numerals = extract_numerals(rest);
  if (numerals.empty()) {
    throw ParseError("closing sentence has no numeral");
  }
  if (numerals.size() > 1) {
    throw ParseError("closing sentence numeral is ambiguous");
  }
  return normalize(numerals.front());
}

void check_field_lines(const std::string& text, const char* field) {
  for (const auto& line : split_lines(text)) {
    if (match_header(line)) {
      throw ValidationError(std::string(field) +
                            " contains a section header line");
    }
  }
}

}  // namespace

std::string render(const TenRationale& r) {
  if (trim(r.topic).empty()) throw ValidationError("rationale topic is empty");
  if (r.entities.empty()) throw ValidationError("rationale has no entities");
  if (r.numbers.empty()) throw ValidationError("rationale has no numbers");
  if (trim(r.reasoning).empty()) {
    throw ValidationError("rationale reasoning is empty");
  }
  for (const auto& e : r.entities) {
    if (trim(e).empty()) throw ValidationError("empty entity entry");
  }
  for (const auto& n : r.numbers) {
    if (trim(n.raw).empty()) throw ValidationError("empty number entry");
  }
  check_field_lines(r.topic, "topic");
  check_field_lines(r.reasoning, "reasoning");

  std::ostringstream out;
  out << "**" << section_name(Section::topic) << "**\n" << r.topic << "\n\n";
  out << "**" << section_name(Section::entities) << "**\n";
  for (std::size_t i = 0; i < r.entities.size(); ++i) {
    out << (i + 1) << ". " << r.entities[i] << "\n";
  }
  out << "\n**" << section_name(Section::numbers) << "**\n";
  for (std::size_t i = 0; i < r.numbers.size(); ++i) {
    out << (i + 1) << ". " << r.numbers[i].raw;
    if (!r.numbers[i].description.empty()) {
      out << " (" << r.numbers[i].description << ")";
    }
    out << "\n";
  }
  out << "\n**" << section_name(Section::reasoning) << "**\n"
      << r.reasoning << "\n\n"
      << "Therefore, the numeral in the headline should be "
      << r.final_numeral.to_string() << ".";
  return out.str();
}

TenRationale parse_rationale(std::string_view text) {
  auto lines = split_lines(text);

  // Locate headers in order; anything before the first header is rejected,
  // content lines are attached to the current section.
  const Section order[] = {Section::topic, Section::entities, Section::numbers,
                           Section::reasoning};
  std::vector<std::vector<std::string>> content(4);
  int current = -1;
  for (const auto& line : lines) {
    auto header = match_header(line);
    if (header) {
      int idx = static_cast<int>(*header);
      if (idx != current + 1) {
        if (idx <= current) {
          throw ParseError(std::string("duplicate or out-of-order section: ") +
                           std::string(section_name(*header)));
        }
        throw ParseError(std::string("missing section: ") +
                         std::string(section_name(order[current + 1])));
      }
      current = idx;
      continue;
    }
    if (current < 0) {
      if (!trim(line).empty()) {
        throw ParseError("text before first section header");
      }
      continue;
    }
    content[static_cast<std::size_t>(current)].push_back(line);
  }
  if (current < 3) {
    throw ParseError(std::string("missing section: ") +
                     std::string(section_name(order[current + 1])));
  }

  TenRationale r;
  r.topic = drop_trailing_blanks(content[0]);
  if (r.topic.empty()) throw ParseError("empty section: Topic");

  for (const auto& line : content[1]) {
    std::string item = strip_list_prefix(line);
    if (!item.empty()) r.entities.push_back(item);
  }
  if (r.entities.empty()) throw ParseError("empty section: Entities Mentioned");

  for (const auto& line : content[2]) {
    std::string item = strip_list_prefix(line);
    if (!item.empty()) r.numbers.push_back(parse_number_line(item));
  }
  if (r.numbers.empty()) throw ParseError("empty section: Numbers Mentioned");

  std::string reasoning_full = drop_trailing_blanks(content[3]);
  std::size_t closing = find_last_closing(reasoning_full);
  if (closing == std::string::npos) {
    throw ParseError("missing closing sentence in Reasoning steps");
  }
  r.final_numeral = parse_closing_numeral(reasoning_full, closing);

  // The closing sentence occupies its own line; the body is what precedes it.
  std::size_t line_start = reasoning_full.rfind('\n', closing);
  std::string body = line_start == std::string::npos
                         ? std::string()
                         : reasoning_full.substr(0, line_start);
  r.reasoning = drop_trailing_blanks(split_lines(body));
  if (r.reasoning.empty()) {
    throw ParseError("empty reasoning body before closing sentence");
  }
  return r;
}

Decimal final_numeral(std::string_view text) {
  std::size_t closing = find_last_closing(text);
  if (closing == std::string_view::npos) {
    throw ParseError("closing sentence not found");
  }
  return parse_closing_numeral(text, closing);
}

}  // namespace ten
