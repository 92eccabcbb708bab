#include "ten/corpus.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "ten/errors.hpp"

namespace ten {

namespace {

using nlohmann::ordered_json;

std::string record_prefix(std::size_t index) {
  return "record " + std::to_string(index) + ": ";
}

std::string require_string(const ordered_json& j, const char* field,
                           std::size_t index) {
  if (!j.contains(field)) {
    throw CorpusError(record_prefix(index) + "missing field: " + field);
  }
  const auto& v = j.at(field);
  if (!v.is_string()) {
    throw CorpusError(record_prefix(index) + "field " + field +
                      " must be a string");
  }
  std::string s = v.get<std::string>();
  if (s.empty()) {
    throw CorpusError(record_prefix(index) + "field " + field + " is empty");
  }
  return s;
}

Decimal numeral_from_json(const ordered_json& v, std::size_t index) {
  if (v.is_number_integer()) {
    return Decimal(v.get<std::int64_t>());
  }
  if (v.is_number_float()) {
    // nlohmann serializes doubles in shortest round-trip form; parsing that
    // string keeps values like 21.9 exact.
    auto parsed = Decimal::parse(v.dump());
    if (parsed) return *parsed;
    throw CorpusError(record_prefix(index) +
                      "correct_numeral is not exactly representable");
  }
  throw CorpusError(record_prefix(index) + "correct_numeral must be a number");
}

// The headline must actually contain the annotated numeral, either by value
// or by digit string ("30K" carries annotation 30).
bool headline_has_numeral(const std::string& headline, const Decimal& value) {
  for (const auto& n : extract_numerals(headline)) {
    auto scaled = n.value.times(Decimal(multiplier_factor(n.multiplier)));
    if (scaled && *scaled == value) return true;
    if (digit_string(n) == value.to_string()) return true;
  }
  return false;
}

std::string normalize_ws(std::string_view text) {
  std::string out;
  bool in_space = true;  // also trims leading whitespace
  for (char c : text) {
    bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r';
    if (space) {
      if (!in_space) out += ' ';
      in_space = true;
    } else {
      out += c;
      in_space = false;
    }
  }
  while (!out.empty() && out.back() == ' ') out.pop_back();
  return out;
}

}  // namespace

std::optional<Source> parse_source(std::string_view name) {
  if (name == "numhg") return Source::numhg;
  if (name == "xsum") return Source::xsum;
  if (name == "generic") return Source::generic;
  return std::nullopt;
}

std::string_view to_string(Source source) {
  switch (source) {
    case Source::numhg:
      return "numhg";
    case Source::xsum:
      return "xsum";
    case Source::generic:
      return "generic";
  }
  return "?";
}

Corpus load_corpus(const std::filesystem::path& path, Source source) {
  std::ifstream in(path);
  if (!in) {
    throw CorpusError("cannot open corpus file: " + path.string());
  }
  Corpus corpus;
  corpus.source = source;
  std::unordered_set<std::string> seen_ids;
  std::string line;
  std::size_t index = 0;
  while (std::getline(in, line)) {
    ++index;
    if (line.empty()) continue;
    ordered_json j;
    try {
      j = ordered_json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw CorpusError(record_prefix(index) + "invalid JSON: " + e.what());
    }
    if (!j.is_object()) {
      throw CorpusError(record_prefix(index) + "record is not an object");
    }
    Sample s;
    s.id = require_string(j, "id", index);
    s.article = require_string(j, "article", index);
    s.headline = require_string(j, "headline", index);
    if (j.contains("operation") && !j.at("operation").is_null()) {
      if (!j.at("operation").is_string()) {
        throw CorpusError(record_prefix(index) +
                          "field operation must be a string");
      }
      std::string label = j.at("operation").get<std::string>();
      auto op = parse_operation(label);
      if (!op) {
        throw CorpusError(record_prefix(index) +
                          "unknown operation label: " + label);
      }
      s.operation = *op;
    }
    if (j.contains("correct_numeral") && !j.at("correct_numeral").is_null()) {
      Decimal value = numeral_from_json(j.at("correct_numeral"), index);
      if (!headline_has_numeral(s.headline, value)) {
        throw CorpusError(record_prefix(index) + "correct_numeral " +
                          value.to_string() +
                          " does not match any headline numeral");
      }
      s.correct_numeral = value;
    }
    if (j.contains("split") && !j.at("split").is_null()) {
      std::string split = j.at("split").get<std::string>();
      if (split == "train") {
        s.split = Split::train;
      } else if (split == "test") {
        s.split = Split::test;
      } else {
        throw CorpusError(record_prefix(index) + "unknown split: " + split);
      }
    }
    if (!seen_ids.insert(s.id).second) {
      throw CorpusError(record_prefix(index) + "duplicate id: " + s.id);
    }
    corpus.samples.push_back(std::move(s));
  }
  return corpus;
}

void save_corpus(const Corpus& corpus, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) {
    throw CorpusError("cannot write corpus file: " + path.string());
  }
  for (const auto& s : corpus.samples) {
    ordered_json j;
    j["id"] = s.id;
    j["article"] = s.article;
    j["headline"] = s.headline;
    if (s.operation) j["operation"] = std::string(to_string(*s.operation));
    if (s.correct_numeral) {
      const Decimal& v = *s.correct_numeral;
      if (v.is_integer()) {
        j["correct_numeral"] = v.units();
      } else {
        j["correct_numeral"] = std::stod(v.to_string());
      }
    }
    j["split"] = s.split == Split::train ? "train" : "test";
    out << j.dump() << "\n";
  }
}

Corpus dedupe(const Corpus& corpus) {
  Corpus out;
  out.source = corpus.source;
  std::unordered_set<std::string> seen;
  for (const auto& s : corpus.samples) {
    std::string key = normalize_ws(s.article) + '\x1f' + normalize_ws(s.headline);
    if (seen.insert(std::move(key)).second) {
      out.samples.push_back(s);
    }
  }
  return out;
}

Corpus filter_single_numeral(const Corpus& corpus) {
  Corpus out;
  out.source = corpus.source;
  for (const auto& s : corpus.samples) {
    if (extract_numerals(s.headline).size() == 1) {
      out.samples.push_back(s);
    }
  }
  return out;
}

int word_count(std::string_view text) {
  int count = 0;
  bool in_token = false;
  for (char c : text) {
    bool space = c == ' ' || c == '\t' || c == '\n' || c == '\r';
    if (!space && !in_token) ++count;
    in_token = !space;
  }
  return count;
}

Corpus filter_xsum(const Corpus& corpus, int min_words, int max_words) {
  Corpus out;
  out.source = corpus.source;
  for (const auto& s : corpus.samples) {
    int words = word_count(s.article);
    if (words < min_words || words > max_words) continue;
    auto numerals = extract_numerals(s.headline);
    if (numerals.size() != 1) continue;
    auto scaled = numerals[0].value.times(
        Decimal(multiplier_factor(numerals[0].multiplier)));
    if (!scaled || !scaled->is_integer()) continue;
    out.samples.push_back(s);
  }
  return out;
}

Corpus prep_corpus(const Corpus& corpus, int min_words, int max_words) {
  Corpus out = filter_single_numeral(dedupe(corpus));
  if (corpus.source == Source::xsum) {
    out = filter_xsum(out, min_words, max_words);
  }
  return out;
}

}  // namespace ten
