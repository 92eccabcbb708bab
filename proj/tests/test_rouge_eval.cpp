#include <doctest.h>

#include <map>
#include <random>
#include <sstream>

#include "ten/errors.hpp"
#include "ten/eval.hpp"
#include "test_util.hpp"

using namespace ten;
using test_util::TempDir;
using test_util::write_file;

TEST_CASE("rouge_tokenize lowercases and strips punctuation") {
  CHECK(rouge_tokenize("It's 30K!") ==
        std::vector<std::string>{"it", "s", "30k"});
  CHECK(rouge_tokenize("Wedding Cost $142.") ==
        std::vector<std::string>{"wedding", "cost", "142"});
  CHECK(rouge_tokenize("") == std::vector<std::string>{});
  CHECK(rouge_tokenize("...!!!") == std::vector<std::string>{});
  CHECK(rouge_tokenize("a-b c_d") ==
        std::vector<std::string>{"a", "b", "c", "d"});
}

TEST_CASE("rouge_n hand-computed scores") {
  SUBCASE("identity") {
    RougeScore s = rouge_n("the cat sat on the mat", "the cat sat on the mat", 1);
    CHECK(s.precision == 1.0);
    CHECK(s.recall == 1.0);
    CHECK(s.f1 == 1.0);
  }
  SUBCASE("partial overlap") {
    RougeScore s = rouge_n("the cat sat", "the cat", 1);
    CHECK(s.precision == doctest::Approx(2.0 / 3.0));
    CHECK(s.recall == 1.0);
    CHECK(s.f1 == doctest::Approx(0.8));
  }
  SUBCASE("clipping repeated candidate tokens") {
    RougeScore s = rouge_n("the the the", "the", 1);
    CHECK(s.precision == doctest::Approx(1.0 / 3.0));
    CHECK(s.recall == 1.0);
    CHECK(s.f1 == doctest::Approx(0.5));
  }
  SUBCASE("bigrams") {
    RougeScore s = rouge_n("police found the tip", "police found a tip", 2);
    // candidate bigrams: police-found, found-the, the-tip
    // reference bigrams: police-found, found-a, a-tip -> overlap 1
    CHECK(s.precision == doctest::Approx(1.0 / 3.0));
    CHECK(s.recall == doctest::Approx(1.0 / 3.0));
    CHECK(s.f1 == doctest::Approx(1.0 / 3.0));
  }
  SUBCASE("disjoint") {
    RougeScore s = rouge_n("alpha beta", "gamma delta", 1);
    CHECK(s.precision == 0.0);
    CHECK(s.recall == 0.0);
    CHECK(s.f1 == 0.0);
  }
  SUBCASE("empty sides score zero") {
    for (int n : {1, 2}) {
      CHECK(rouge_n("", "something", n).f1 == 0.0);
      CHECK(rouge_n("something", "", n).f1 == 0.0);
      CHECK(rouge_n("", "", n).f1 == 0.0);
    }
    // A one-token text has no bigrams at all.
    CHECK(rouge_n("word", "word", 2).f1 == 0.0);
  }
}

TEST_CASE("rouge_l hand-computed scores") {
  SUBCASE("identity") {
    RougeScore s = rouge_l("a b c", "a b c");
    CHECK(s.f1 == 1.0);
  }
  SUBCASE("reordering shortens the subsequence") {
    RougeScore s = rouge_l("a b c d", "a c b d");
    CHECK(s.precision == doctest::Approx(0.75));
    CHECK(s.recall == doctest::Approx(0.75));
    CHECK(s.f1 == doctest::Approx(0.75));
  }
  SUBCASE("subsequence skips gaps") {
    RougeScore s = rouge_l("the police got a tip", "police tip");
    CHECK(s.recall == 1.0);
    CHECK(s.precision == doctest::Approx(0.4));
  }
  SUBCASE("empty sides score zero") {
    CHECK(rouge_l("", "x").f1 == 0.0);
    CHECK(rouge_l("x", "").f1 == 0.0);
  }
}

namespace {

// Brute-force re-implementations used as scoring oracles. Written with
// different data structures than the library (sorted vectors + recursion)
// on purpose.
std::vector<std::string> oracle_ngrams(const std::vector<std::string>& tokens,
                                       int n) {
  std::vector<std::string> grams;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string g;
    for (int j = 0; j < n; ++j) g += tokens[i + j] + "|";
    grams.push_back(g);
  }
  std::sort(grams.begin(), grams.end());
  return grams;
}

RougeScore oracle_rouge_n(const std::string& cand, const std::string& ref,
                          int n) {
  auto c = oracle_ngrams(rouge_tokenize(cand), n);
  auto r = oracle_ngrams(rouge_tokenize(ref), n);
  if (c.empty() || r.empty()) return {};
  std::vector<std::string> common;
  std::set_intersection(c.begin(), c.end(), r.begin(), r.end(),
                        std::back_inserter(common));  // multiset clip
  const double overlap = static_cast<double>(common.size());
  RougeScore s;
  s.precision = overlap / static_cast<double>(c.size());
  s.recall = overlap / static_cast<double>(r.size());
  s.f1 = (s.precision + s.recall) == 0.0
             ? 0.0
             : 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

std::size_t oracle_lcs(const std::vector<std::string>& a,
                       const std::vector<std::string>& b, std::size_t i,
                       std::size_t j, std::map<std::pair<std::size_t, std::size_t>,
                                               std::size_t>& memo) {
  if (i == a.size() || j == b.size()) return 0;
  auto key = std::make_pair(i, j);
  auto it = memo.find(key);
  if (it != memo.end()) return it->second;
  std::size_t best;
  if (a[i] == b[j]) {
    best = 1 + oracle_lcs(a, b, i + 1, j + 1, memo);
  } else {
    best = std::max(oracle_lcs(a, b, i + 1, j, memo),
                    oracle_lcs(a, b, i, j + 1, memo));
  }
  memo[key] = best;
  return best;
}

RougeScore oracle_rouge_l(const std::string& cand, const std::string& ref) {
  auto a = rouge_tokenize(cand);
  auto b = rouge_tokenize(ref);
  if (a.empty() || b.empty()) return {};
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  const double lcs = static_cast<double>(oracle_lcs(a, b, 0, 0, memo));
  RougeScore s;
  s.precision = lcs / static_cast<double>(a.size());
  s.recall = lcs / static_cast<double>(b.size());
  s.f1 = (s.precision + s.recall) == 0.0
             ? 0.0
             : 2.0 * s.precision * s.recall / (s.precision + s.recall);
  return s;
}

std::string random_sentence(std::mt19937_64& rng, int max_len) {
  static const char* vocab[] = {"police", "tip",    "cost",  "30k",  "wedding",
                                "142",    "years",  "run",   "the",  "a",
                                "of",     "in",     "cops",  "hurt", "$5m",
                                "rose",   "21.9%",  "fell",  "to",   "on"};
  std::string out;
  const int len = static_cast<int>(rng() % (max_len + 1));
  for (int i = 0; i < len; ++i) {
    if (!out.empty()) out += ' ';
    out += vocab[rng() % 20];
  }
  return out;
}

bool same(const RougeScore& a, const RougeScore& b) {
  return a.precision == b.precision && a.recall == b.recall && a.f1 == b.f1;
}

}  // namespace

TEST_CASE("rouge agrees exactly with the brute-force oracle") {
  std::mt19937_64 rng(4242);
  for (int trial = 0; trial < 300; ++trial) {
    const std::string cand = random_sentence(rng, 12);
    const std::string ref = random_sentence(rng, 12);
    CAPTURE(trial);
    CAPTURE(cand);
    CAPTURE(ref);
    CHECK(same(rouge_n(cand, ref, 1), oracle_rouge_n(cand, ref, 1)));
    CHECK(same(rouge_n(cand, ref, 2), oracle_rouge_n(cand, ref, 2)));
    CHECK(same(rouge_l(cand, ref), oracle_rouge_l(cand, ref)));
  }
}

TEST_CASE("predictions files round-trip and validate") {
  TempDir dir;
  std::vector<Prediction> preds = {{"a", "Cost Was $142."},
                                   {"b", "30K Jobs Cut"}};
  const auto path = dir / "preds.jsonl";
  write_predictions(preds, path);
  auto back = read_predictions(path);
  REQUIRE(back.size() == 2);
  CHECK(back[0].id == "a");
  CHECK(back[0].generated_headline == "Cost Was $142.");
  CHECK(back[1].id == "b");

  const auto bad = dir / "bad.jsonl";
  write_file(bad, "{\"id\":\"a\"}\n");
  try {
    (void)read_predictions(bad);
    FAIL_CHECK("expected Error");
  } catch (const Error& error) {
    CHECK(std::string(error.what()).find("predictions record 1") !=
          std::string::npos);
  }
}

namespace {

Corpus eval_corpus(const TempDir& dir) {
  std::ostringstream text;
  auto add = [&](const std::string& id, const std::string& headline,
                 const std::string& extra) {
    text << "{\"id\":\"" << id << "\",\"article\":\"Article for " << id
         << ".\",\"headline\":\"" << headline << "\"" << extra << "}\n";
  };
  add("c1", "Cost Was 142 Dollars", ",\"operation\":\"Copy\",\"correct_numeral\":142");
  add("c2", "Total Hit 10 Injured", ",\"operation\":\"Copy\",\"correct_numeral\":10");
  add("a1", "Sum Reached 50 Now", ",\"operation\":\"Add\",\"correct_numeral\":50");
  add("r1", "About 65 Thousand", ",\"operation\":\"Round\",\"correct_numeral\":65");
  add("n1", "No Annotation 7 Here", "");
  const auto path = dir / "eval_corpus.jsonl";
  write_file(path, text.str());
  return load_corpus(path, Source::numhg);
}

}  // namespace

TEST_CASE("evaluate: buckets, exclusions, unmatched, and rouge") {
  TempDir dir;
  Corpus corpus = eval_corpus(dir);
  std::vector<Prediction> preds = {
      {"c1", "Cost Was 142 Dollars"},  // correct, rouge 1
      {"c2", "Total Hit 12 Injured"},  // wrong numeral
      {"a1", "Sum Reached 50 Now"},    // correct
      {"r1", "Roughly 66 Thousand"},   // wrong
      {"n1", "No Annotation 7 Here"},  // excluded from accuracy
      {"ghost", "Not In The Corpus 3"},// unmatched
  };
  EvalReport report = evaluate(preds, corpus);

  CHECK(report.overall.total == 4);
  CHECK(report.overall.correct == 2);
  CHECK(*report.overall.accuracy_pct() == doctest::Approx(50.0));
  CHECK(report.copy.total == 2);
  CHECK(report.copy.correct == 1);
  CHECK(report.reasoning.total == 2);
  CHECK(report.reasoning.correct == 1);
  CHECK(report.excluded == 1);
  CHECK(report.unmatched == 1);

  REQUIRE(report.per_operation.contains(OperationType::copy));
  CHECK(report.per_operation.at(OperationType::copy).count == 2);
  CHECK(report.per_operation.at(OperationType::copy).wrong == 1);
  CHECK(report.per_operation.at(OperationType::copy).error_pct() ==
        doctest::Approx(50.0));
  CHECK(report.per_operation.at(OperationType::add).error_pct() ==
        doctest::Approx(0.0));
  CHECK(report.per_operation.at(OperationType::round).error_pct() ==
        doctest::Approx(100.0));
  CHECK_FALSE(report.per_operation.contains(OperationType::subtract));

  // ROUGE means cover every matched pair (5 of them), scaled to percent.
  double r1 = 0.0;
  const char* kRefs[] = {"Cost Was 142 Dollars", "Total Hit 10 Injured",
                         "Sum Reached 50 Now", "About 65 Thousand",
                         "No Annotation 7 Here"};
  const char* kGen[] = {"Cost Was 142 Dollars", "Total Hit 12 Injured",
                        "Sum Reached 50 Now", "Roughly 66 Thousand",
                        "No Annotation 7 Here"};
  for (int i = 0; i < 5; ++i) r1 += rouge_n(kGen[i], kRefs[i], 1).f1;
  CHECK(report.rouge1_f1 == doctest::Approx(100.0 * r1 / 5.0));
}

TEST_CASE("evaluate with no annotated samples leaves accuracy undefined") {
  TempDir dir;
  write_file(dir / "c.jsonl",
             "{\"id\":\"x\",\"article\":\"a\",\"headline\":\"Only 5 Here\"}\n");
  Corpus corpus = load_corpus(dir / "c.jsonl", Source::numhg);
  EvalReport report = evaluate({{"x", "Only 5 Here"}}, corpus);
  CHECK(report.overall.total == 0);
  CHECK_FALSE(report.overall.accuracy_pct().has_value());
  CHECK(report.excluded == 1);

  const std::string table = render_report_table(report);
  CHECK(table.find("n/a") != std::string::npos);
  nlohmann::ordered_json doc = report_to_json(report);
  CHECK(doc["numerical_accuracy"]["overall"].is_null());
}

TEST_CASE("report_to_json keeps placeholders for external metrics") {
  TempDir dir;
  Corpus corpus = eval_corpus(dir);
  EvalReport report = evaluate({{"c1", "Cost Was 142 Dollars"}}, corpus);
  nlohmann::ordered_json doc = report_to_json(report);
  REQUIRE(doc.contains("external_metrics"));
  CHECK(doc["external_metrics"]["bertscore"].is_null());
  CHECK(doc["external_metrics"]["moverscore"].is_null());
  CHECK(doc["external_metrics"]["geval"].is_null());
  CHECK(doc["numerical_accuracy"]["overall"].get<double>() ==
        doctest::Approx(100.0));
  CHECK(doc["counts"]["unmatched"].get<int>() == 0);
  REQUIRE(doc.contains("per_operation_error"));
  REQUIRE(doc["per_operation_error"].is_array());
  CHECK(doc["per_operation_error"][0]["operation"] == "Copy");
}

TEST_CASE("render_report_table lines up and prints two decimals") {
  TempDir dir;
  Corpus corpus = eval_corpus(dir);
  EvalReport report =
      evaluate({{"c1", "Cost Was 142 Dollars"}, {"c2", "Zero 0 Match"}}, corpus);
  const std::string table = render_report_table(report);
  CHECK(table.find("overall") != std::string::npos);
  CHECK(table.find("50.00") != std::string::npos);
  CHECK(table.find("rouge-1") != std::string::npos);
  CHECK(table.find("Copy") != std::string::npos);
}
