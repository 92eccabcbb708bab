#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ten/corpus.hpp"

namespace ten {

struct RougeScore {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

// Shared tokenization for every ROUGE variant: lowercase, punctuation
// stripped, whitespace split.
std::vector<std::string> rouge_tokenize(std::string_view text);

// ROUGE-N with clipped n-gram counts (n is 1 or 2 here). Either side empty
// of n-grams scores zero.
RougeScore rouge_n(std::string_view candidate, std::string_view reference,
                   int n);

// ROUGE-L from the longest common subsequence of the token streams.
RougeScore rouge_l(std::string_view candidate, std::string_view reference);

struct Prediction {
  std::string id;
  std::string generated_headline;
};

// Reads/writes {"id", "generated_headline"} newline-delimited JSON.
std::vector<Prediction> read_predictions(const std::filesystem::path& path);
void write_predictions(const std::vector<Prediction>& predictions,
                       const std::filesystem::path& path);

struct BucketStats {
  int total = 0;
  int correct = 0;
  // Percentage, or nullopt when the bucket has no members (undefined is not
  // the same thing as zero).
  std::optional<double> accuracy_pct() const;
};

struct OperationError {
  int count = 0;
  int wrong = 0;
  double error_pct() const;
};

struct EvalReport {
  BucketStats overall;
  BucketStats copy;       // samples annotated Copy
  BucketStats reasoning;  // samples with any other annotation
  int excluded = 0;       // items without a correct_numeral annotation
  int unmatched = 0;      // prediction ids with no corpus sample
  double rouge1_f1 = 0.0;  // mean F1 * 100 over scored pairs
  double rouge2_f1 = 0.0;
  double rougeL_f1 = 0.0;
  // Keyed by operation; map order is the reporting column order.
  std::map<OperationType, OperationError> per_operation;
};

// Scores predictions against the corpus, matching records by id.
EvalReport evaluate(const std::vector<Prediction>& predictions,
                    const Corpus& corpus);

// JSON form of the report. Metrics this toolkit does not compute locally
// (BERTScore, MoverScore, G-Eval) are emitted as null placeholders.
nlohmann::ordered_json report_to_json(const EvalReport& report);

// Aligned plain-text table.
std::string render_report_table(const EvalReport& report);

}  // namespace ten
