#include "ten/eval.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <unordered_map>

#include "ten/errors.hpp"
#include "ten/jsonl.hpp"

namespace ten {

namespace {

using nlohmann::ordered_json;

RougeScore score_from_counts(int overlap, int candidate_total,
                             int reference_total) {
  RougeScore s;
  if (candidate_total == 0 || reference_total == 0) return s;
  s.precision = static_cast<double>(overlap) / candidate_total;
  s.recall = static_cast<double>(overlap) / reference_total;
  if (s.precision + s.recall > 0) {
    s.f1 = 2 * s.precision * s.recall / (s.precision + s.recall);
  }
  return s;
}

std::unordered_map<std::string, int> ngram_counts(
    const std::vector<std::string>& tokens, int n) {
  std::unordered_map<std::string, int> counts;
  if (static_cast<int>(tokens.size()) < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    std::string key;
    for (int k = 0; k < n; ++k) {
      if (k) key += '\x1f';
      key += tokens[i + k];
    }
    ++counts[key];
  }
  return counts;
}

}  // namespace

std::vector<std::string> rouge_tokenize(std::string_view text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char c : text) {
    if (std::isalnum(static_cast<unsigned char>(c))) {
      current += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

RougeScore rouge_n(std::string_view candidate, std::string_view reference,
                   int n) {
  auto cand = ngram_counts(rouge_tokenize(candidate), n);
  auto ref = ngram_counts(rouge_tokenize(reference), n);
  int cand_total = 0;
  int ref_total = 0;
  for (const auto& [_, c] : cand) cand_total += c;
  for (const auto& [_, c] : ref) ref_total += c;
  int overlap = 0;
  for (const auto& [gram, c] : cand) {
    auto it = ref.find(gram);
    if (it != ref.end()) overlap += std::min(c, it->second);
  }
  return score_from_counts(overlap, cand_total, ref_total);
}

RougeScore rouge_l(std::string_view candidate, std::string_view reference) {
  auto cand = rouge_tokenize(candidate);
  auto ref = rouge_tokenize(reference);
  if (cand.empty() || ref.empty()) return RougeScore{};
  std::vector<std::vector<int>> lcs(cand.size() + 1,
                                    std::vector<int>(ref.size() + 1, 0));
  for (std::size_t i = 1; i <= cand.size(); ++i) {
    for (std::size_t j = 1; j <= ref.size(); ++j) {
      if (cand[i - 1] == ref[j - 1]) {
        lcs[i][j] = lcs[i - 1][j - 1] + 1;
      } else {
        lcs[i][j] = std::max(lcs[i - 1][j], lcs[i][j - 1]);
      }
    }
  }
  int overlap = lcs[cand.size()][ref.size()];
  return score_from_counts(overlap, static_cast<int>(cand.size()),
                           static_cast<int>(ref.size()));
}

std::vector<Prediction> read_predictions(const std::filesystem::path& path) {
  std::vector<Prediction> out;
  std::size_t index = 0;
  for (const auto& j : read_jsonl(path)) {
    ++index;
    if (!j.contains("id") || !j.at("id").is_string() ||
        !j.contains("generated_headline") ||
        !j.at("generated_headline").is_string()) {
      throw Error("predictions record " + std::to_string(index) +
                  ": expected string fields id and generated_headline");
    }
    out.push_back({j.at("id").get<std::string>(),
                   j.at("generated_headline").get<std::string>()});
  }
  return out;
}

void write_predictions(const std::vector<Prediction>& predictions,
                       const std::filesystem::path& path) {
  std::vector<ordered_json> records;
  records.reserve(predictions.size());
  for (const auto& p : predictions) {
    ordered_json j;
    j["id"] = p.id;
    j["generated_headline"] = p.generated_headline;
    records.push_back(std::move(j));
  }
  write_jsonl(path, records);
}

std::optional<double> BucketStats::accuracy_pct() const {
  if (total == 0) return std::nullopt;
  return 100.0 * correct / total;
}

double OperationError::error_pct() const {
  if (count == 0) return 0.0;
  return 100.0 * wrong / count;
}

EvalReport evaluate(const std::vector<Prediction>& predictions,
                    const Corpus& corpus) {
  std::unordered_map<std::string, const Sample*> by_id;
  for (const auto& s : corpus.samples) by_id[s.id] = &s;

  EvalReport report;
  double rouge1_sum = 0.0;
  double rouge2_sum = 0.0;
  double rougeL_sum = 0.0;
  int scored = 0;

  for (const auto& p : predictions) {
    auto it = by_id.find(p.id);
    if (it == by_id.end()) {
      ++report.unmatched;
      continue;
    }
    const Sample& s = *it->second;

    rouge1_sum += rouge_n(p.generated_headline, s.headline, 1).f1;
    rouge2_sum += rouge_n(p.generated_headline, s.headline, 2).f1;
    rougeL_sum += rouge_l(p.generated_headline, s.headline).f1;
    ++scored;

    if (!s.correct_numeral) {
      ++report.excluded;
      continue;
    }
    bool hit = numerals_match(p.generated_headline, *s.correct_numeral);
    ++report.overall.total;
    if (hit) ++report.overall.correct;
    if (s.operation) {
      BucketStats& bucket = *s.operation == OperationType::copy
                                ? report.copy
                                : report.reasoning;
      ++bucket.total;
      if (hit) ++bucket.correct;
      OperationError& oe = report.per_operation[*s.operation];
      ++oe.count;
      if (!hit) ++oe.wrong;
    }
  }

  if (scored > 0) {
    report.rouge1_f1 = 100.0 * rouge1_sum / scored;
    report.rouge2_f1 = 100.0 * rouge2_sum / scored;
    report.rougeL_f1 = 100.0 * rougeL_sum / scored;
  }
  return report;
}

nlohmann::ordered_json report_to_json(const EvalReport& r) {
  auto pct_or_null = [](const BucketStats& b) -> ordered_json {
    auto pct = b.accuracy_pct();
    if (!pct) return nullptr;
    return *pct;
  };
  ordered_json j;
  j["numerical_accuracy"] = {
      {"overall", pct_or_null(r.overall)},
      {"copy", pct_or_null(r.copy)},
      {"reasoning", pct_or_null(r.reasoning)},
  };
  j["counts"] = {
      {"overall", {{"total", r.overall.total}, {"correct", r.overall.correct}}},
      {"copy", {{"total", r.copy.total}, {"correct", r.copy.correct}}},
      {"reasoning",
       {{"total", r.reasoning.total}, {"correct", r.reasoning.correct}}},
      {"excluded", r.excluded},
      {"unmatched", r.unmatched},
  };
  j["rouge"] = {
      {"rouge1_f1", r.rouge1_f1},
      {"rouge2_f1", r.rouge2_f1},
      {"rougeL_f1", r.rougeL_f1},
  };
  j["external_metrics"] = {
      {"bertscore", nullptr},
      {"moverscore", nullptr},
      {"geval", nullptr},
  };
  ordered_json ops = ordered_json::array();
  for (const auto& [op, oe] : r.per_operation) {
    ops.push_back({{"operation", std::string(to_string(op))},
                   {"count", oe.count},
                   {"error_pct", oe.error_pct()}});
  }
  j["per_operation_error"] = ops;
  return j;
}

std::string render_report_table(const EvalReport& r) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(2);
  auto pct = [&](const BucketStats& b) {
    auto v = b.accuracy_pct();
    std::ostringstream cell;
    if (v) {
      cell << std::fixed << std::setprecision(2) << *v;
    } else {
      cell << "n/a";
    }
    return cell.str();
  };

  out << "numerical accuracy (%)\n";
  out << "  " << std::left << std::setw(12) << "bucket" << std::right
      << std::setw(10) << "total" << std::setw(10) << "correct"
      << std::setw(10) << "acc" << "\n";
  auto row = [&](const char* name, const BucketStats& b) {
    out << "  " << std::left << std::setw(12) << name << std::right
        << std::setw(10) << b.total << std::setw(10) << b.correct
        << std::setw(10) << pct(b) << "\n";
  };
  row("overall", r.overall);
  row("copy", r.copy);
  row("reasoning", r.reasoning);
  out << "  excluded: " << r.excluded << "  unmatched: " << r.unmatched
      << "\n\n";

  out << "rouge f1 (%)\n";
  out << "  rouge-1: " << r.rouge1_f1 << "  rouge-2: " << r.rouge2_f1
      << "  rouge-l: " << r.rougeL_f1 << "\n\n";

  if (!r.per_operation.empty()) {
    out << "error by operation (%)\n";
    out << "  " << std::left << std::setw(12) << "operation" << std::right
        << std::setw(10) << "count" << std::setw(10) << "error" << "\n";
    for (const auto& [op, oe] : r.per_operation) {
      out << "  " << std::left << std::setw(12) << to_string(op) << std::right
          << std::setw(10) << oe.count << std::setw(10) << oe.error_pct()
          << "\n";
    }
  }
  return out.str();
}

}  // namespace ten
