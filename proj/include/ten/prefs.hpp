#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ten/corpus.hpp"
#include "ten/gateway.hpp"

namespace ten {

// One sampled rationale, scored. The headline is completed from the rationale
// deterministically (temperature 0); rouge_to_reference is ROUGE-1 F1 between
// this rationale and the teacher's reference rationale.
struct Candidate {
  std::string rationale_text;
  std::string headline_text;
  bool numeral_correct = false;
  double rouge_to_reference = 0.0;
  bool parse_ok = false;
};

enum class PairReason { numeral_split, rouge_split };

std::string_view to_string(PairReason reason);
std::optional<PairReason> parse_pair_reason(std::string_view name);

struct PreferencePair {
  std::string sample_id;
  std::string prompt;  // the rationale generator's prompt for this article
  std::string chosen;
  std::string rejected;
  PairReason reason = PairReason::numeral_split;
};

struct PrefsOptions {
  int k = 15;               // rationales sampled per article
  double temperature = 1.0; // sampling temperature for rationales
  double margin = 0.05;     // minimum ROUGE gap for rouge_split pairs
  int parallelism = 4;
  int max_article_chars = 20000;
};

struct PrefsSummary {
  int samples = 0;
  int pairs = 0;
  int numeral_split = 0;
  int rouge_split = 0;
  int skipped = 0;  // samples yielding no pair
  int errors = 0;   // samples that failed outright (transport, no reference)
  double mean_candidate_accuracy = 0.0;
};

// Samples k rationales at the given temperature, dedups exact duplicates
// (first occurrence kept), completes a headline for each survivor at
// temperature 0, and scores them. Unparseable rationales stay in the list
// with parse_ok = false.
std::vector<Candidate> sample_candidates(
    const Sample& sample, const Gateway& gateway,
    const EndpointConfig& rationale_endpoint,
    const EndpointConfig& headline_endpoint,
    const std::string& reference_rationale, const PrefsOptions& options);

// Chooses a (chosen, rejected) pair from scored candidates:
//   (a) numeral_split: both correct and incorrect candidates exist — the
//       parseable correct one with the highest ROUGE against the incorrect
//       one with the lowest.
//   (b) rouge_split: all candidates agree on correctness and at least two
//       distinct ones exist — highest vs lowest ROUGE, only when the gap
//       reaches the margin.
// Unparseable candidates are eligible only as rejected. Ties break on the
// rationale text, so the result never depends on candidate order.
std::optional<PreferencePair> select_pair(const std::string& sample_id,
                                          const std::string& prompt,
                                          const std::vector<Candidate>& candidates,
                                          double margin);

// Runs candidate sampling + pair selection over the corpus. Reference
// rationales come from the supervision stage, keyed by sample id; samples
// without a usable reference are counted as errors and skipped.
std::pair<std::vector<PreferencePair>, PrefsSummary> build_preference_dataset(
    const Corpus& corpus,
    const std::map<std::string, std::string>& reference_rationales,
    const Gateway& gateway, const EndpointConfig& rationale_endpoint,
    const EndpointConfig& headline_endpoint, const PrefsOptions& options);

// DPO file: {id, prompt, chosen, rejected, reason} per line.
void emit_dpo(const std::vector<PreferencePair>& pairs,
              const std::filesystem::path& path);
std::vector<PreferencePair> read_dpo(const std::filesystem::path& path);

}  // namespace ten
