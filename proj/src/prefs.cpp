#include "ten/prefs.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "ten/distill.hpp"
#include "ten/errors.hpp"
#include "ten/eval.hpp"
#include "ten/jsonl.hpp"
#include "ten/numeral.hpp"
#include "ten/rationale.hpp"

namespace ten {

std::string_view to_string(PairReason reason) {
  switch (reason) {
    case PairReason::numeral_split:
      return "numeral_split";
    case PairReason::rouge_split:
      return "rouge_split";
  }
  throw ValidationError("unknown pair reason");
}

std::optional<PairReason> parse_pair_reason(std::string_view name) {
  if (name == "numeral_split") return PairReason::numeral_split;
  if (name == "rouge_split") return PairReason::rouge_split;
  return std::nullopt;
}

namespace {

// Total order used everywhere a "best" or "worst" candidate is picked:
// primary key ROUGE (descending for best), tie-break on the rationale text
// (ascending). Independent of the order candidates arrived in.
bool better_than(const Candidate& a, const Candidate& b) {
  if (a.rouge_to_reference != b.rouge_to_reference)
    return a.rouge_to_reference > b.rouge_to_reference;
  return a.rationale_text < b.rationale_text;
}

const Candidate* best_of(const std::vector<const Candidate*>& pool) {
  const Candidate* best = nullptr;
  for (const Candidate* c : pool)
    if (best == nullptr || better_than(*c, *best)) best = c;
  return best;
}

const Candidate* worst_of(const std::vector<const Candidate*>& pool) {
  const Candidate* worst = nullptr;
  for (const Candidate* c : pool)
    if (worst == nullptr || better_than(*worst, *c)) worst = c;
  return worst;
}

}  // namespace

std::vector<Candidate> sample_candidates(
    const Sample& sample, const Gateway& gateway,
    const EndpointConfig& rationale_endpoint,
    const EndpointConfig& headline_endpoint,
    const std::string& reference_rationale, const PrefsOptions& options) {
  if (options.k < 1) throw ValidationError("k must be at least 1");
  const std::string article =
      truncate_chars(sample.article, options.max_article_chars);

  GenRequest request;
  request.messages = build_rationale_gen_messages(article);
  request.temperature = options.temperature;
  request.n_samples = options.k;
  request.max_tokens = rationale_endpoint.max_tokens;
  GenResult result = gateway.complete(request, rationale_endpoint);

  // Exact-text dedup, first occurrence wins.
  std::vector<std::string> rationales;
  std::set<std::string> seen;
  for (const std::string& text : result.completions)
    if (seen.insert(text).second) rationales.push_back(text);

  // Deterministic headline completion for every distinct rationale.
  std::vector<GenRequest> headline_requests;
  headline_requests.reserve(rationales.size());
  for (const std::string& text : rationales) {
    GenRequest hr;
    hr.messages = build_headline_gen_messages(article, text);
    hr.temperature = 0.0;
    hr.n_samples = 1;
    hr.max_tokens = headline_endpoint.max_tokens;
    headline_requests.push_back(std::move(hr));
  }
  std::vector<BatchItem> headline_results = gateway.complete_batch(
      headline_requests, headline_endpoint, options.parallelism);

  std::vector<Candidate> candidates;
  candidates.reserve(rationales.size());
  for (std::size_t i = 0; i < rationales.size(); ++i) {
    Candidate candidate;
    candidate.rationale_text = rationales[i];
    if (headline_results[i].ok())
      candidate.headline_text = headline_results[i].result->completions.at(0);

    Decimal concluded;
    bool parsed = false;
    try {
      concluded = final_numeral(candidate.rationale_text);
      parsed = true;
    } catch (const ParseError&) {
      parsed = false;
    }
    candidate.parse_ok = parsed;
    if (parsed && sample.correct_numeral.has_value())
      candidate.numeral_correct = concluded == *sample.correct_numeral;
    candidate.rouge_to_reference =
        rouge_n(candidate.rationale_text, reference_rationale, 1).f1;
    candidates.push_back(std::move(candidate));
  }
  return candidates;
}

std::optional<PreferencePair> select_pair(
    const std::string& sample_id, const std::string& prompt,
    const std::vector<Candidate>& candidates, double margin) {
  std::vector<const Candidate*> correct;
  std::vector<const Candidate*> incorrect;
  for (const Candidate& c : candidates) {
    if (c.parse_ok && c.numeral_correct)
      correct.push_back(&c);
    else
      incorrect.push_back(&c);
  }

  PreferencePair pair;
  pair.sample_id = sample_id;
  pair.prompt = prompt;

  if (!correct.empty() && !incorrect.empty()) {
    pair.chosen = best_of(correct)->rationale_text;
    pair.rejected = worst_of(incorrect)->rationale_text;
    pair.reason = PairReason::numeral_split;
    return pair;
  }

  // All candidates agree on correctness; fall back to the ROUGE split.
  // Only parseable candidates may be chosen.
  std::vector<const Candidate*> chosen_pool;
  std::vector<const Candidate*> all;
  for (const Candidate& c : candidates) {
    all.push_back(&c);
    if (c.parse_ok) chosen_pool.push_back(&c);
  }
  if (chosen_pool.empty() || all.size() < 2) return std::nullopt;
  const Candidate* best = best_of(chosen_pool);
  const Candidate* worst = worst_of(all);
  if (best == worst) return std::nullopt;
  if (best->rouge_to_reference - worst->rouge_to_reference < margin)
    return std::nullopt;
  pair.chosen = best->rationale_text;
  pair.rejected = worst->rationale_text;
  pair.reason = PairReason::rouge_split;
  return pair;
}

std::pair<std::vector<PreferencePair>, PrefsSummary> build_preference_dataset(
    const Corpus& corpus,
    const std::map<std::string, std::string>& reference_rationales,
    const Gateway& gateway, const EndpointConfig& rationale_endpoint,
    const EndpointConfig& headline_endpoint, const PrefsOptions& options) {
  std::vector<PreferencePair> pairs;
  PrefsSummary summary;
  long long correct_candidates = 0;
  long long total_candidates = 0;

  for (const Sample& sample : corpus.samples) {
    ++summary.samples;
    auto it = reference_rationales.find(sample.id);
    if (it == reference_rationales.end() || !sample.correct_numeral.has_value()) {
      ++summary.errors;
      continue;
    }
    std::vector<Candidate> candidates;
    try {
      candidates = sample_candidates(sample, gateway, rationale_endpoint,
                                     headline_endpoint, it->second, options);
    } catch (const TransportError&) {
      ++summary.errors;
      continue;
    }
    for (const Candidate& c : candidates) {
      ++total_candidates;
      if (c.numeral_correct) ++correct_candidates;
    }
    const std::string article =
        truncate_chars(sample.article, options.max_article_chars);
    std::optional<PreferencePair> pair =
        select_pair(sample.id, rationale_prompt(article), candidates,
                    options.margin);
    if (!pair.has_value()) {
      ++summary.skipped;
      continue;
    }
    if (pair->reason == PairReason::numeral_split)
      ++summary.numeral_split;
    else
      ++summary.rouge_split;
    ++summary.pairs;
    pairs.push_back(std::move(*pair));
  }
  if (total_candidates > 0)
    summary.mean_candidate_accuracy =
        static_cast<double>(correct_candidates) /
        static_cast<double>(total_candidates);
  return {std::move(pairs), summary};
}

void emit_dpo(const std::vector<PreferencePair>& pairs,
              const std::filesystem::path& path) {
  std::vector<nlohmann::ordered_json> rows;
  rows.reserve(pairs.size());
  for (const PreferencePair& pair : pairs) {
    nlohmann::ordered_json row;
    row["id"] = pair.sample_id;
    row["prompt"] = pair.prompt;
    row["chosen"] = pair.chosen;
    row["rejected"] = pair.rejected;
    row["reason"] = std::string(to_string(pair.reason));
    rows.push_back(std::move(row));
  }
  write_jsonl(path, rows);
}

std::vector<PreferencePair> read_dpo(const std::filesystem::path& path) {
  std::vector<PreferencePair> pairs;
  std::size_t line_no = 0;
  for (const nlohmann::ordered_json& row : read_jsonl(path)) {
    ++line_no;
    auto context = [&](const std::string& what) {
      return CorpusError("preference record " + std::to_string(line_no) +
                         ": " + what);
    };
    for (const char* key : {"id", "prompt", "chosen", "rejected", "reason"}) {
      if (!row.contains(key) || !row[key].is_string())
        throw context(std::string("missing or non-string field '") + key +
                      "'");
    }
    PreferencePair pair;
    pair.sample_id = row["id"].get<std::string>();
    pair.prompt = row["prompt"].get<std::string>();
    pair.chosen = row["chosen"].get<std::string>();
    pair.rejected = row["rejected"].get<std::string>();
    std::optional<PairReason> reason =
        parse_pair_reason(row["reason"].get<std::string>());
    if (!reason.has_value())
      throw context("unknown reason '" + row["reason"].get<std::string>() +
                    "'");
    pair.reason = *reason;
    pairs.push_back(std::move(pair));
  }
  return pairs;
}

}  // namespace ten
