#include "ten/distill.hpp"

#include <unordered_map>

#include "ten/errors.hpp"
#include "ten/jsonl.hpp"
#include "ten/prompts.hpp"
#include "ten/rationale.hpp"

namespace ten {

namespace {

using nlohmann::ordered_json;

// Checks one teacher completion against the sample's annotation. Returns an
// empty string when the rationale is acceptable.
std::string judge_rationale(const std::string& text, const Sample& sample) {
  TenRationale parsed;
  try {
    parsed = parse_rationale(text);
  } catch (const ParseError& e) {
    return std::string("parse: ") + e.what();
  }
  if (sample.correct_numeral &&
      parsed.final_numeral != *sample.correct_numeral) {
    return "numeral mismatch: rationale concludes " +
           parsed.final_numeral.to_string() + ", annotation is " +
           sample.correct_numeral->to_string();
  }
  return {};
}

}  // namespace

std::string truncate_chars(const std::string& text, int max_chars) {
  if (max_chars <= 0 || static_cast<int>(text.size()) <= max_chars) {
    return text;
  }
  return text.substr(0, static_cast<std::size_t>(max_chars));
}

std::vector<ChatMessage> build_demo_prompt(const Sample& sample,
                                           int max_article_chars) {
  if (!sample.correct_numeral) {
    throw ValidationError("sample " + sample.id +
                          " has no correct_numeral annotation");
  }
  std::string masked = mask_numeral(sample.headline);
  std::vector<ChatMessage> messages;
  messages.push_back({Role::system, std::string(prompts::kTeacherSystem)});
  messages.push_back(
      {Role::user,
       prompts::teacher_user(truncate_chars(sample.article, max_article_chars),
                             masked, sample.correct_numeral->to_string())});
  return messages;
}

std::vector<ChatMessage> build_fewshot_prompt(
    const Sample& sample, const std::vector<DemoExample>& demos,
    int max_article_chars) {
  std::vector<ChatMessage> messages;
  messages.push_back({Role::system, std::string(prompts::kTeacherSystem)});
  for (const auto& demo : demos) {
    auto demo_messages = build_demo_prompt(demo.sample, max_article_chars);
    messages.push_back(demo_messages[1]);  // the user turn
    messages.push_back({Role::assistant, demo.rationale_text});
  }
  auto target = build_demo_prompt(sample, max_article_chars);
  messages.push_back(target[1]);
  return messages;
}

std::vector<ChatMessage> build_rationale_gen_messages(const std::string& article,
                                                      int max_article_chars) {
  return {
      {Role::system, std::string(prompts::kRationaleGenSystem)},
      {Role::user,
       prompts::rationale_user(truncate_chars(article, max_article_chars))},
  };
}

std::vector<ChatMessage> build_headline_gen_messages(const std::string& article,
                                                     const std::string& rationale,
                                                     int max_article_chars) {
  return {
      {Role::system, std::string(prompts::kHeadlineGenSystem)},
      {Role::user,
       prompts::headline_user(truncate_chars(article, max_article_chars),
                              rationale)},
  };
}

std::string rationale_prompt(const std::string& article, int max_article_chars) {
  return std::string(prompts::kRationaleGenSystem) + "\n\n" +
         prompts::rationale_user(truncate_chars(article, max_article_chars));
}

std::string headline_prompt(const std::string& article,
                            const std::string& rationale,
                            int max_article_chars) {
  return std::string(prompts::kHeadlineGenSystem) + "\n\n" +
         prompts::headline_user(truncate_chars(article, max_article_chars),
                                rationale);
}

std::pair<std::vector<SupervisionRecord>, SupervisionSummary>
generate_supervision(const Corpus& corpus, const std::vector<DemoExample>& demos,
                     const Gateway& gateway, const EndpointConfig& endpoint,
                     const DistillOptions& options) {
  std::vector<SupervisionRecord> records(corpus.samples.size());
  std::vector<GenRequest> requests;
  std::vector<std::size_t> slots;  // request i belongs to records[slots[i]]

  for (std::size_t i = 0; i < corpus.samples.size(); ++i) {
    const Sample& s = corpus.samples[i];
    SupervisionRecord& rec = records[i];
    rec.sample_id = s.id;
    rec.article = s.article;
    try {
      rec.masked_headline = mask_numeral(s.headline);
      GenRequest req;
      req.messages =
          build_fewshot_prompt(s, demos, options.max_article_chars);
      req.temperature = endpoint.temperature;
      req.n_samples = 1;
      req.max_tokens = endpoint.max_tokens;
      requests.push_back(std::move(req));
      slots.push_back(i);
    } catch (const ValidationError& e) {
      rec.valid = false;
      rec.error = e.what();
    }
  }

  auto run_pass = [&](const std::vector<GenRequest>& reqs,
                      const std::vector<std::size_t>& req_slots) {
    auto items = gateway.complete_batch(reqs, endpoint, options.parallelism);
    for (std::size_t i = 0; i < items.size(); ++i) {
      SupervisionRecord& rec = records[req_slots[i]];
      const Sample& s = corpus.samples[req_slots[i]];
      if (!items[i].ok()) {
        rec.valid = false;
        rec.error = "transport: " + items[i].error;
        continue;
      }
      rec.rationale_text = items[i].result->completions.front();
      rec.error = judge_rationale(rec.rationale_text, s);
      rec.valid = rec.error.empty();
    }
  };

  run_pass(requests, slots);

  if (options.retry_invalid) {
    std::vector<GenRequest> retry_requests;
    std::vector<std::size_t> retry_slots;
    for (std::size_t i = 0; i < requests.size(); ++i) {
      if (!records[slots[i]].valid) {
        retry_requests.push_back(requests[i]);
        retry_slots.push_back(slots[i]);
      }
    }
    if (!retry_requests.empty()) {
      run_pass(retry_requests, retry_slots);
    }
  }

  SupervisionSummary summary;
  summary.total = static_cast<int>(records.size());
  for (const auto& rec : records) {
    if (rec.valid) {
      ++summary.valid;
    } else if (rec.error.rfind("parse:", 0) == 0) {
      ++summary.parse_failures;
    } else if (rec.error.rfind("numeral mismatch", 0) == 0) {
      ++summary.numeral_mismatches;
    } else if (rec.error.rfind("transport:", 0) == 0) {
      ++summary.transport_errors;
    }
  }
  return {std::move(records), summary};
}

void write_supervision(const std::vector<SupervisionRecord>& records,
                       const std::filesystem::path& path) {
  std::vector<ordered_json> out;
  out.reserve(records.size());
  for (const auto& rec : records) {
    ordered_json j;
    j["id"] = rec.sample_id;
    j["article"] = rec.article;
    j["masked_headline"] = rec.masked_headline;
    j["rationale"] = rec.rationale_text;
    j["valid"] = rec.valid;
    if (!rec.error.empty()) j["error"] = rec.error;
    out.push_back(std::move(j));
  }
  write_jsonl(path, out);
}

std::vector<SupervisionRecord> read_supervision(
    const std::filesystem::path& path) {
  std::vector<SupervisionRecord> records;
  for (const auto& j : read_jsonl(path)) {
    SupervisionRecord rec;
    try {
      rec.sample_id = j.at("id").get<std::string>();
      rec.article = j.at("article").get<std::string>();
      rec.masked_headline = j.at("masked_headline").get<std::string>();
      rec.rationale_text = j.at("rationale").get<std::string>();
      rec.valid = j.at("valid").get<bool>();
      if (j.contains("error")) rec.error = j.at("error").get<std::string>();
    } catch (const nlohmann::json::exception& e) {
      throw Error("supervision file " + path.string() + ": " + e.what());
    }
    records.push_back(std::move(rec));
  }
  return records;
}

int emit_sft_rationale(const std::vector<SupervisionRecord>& records,
                       const std::filesystem::path& path,
                       int max_article_chars) {
  std::vector<ordered_json> out;
  for (const auto& rec : records) {
    if (!rec.valid) continue;
    ordered_json j;
    j["id"] = rec.sample_id;
    j["prompt"] = rationale_prompt(rec.article, max_article_chars);
    j["completion"] = rec.rationale_text;
    out.push_back(std::move(j));
  }
  write_jsonl(path, out);
  return static_cast<int>(out.size());
}

int emit_sft_headline(const std::vector<SupervisionRecord>& records,
                      const Corpus& corpus, const std::filesystem::path& path,
                      int max_article_chars) {
  std::unordered_map<std::string, const Sample*> by_id;
  for (const auto& s : corpus.samples) by_id[s.id] = &s;
  std::vector<ordered_json> out;
  for (const auto& rec : records) {
    if (!rec.valid) continue;
    auto it = by_id.find(rec.sample_id);
    if (it == by_id.end()) {
      throw Error("supervision record " + rec.sample_id +
                  " has no corpus sample");
    }
    ordered_json j;
    j["id"] = rec.sample_id;
    j["prompt"] =
        headline_prompt(rec.article, rec.rationale_text, max_article_chars);
    j["completion"] = it->second->headline;  // byte-exact reference headline
    out.push_back(std::move(j));
  }
  write_jsonl(path, out);
  return static_cast<int>(out.size());
}

}  // namespace ten
