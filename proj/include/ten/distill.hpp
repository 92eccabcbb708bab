#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "ten/corpus.hpp"
#include "ten/demos.hpp"
#include "ten/gateway.hpp"

namespace ten {

// One teacher interaction per sample. Invalid outputs are kept and flagged,
// never dropped, so the audit file accounts for every input sample.
struct SupervisionRecord {
  std::string sample_id;
  std::string article;
  std::string masked_headline;
  std::string rationale_text;
  bool valid = false;
  std::string error;  // empty when valid
};

struct SupervisionSummary {
  int total = 0;
  int valid = 0;
  int parse_failures = 0;
  int numeral_mismatches = 0;
  int transport_errors = 0;
  double valid_rate() const { return total ? 1.0 * valid / total : 0.0; }
};

struct DistillOptions {
  int parallelism = 4;
  bool retry_invalid = false;  // one extra pass over invalid samples
  int max_article_chars = 20000;
};

// Article text capped at `max_chars` characters (prompt budgeting is done in
// characters; tokenizer-aware truncation is out of scope).
std::string truncate_chars(const std::string& text, int max_chars);

// Zero-shot teacher prompt: the fixed system instruction plus one user turn
//   News: {article}\nHeadline: {masked}\nCorrect Number: {n}
// Throws ValidationError when the sample lacks correct_numeral or its
// headline does not mask cleanly.
std::vector<ChatMessage> build_demo_prompt(const Sample& sample,
                                           int max_article_chars = 20000);

// Few-shot teacher prompt: system instruction, then each demo as a user /
// assistant pair in the demo order, then the target sample's user turn.
// With five demos that is twelve messages.
std::vector<ChatMessage> build_fewshot_prompt(
    const Sample& sample, const std::vector<DemoExample>& demos,
    int max_article_chars = 20000);

// Prompts for the two student models.
std::vector<ChatMessage> build_rationale_gen_messages(
    const std::string& article, int max_article_chars = 20000);
std::vector<ChatMessage> build_headline_gen_messages(
    const std::string& article, const std::string& rationale,
    int max_article_chars = 20000);

// Single-string prompts as they appear in the SFT files.
std::string rationale_prompt(const std::string& article,
                             int max_article_chars = 20000);
std::string headline_prompt(const std::string& article,
                            const std::string& rationale,
                            int max_article_chars = 20000);

// Runs the teacher over every sample (few-shot with `demos`), validates each
// returned rationale (it must parse and conclude the annotated numeral), and
// reports one record per sample in corpus order.
std::pair<std::vector<SupervisionRecord>, SupervisionSummary>
generate_supervision(const Corpus& corpus, const std::vector<DemoExample>& demos,
                     const Gateway& gateway, const EndpointConfig& endpoint,
                     const DistillOptions& options = {});

// Audit file: {id, article, masked_headline, rationale, valid, error?}.
void write_supervision(const std::vector<SupervisionRecord>& records,
                       const std::filesystem::path& path);
std::vector<SupervisionRecord> read_supervision(
    const std::filesystem::path& path);

// SFT emitters, writing {id, prompt, completion} records. The rationale file
// keeps valid records only; the headline file pairs article+rationale with
// the untouched reference headline. Both return the number of records
// written.
int emit_sft_rationale(const std::vector<SupervisionRecord>& records,
                       const std::filesystem::path& path,
                       int max_article_chars = 20000);
int emit_sft_headline(const std::vector<SupervisionRecord>& records,
                      const Corpus& corpus, const std::filesystem::path& path,
                      int max_article_chars = 20000);

}  // namespace ten
