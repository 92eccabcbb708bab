#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ten/config.hpp"
#include "ten/corpus.hpp"
#include "ten/demos.hpp"
#include "ten/eval.hpp"
#include "ten/gateway.hpp"

namespace ten {

// Backend selected by the config: mock fixture dir or live HTTP.
Gateway make_gateway(const PipelineConfig& config);

// Demos named by the config (or the built-in five), validated.
std::vector<DemoExample> resolve_demos(const PipelineConfig& config);

// Temperature-0 predictions for every sample: rationale first, then the
// headline conditioned on it. Throws StageError when any item fails.
std::vector<Prediction> generate_predictions(const Corpus& corpus,
                                             const Gateway& gateway,
                                             const PipelineConfig& config);

// Stage runners. Each writes its artifacts plus a manifest under a dedicated
// subdirectory of config.out_dir and returns a small stats object for
// display. `force` allows replacing a non-empty stage directory.
nlohmann::ordered_json run_corpus_stage(const PipelineConfig& config,
                                        bool force);
nlohmann::ordered_json run_supervise_stage(const PipelineConfig& config,
                                           bool force);
nlohmann::ordered_json run_sft_stage(const PipelineConfig& config, bool force);
nlohmann::ordered_json run_prefs_stage(const PipelineConfig& config,
                                       bool force);
nlohmann::ordered_json run_eval_stage(const PipelineConfig& config,
                                      bool force);

// Chains every stage into a freshly prepared out_dir and writes the root
// manifest; on a stage failure the root manifest records status "failed"
// before the error propagates.
nlohmann::ordered_json run_pipeline_all(const PipelineConfig& config,
                                        bool force);

// Standalone file-to-file helpers for the CLI.
nlohmann::ordered_json run_corpus_prep_file(const std::filesystem::path& in,
                                            const std::filesystem::path& out,
                                            Source source, int min_words,
                                            int max_words, bool force);
nlohmann::ordered_json run_eval_files(const std::filesystem::path& predictions,
                                      const std::filesystem::path& corpus_path,
                                      Source source,
                                      const std::filesystem::path& out_dir,
                                      bool force);
nlohmann::ordered_json run_demo_export(const std::filesystem::path& dir,
                                       bool force);
nlohmann::ordered_json run_demo_check(const std::filesystem::path& dir);

// One operation-oracle row per annotated sample.
struct OracleRow {
  std::string id;
  std::string annotated;             // label, or "" when unannotated
  std::vector<std::string> inferred; // labels in reporting order
  bool hit = false;                  // annotated label among the inferred
};

std::vector<OracleRow> oracle_rows_for_demos(
    const std::vector<DemoExample>& demos);
std::vector<OracleRow> oracle_rows_for_corpus(const Corpus& corpus);
std::string render_oracle_table(const std::vector<OracleRow>& rows);
nlohmann::ordered_json oracle_rows_to_json(const std::vector<OracleRow>& rows);

}  // namespace ten
