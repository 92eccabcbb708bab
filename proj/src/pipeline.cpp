#include "ten/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "ten/distill.hpp"
#include "ten/errors.hpp"
#include "ten/manifest.hpp"
#include "ten/prefs.hpp"

namespace ten {

namespace {

Source config_source(const PipelineConfig& config) {
  std::optional<Source> source = parse_source(config.source);
  if (!source.has_value())
    throw ConfigError({"field 'source' must be one of: numhg, xsum"});
  return *source;
}

Corpus load_prepped(const PipelineConfig& config) {
  Corpus corpus = load_corpus(config.corpus_in, config_source(config));
  return prep_corpus(corpus, config.min_words, config.max_words);
}

std::string demo_input_label(const PipelineConfig& config) {
  if (config.demo_dir.empty()) return "demos: <builtin>";
  return "demos: " + config.demo_dir.filename().string();
}

std::string corpus_input_label(const PipelineConfig& config) {
  return "corpus_in: " + config.corpus_in.filename().string();
}

std::filesystem::path supervision_file(const PipelineConfig& config) {
  return config.out_dir / "supervision" / "supervision.jsonl";
}

std::vector<SupervisionRecord> read_required_supervision(
    const PipelineConfig& config) {
  const std::filesystem::path path = supervision_file(config);
  if (!std::filesystem::exists(path))
    throw StageError(
        "supervision output missing (run `ten distill supervise` first): " +
        path.string());
  return read_supervision(path);
}

void write_json_file(const nlohmann::ordered_json& doc,
                     const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw StageError("cannot write " + path.string());
  out << doc.dump(2) << "\n";
}

void write_text_file(const std::string& text,
                     const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw StageError("cannot write " + path.string());
  out << text;
}

}  // namespace

Gateway make_gateway(const PipelineConfig& config) {
  if (config.mock)
    return Gateway::mock(config.mock_fixture_dir, config.mock_strict);
  return Gateway::http();
}

std::vector<DemoExample> resolve_demos(const PipelineConfig& config) {
  std::vector<DemoExample> demos = config.demo_dir.empty()
                                       ? builtin_demos()
                                       : load_demo_dir(config.demo_dir);
  check_demos(demos);
  return demos;
}

std::vector<Prediction> generate_predictions(const Corpus& corpus,
                                             const Gateway& gateway,
                                             const PipelineConfig& config) {
  std::vector<GenRequest> rationale_requests;
  rationale_requests.reserve(corpus.samples.size());
  for (const Sample& sample : corpus.samples) {
    GenRequest request;
    request.messages = build_rationale_gen_messages(sample.article,
                                                    config.max_article_chars);
    request.temperature = 0.0;
    request.n_samples = 1;
    request.max_tokens = config.rationale_gen.max_tokens;
    rationale_requests.push_back(std::move(request));
  }
  std::vector<BatchItem> rationales = gateway.complete_batch(
      rationale_requests, config.rationale_gen, config.parallelism);

  std::vector<GenRequest> headline_requests;
  headline_requests.reserve(corpus.samples.size());
  for (std::size_t i = 0; i < corpus.samples.size(); ++i) {
    if (!rationales[i].ok())
      throw StageError("rationale generation failed for sample " +
                       corpus.samples[i].id + ": " + rationales[i].error);
    GenRequest request;
    request.messages = build_headline_gen_messages(
        corpus.samples[i].article, rationales[i].result->completions.at(0),
        config.max_article_chars);
    request.temperature = 0.0;
    request.n_samples = 1;
    request.max_tokens = config.headline_gen.max_tokens;
    headline_requests.push_back(std::move(request));
  }
  std::vector<BatchItem> headlines = gateway.complete_batch(
      headline_requests, config.headline_gen, config.parallelism);

  std::vector<Prediction> predictions;
  predictions.reserve(corpus.samples.size());
  for (std::size_t i = 0; i < corpus.samples.size(); ++i) {
    if (!headlines[i].ok())
      throw StageError("headline generation failed for sample " +
                       corpus.samples[i].id + ": " + headlines[i].error);
    predictions.push_back(
        {corpus.samples[i].id, headlines[i].result->completions.at(0)});
  }
  return predictions;
}

nlohmann::ordered_json run_corpus_stage(const PipelineConfig& config,
                                        bool force) {
  const Corpus raw = load_corpus(config.corpus_in, config_source(config));
  const Corpus prepped =
      prep_corpus(raw, config.min_words, config.max_words);

  const std::filesystem::path dir = config.out_dir / "corpus";
  ensure_fresh_dir(dir, force);
  save_corpus(prepped, dir / "corpus.jsonl");

  Manifest manifest;
  manifest.subcommand = "corpus prep";
  manifest.config = config.snapshot();
  manifest.inputs = {corpus_input_label(config)};
  manifest.artifacts = {"corpus.jsonl"};
  write_manifest(manifest, dir);

  nlohmann::ordered_json stats;
  stats["stage"] = "corpus";
  stats["input_records"] = raw.samples.size();
  stats["output_records"] = prepped.samples.size();
  return stats;
}

nlohmann::ordered_json run_supervise_stage(const PipelineConfig& config,
                                           bool force) {
  const Corpus corpus = load_prepped(config);
  const std::vector<DemoExample> demos = resolve_demos(config);
  const Gateway gateway = make_gateway(config);

  DistillOptions options;
  options.parallelism = config.parallelism;
  options.retry_invalid = config.retry_invalid;
  options.max_article_chars = config.max_article_chars;
  auto [records, summary] =
      generate_supervision(corpus, demos, gateway, config.teacher, options);

  const std::filesystem::path dir = config.out_dir / "supervision";
  ensure_fresh_dir(dir, force);
  write_supervision(records, dir / "supervision.jsonl");

  nlohmann::ordered_json summary_doc;
  summary_doc["total"] = summary.total;
  summary_doc["valid"] = summary.valid;
  summary_doc["parse_failures"] = summary.parse_failures;
  summary_doc["numeral_mismatches"] = summary.numeral_mismatches;
  summary_doc["transport_errors"] = summary.transport_errors;
  summary_doc["valid_rate"] = summary.valid_rate();
  write_json_file(summary_doc, dir / "summary.json");

  Manifest manifest;
  manifest.subcommand = "distill supervise";
  manifest.config = config.snapshot();
  manifest.inputs = {corpus_input_label(config), demo_input_label(config)};
  manifest.artifacts = {"supervision.jsonl", "summary.json"};
  write_manifest(manifest, dir);

  nlohmann::ordered_json stats = summary_doc;
  stats["stage"] = "supervision";
  return stats;
}

nlohmann::ordered_json run_sft_stage(const PipelineConfig& config,
                                     bool force) {
  const Corpus corpus = load_prepped(config);
  const std::vector<SupervisionRecord> records =
      read_required_supervision(config);

  const std::filesystem::path dir = config.out_dir / "sft";
  ensure_fresh_dir(dir, force);
  const int rationale_records = emit_sft_rationale(
      records, dir / "rationale.jsonl", config.max_article_chars);
  const int headline_records = emit_sft_headline(
      records, corpus, dir / "headline.jsonl", config.max_article_chars);

  Manifest manifest;
  manifest.subcommand = "distill emit";
  manifest.config = config.snapshot();
  manifest.inputs = {corpus_input_label(config),
                     "supervision: supervision/supervision.jsonl"};
  manifest.artifacts = {"rationale.jsonl", "headline.jsonl"};
  write_manifest(manifest, dir);

  nlohmann::ordered_json stats;
  stats["stage"] = "sft";
  stats["rationale_records"] = rationale_records;
  stats["headline_records"] = headline_records;
  return stats;
}

nlohmann::ordered_json run_prefs_stage(const PipelineConfig& config,
                                       bool force) {
  const Corpus corpus = load_prepped(config);
  const std::vector<SupervisionRecord> records =
      read_required_supervision(config);
  std::map<std::string, std::string> references;
  for (const SupervisionRecord& record : records)
    if (record.valid) references[record.sample_id] = record.rationale_text;

  const Gateway gateway = make_gateway(config);
  PrefsOptions options;
  options.k = config.k;
  options.temperature = config.sample_temperature;
  options.margin = config.margin;
  options.parallelism = config.parallelism;
  options.max_article_chars = config.max_article_chars;
  auto [pairs, summary] =
      build_preference_dataset(corpus, references, gateway,
                               config.rationale_gen, config.headline_gen,
                               options);

  const std::filesystem::path dir = config.out_dir / "prefs";
  ensure_fresh_dir(dir, force);
  emit_dpo(pairs, dir / "dpo.jsonl");

  nlohmann::ordered_json summary_doc;
  summary_doc["samples"] = summary.samples;
  summary_doc["pairs"] = summary.pairs;
  summary_doc["numeral_split"] = summary.numeral_split;
  summary_doc["rouge_split"] = summary.rouge_split;
  summary_doc["skipped"] = summary.skipped;
  summary_doc["errors"] = summary.errors;
  summary_doc["mean_candidate_accuracy"] = summary.mean_candidate_accuracy;
  write_json_file(summary_doc, dir / "summary.json");

  Manifest manifest;
  manifest.subcommand = "prefs build";
  manifest.config = config.snapshot();
  manifest.inputs = {corpus_input_label(config),
                     "supervision: supervision/supervision.jsonl"};
  manifest.artifacts = {"dpo.jsonl", "summary.json"};
  write_manifest(manifest, dir);

  nlohmann::ordered_json stats = summary_doc;
  stats["stage"] = "prefs";
  return stats;
}

namespace {

nlohmann::ordered_json eval_stats(const EvalReport& report) {
  nlohmann::ordered_json stats;
  stats["stage"] = "eval";
  stats["overall_total"] = report.overall.total;
  stats["overall_correct"] = report.overall.correct;
  if (auto pct = report.overall.accuracy_pct(); pct.has_value())
    stats["overall_accuracy_pct"] = *pct;
  else
    stats["overall_accuracy_pct"] = nullptr;
  stats["rouge1_f1"] = report.rouge1_f1;
  stats["rouge2_f1"] = report.rouge2_f1;
  stats["rougeL_f1"] = report.rougeL_f1;
  return stats;
}

}  // namespace

nlohmann::ordered_json run_eval_stage(const PipelineConfig& config,
                                      bool force) {
  const Corpus corpus = load_prepped(config);
  const Gateway gateway = make_gateway(config);
  const std::vector<Prediction> predictions =
      generate_predictions(corpus, gateway, config);

  const std::filesystem::path dir = config.out_dir / "eval";
  ensure_fresh_dir(dir, force);
  write_predictions(predictions, dir / "predictions.jsonl");

  const EvalReport report = evaluate(predictions, corpus);
  write_json_file(report_to_json(report), dir / "report.json");
  write_text_file(render_report_table(report), dir / "report.txt");

  Manifest manifest;
  manifest.subcommand = "eval run";
  manifest.config = config.snapshot();
  manifest.inputs = {corpus_input_label(config)};
  manifest.artifacts = {"predictions.jsonl", "report.json", "report.txt"};
  write_manifest(manifest, dir);

  return eval_stats(report);
}

nlohmann::ordered_json run_pipeline_all(const PipelineConfig& config,
                                        bool force) {
  ensure_fresh_dir(config.out_dir, force);

  Manifest root;
  root.subcommand = "pipeline all";
  root.config = config.snapshot();
  root.inputs = {corpus_input_label(config), demo_input_label(config)};

  nlohmann::ordered_json stats;
  stats["stage"] = "pipeline";
  try {
    stats["corpus"] = run_corpus_stage(config, false);
    stats["supervision"] = run_supervise_stage(config, false);
    stats["sft"] = run_sft_stage(config, false);
    stats["prefs"] = run_prefs_stage(config, false);
    stats["eval"] = run_eval_stage(config, false);
  } catch (...) {
    root.status = "failed";
    write_manifest(root, config.out_dir);
    throw;
  }

  root.artifacts = {"corpus/manifest.json", "supervision/manifest.json",
                    "sft/manifest.json", "prefs/manifest.json",
                    "eval/manifest.json"};
  write_manifest(root, config.out_dir);
  return stats;
}

nlohmann::ordered_json run_corpus_prep_file(const std::filesystem::path& in,
                                            const std::filesystem::path& out,
                                            Source source, int min_words,
                                            int max_words, bool force) {
  const Corpus raw = load_corpus(in, source);
  const Corpus prepped = prep_corpus(raw, min_words, max_words);
  if (std::filesystem::exists(out) && !force)
    throw StageError("output file exists (use --force): " + out.string());
  if (!out.parent_path().empty())
    std::filesystem::create_directories(out.parent_path());
  save_corpus(prepped, out);

  Manifest manifest;
  manifest.subcommand = "corpus prep";
  nlohmann::ordered_json knobs;
  knobs["source"] = std::string(to_string(source));
  knobs["min_words"] = min_words;
  knobs["max_words"] = max_words;
  manifest.config = knobs;
  manifest.inputs = {"corpus_in: " + in.filename().string()};
  manifest.artifacts = {out.filename().string()};
  write_manifest(manifest, out.parent_path().empty()
                               ? std::filesystem::path(".")
                               : out.parent_path());

  nlohmann::ordered_json stats;
  stats["stage"] = "corpus";
  stats["input_records"] = raw.samples.size();
  stats["output_records"] = prepped.samples.size();
  return stats;
}

nlohmann::ordered_json run_eval_files(const std::filesystem::path& predictions,
                                      const std::filesystem::path& corpus_path,
                                      Source source,
                                      const std::filesystem::path& out_dir,
                                      bool force) {
  const Corpus corpus = load_corpus(corpus_path, source);
  const std::vector<Prediction> preds = read_predictions(predictions);
  const EvalReport report = evaluate(preds, corpus);

  ensure_fresh_dir(out_dir, force);
  write_json_file(report_to_json(report), out_dir / "report.json");
  write_text_file(render_report_table(report), out_dir / "report.txt");

  Manifest manifest;
  manifest.subcommand = "eval run";
  nlohmann::ordered_json knobs;
  knobs["source"] = std::string(to_string(source));
  manifest.config = knobs;
  manifest.inputs = {"predictions: " + predictions.filename().string(),
                     "corpus: " + corpus_path.filename().string()};
  manifest.artifacts = {"report.json", "report.txt"};
  write_manifest(manifest, out_dir);

  return eval_stats(report);
}

nlohmann::ordered_json run_demo_export(const std::filesystem::path& dir,
                                       bool force) {
  ensure_fresh_dir(dir, force);
  const std::vector<DemoExample>& demos = builtin_demos();
  write_demo_dir(dir, demos);

  std::vector<std::string> names;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".json")
      names.push_back(entry.path().filename().string());
  std::sort(names.begin(), names.end());

  Manifest manifest;
  manifest.subcommand = "distill demos";
  manifest.inputs = {"demos: <builtin>"};
  manifest.artifacts = names;
  write_manifest(manifest, dir);

  nlohmann::ordered_json stats;
  stats["stage"] = "demos";
  stats["files"] = names.size();
  return stats;
}

nlohmann::ordered_json run_demo_check(const std::filesystem::path& dir) {
  const std::vector<DemoExample> demos =
      dir.empty() ? builtin_demos() : load_demo_dir(dir);
  check_demos(demos);
  nlohmann::ordered_json stats;
  stats["stage"] = "check-demos";
  stats["demos"] = demos.size();
  stats["status"] = "ok";
  return stats;
}

namespace {

OracleRow oracle_row(const std::string& id,
                     const std::optional<OperationType>& annotated,
                     const std::vector<Decimal>& pool, const Decimal& target) {
  OracleRow row;
  row.id = id;
  std::set<OperationType> inferred = infer_operations(pool, target);
  for (OperationType op : kAllOperations)
    if (inferred.contains(op))
      row.inferred.push_back(std::string(to_string(op)));
  if (annotated.has_value()) {
    row.annotated = std::string(to_string(*annotated));
    row.hit = inferred.contains(*annotated);
  }
  return row;
}

}  // namespace

std::vector<OracleRow> oracle_rows_for_demos(
    const std::vector<DemoExample>& demos) {
  std::vector<OracleRow> rows;
  for (const DemoExample& demo : demos) {
    if (!demo.sample.correct_numeral.has_value()) continue;
    rows.push_back(oracle_row(demo.sample.id, demo.sample.operation,
                              demo_numeral_pool(demo),
                              *demo.sample.correct_numeral));
  }
  return rows;
}

std::vector<OracleRow> oracle_rows_for_corpus(const Corpus& corpus) {
  std::vector<OracleRow> rows;
  for (const Sample& sample : corpus.samples) {
    if (!sample.correct_numeral.has_value()) continue;
    std::vector<Decimal> pool;
    for (const Numeral& numeral : extract_numerals(sample.article))
      pool.push_back(numeral.value);
    if (pool.empty()) continue;
    rows.push_back(oracle_row(sample.id, sample.operation, pool,
                              *sample.correct_numeral));
  }
  return rows;
}

std::string render_oracle_table(const std::vector<OracleRow>& rows) {
  std::size_t id_width = 2;
  for (const OracleRow& row : rows) id_width = std::max(id_width, row.id.size());

  std::ostringstream out;
  out << std::left << std::setw(static_cast<int>(id_width) + 2) << "id"
      << std::setw(12) << "annotated" << std::setw(5) << "hit"
      << "inferred\n";
  int hits = 0;
  int annotated = 0;
  for (const OracleRow& row : rows) {
    std::string joined;
    for (const std::string& label : row.inferred) {
      if (!joined.empty()) joined += ", ";
      joined += label;
    }
    out << std::left << std::setw(static_cast<int>(id_width) + 2) << row.id
        << std::setw(12) << (row.annotated.empty() ? "-" : row.annotated)
        << std::setw(5)
        << (row.annotated.empty() ? "-" : (row.hit ? "yes" : "no")) << joined
        << "\n";
    if (!row.annotated.empty()) {
      ++annotated;
      if (row.hit) ++hits;
    }
  }
  out << "recovered " << hits << "/" << annotated
      << " annotated operations\n";
  return out.str();
}

nlohmann::ordered_json oracle_rows_to_json(const std::vector<OracleRow>& rows) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const OracleRow& row : rows) {
    nlohmann::ordered_json item;
    item["id"] = row.id;
    if (row.annotated.empty())
      item["annotated"] = nullptr;
    else
      item["annotated"] = row.annotated;
    item["inferred"] = row.inferred;
    if (row.annotated.empty())
      item["hit"] = nullptr;
    else
      item["hit"] = row.hit;
    doc.push_back(std::move(item));
  }
  return doc;
}

}  // namespace ten
