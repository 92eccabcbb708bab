#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ten/config.hpp"
#include "ten/errors.hpp"
#include "ten/manifest.hpp"
#include "ten/pipeline.hpp"

namespace {

struct ConfigArgs {
  std::string config_path;
  bool mock = false;
  bool mock_strict = false;
  std::string mock_fixtures;
  std::string out_dir;
};

void add_force_flag(CLI::App* cmd, bool& force) {
  cmd->add_flag("--force", force,
                "replace existing outputs instead of refusing");
}

// Attaches the options shared by every config-driven subcommand.
void add_config_options(CLI::App* cmd, ConfigArgs& args) {
  cmd->add_option("--config", args.config_path, "pipeline config JSON")
      ->required();
  cmd->add_flag("--mock", args.mock, "use the offline mock backend");
  cmd->add_flag("--mock-strict", args.mock_strict,
                "mock backend: require fixture files");
  cmd->add_option("--mock-fixtures", args.mock_fixtures,
                  "override the mock fixture directory");
  cmd->add_option("--out", args.out_dir, "override the output directory");
}

ten::PipelineConfig load_with_overrides(const ConfigArgs& args) {
  ten::PipelineConfig config = ten::load_config(args.config_path);
  if (args.mock) config.mock = true;
  if (args.mock_strict) config.mock_strict = true;
  if (!args.mock_fixtures.empty()) config.mock_fixture_dir = args.mock_fixtures;
  if (!args.out_dir.empty()) config.out_dir = args.out_dir;
  config.validate();
  return config;
}

ten::Source parse_source_arg(const std::string& name) {
  std::optional<ten::Source> source = ten::parse_source(name);
  if (!source.has_value())
    throw ten::ConfigError({"--source must be one of: numhg, xsum, generic"});
  return *source;
}

void print_stats(const nlohmann::ordered_json& stats) {
  std::cout << stats.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"pipeline toolkit for number-focused headline generation"};
  app.set_version_flag("--version", std::string(ten::kToolVersion));
  app.require_subcommand(1);
  bool force = false;

  // corpus prep
  auto* corpus_cmd = app.add_subcommand("corpus", "corpus utilities");
  corpus_cmd->require_subcommand(1);
  auto* prep_cmd =
      corpus_cmd->add_subcommand("prep", "dedupe and filter a corpus file");
  std::string prep_source = "numhg";
  std::string prep_in;
  std::string prep_out;
  int prep_min_words = 200;
  int prep_max_words = 500;
  prep_cmd->add_option("--source", prep_source, "numhg or xsum")
      ->capture_default_str();
  prep_cmd->add_option("--in", prep_in, "input corpus JSONL")->required();
  prep_cmd->add_option("--out", prep_out, "output corpus JSONL")->required();
  prep_cmd->add_option("--min-words", prep_min_words,
                       "xsum: minimum article words")
      ->capture_default_str();
  prep_cmd->add_option("--max-words", prep_max_words,
                       "xsum: maximum article words")
      ->capture_default_str();
  add_force_flag(prep_cmd, force);
  prep_cmd->callback([&] {
    print_stats(ten::run_corpus_prep_file(prep_in, prep_out,
                                          parse_source_arg(prep_source),
                                          prep_min_words, prep_max_words,
                                          force));
  });

  // distill
  auto* distill_cmd =
      app.add_subcommand("distill", "teacher supervision stages");
  distill_cmd->require_subcommand(1);

  auto* demos_cmd = distill_cmd->add_subcommand(
      "demos", "export the built-in demonstrations as editable JSON");
  std::string demos_out;
  demos_cmd->add_option("--out", demos_out, "directory to write")->required();
  add_force_flag(demos_cmd, force);
  demos_cmd->callback(
      [&] { print_stats(ten::run_demo_export(demos_out, force)); });

  auto* check_cmd = distill_cmd->add_subcommand(
      "check-demos", "validate a demonstration directory");
  std::string check_dir;
  check_cmd->add_option("--demos", check_dir,
                        "demo directory (default: built-in set)");
  check_cmd->callback([&] { print_stats(ten::run_demo_check(check_dir)); });

  auto* supervise_cmd = distill_cmd->add_subcommand(
      "supervise", "run the teacher over the corpus");
  ConfigArgs supervise_args;
  add_config_options(supervise_cmd, supervise_args);
  add_force_flag(supervise_cmd, force);
  supervise_cmd->callback([&] {
    print_stats(
        ten::run_supervise_stage(load_with_overrides(supervise_args), force));
  });

  auto* emit_cmd = distill_cmd->add_subcommand(
      "emit", "emit SFT files from supervision records");
  ConfigArgs emit_args;
  add_config_options(emit_cmd, emit_args);
  add_force_flag(emit_cmd, force);
  emit_cmd->callback([&] {
    print_stats(ten::run_sft_stage(load_with_overrides(emit_args), force));
  });

  // prefs build
  auto* prefs_cmd = app.add_subcommand("prefs", "preference data stages");
  prefs_cmd->require_subcommand(1);
  auto* prefs_build_cmd =
      prefs_cmd->add_subcommand("build", "build DPO preference pairs");
  ConfigArgs prefs_args;
  add_config_options(prefs_build_cmd, prefs_args);
  add_force_flag(prefs_build_cmd, force);
  int prefs_k = 0;
  double prefs_temperature = 0.0;
  double prefs_margin = 0.0;
  prefs_build_cmd->add_option("--k", prefs_k, "rationales sampled per article");
  prefs_build_cmd->add_option("--temperature", prefs_temperature,
                              "sampling temperature");
  prefs_build_cmd->add_option("--margin", prefs_margin,
                              "minimum ROUGE gap for rouge_split pairs");
  prefs_build_cmd->callback([&] {
    ten::PipelineConfig config = ten::load_config(prefs_args.config_path);
    if (prefs_args.mock) config.mock = true;
    if (prefs_args.mock_strict) config.mock_strict = true;
    if (!prefs_args.mock_fixtures.empty())
      config.mock_fixture_dir = prefs_args.mock_fixtures;
    if (!prefs_args.out_dir.empty()) config.out_dir = prefs_args.out_dir;
    if (prefs_build_cmd->count("--k") > 0) config.k = prefs_k;
    if (prefs_build_cmd->count("--temperature") > 0)
      config.sample_temperature = prefs_temperature;
    if (prefs_build_cmd->count("--margin") > 0) config.margin = prefs_margin;
    config.validate();
    print_stats(ten::run_prefs_stage(config, force));
  });

  // eval run
  auto* eval_cmd = app.add_subcommand("eval", "evaluation");
  eval_cmd->require_subcommand(1);
  auto* eval_run_cmd =
      eval_cmd->add_subcommand("run", "score predictions against a corpus");
  std::string eval_pred;
  std::string eval_corpus;
  std::string eval_source = "numhg";
  std::string eval_out;
  eval_run_cmd->add_option("--pred", eval_pred, "predictions JSONL")
      ->required();
  eval_run_cmd->add_option("--corpus", eval_corpus, "reference corpus JSONL")
      ->required();
  eval_run_cmd->add_option("--source", eval_source, "corpus flavor")
      ->capture_default_str();
  eval_run_cmd->add_option("--out", eval_out, "report directory")->required();
  add_force_flag(eval_run_cmd, force);
  eval_run_cmd->callback([&] {
    nlohmann::ordered_json stats =
        ten::run_eval_files(eval_pred, eval_corpus,
                            parse_source_arg(eval_source), eval_out, force);
    std::ifstream table(std::filesystem::path(eval_out) / "report.txt");
    std::cout << table.rdbuf();
    print_stats(stats);
  });

  // oracle infer
  auto* oracle_cmd = app.add_subcommand("oracle", "operation oracle");
  oracle_cmd->require_subcommand(1);
  auto* infer_cmd = oracle_cmd->add_subcommand(
      "infer", "report which derivations explain each annotated numeral");
  std::string oracle_demos;
  std::string oracle_corpus;
  std::string oracle_source = "numhg";
  std::string oracle_out;
  auto* oracle_demos_opt = infer_cmd->add_option(
      "--demos", oracle_demos, "demo directory (default: built-in set)");
  auto* oracle_corpus_opt =
      infer_cmd->add_option("--corpus", oracle_corpus, "corpus JSONL");
  oracle_corpus_opt->excludes(oracle_demos_opt);
  infer_cmd->add_option("--source", oracle_source, "corpus flavor")
      ->capture_default_str();
  infer_cmd->add_option("--out", oracle_out, "also write rows as JSON");
  infer_cmd->callback([&] {
    std::vector<ten::OracleRow> rows;
    if (!oracle_corpus.empty()) {
      ten::Corpus corpus =
          ten::load_corpus(oracle_corpus, parse_source_arg(oracle_source));
      rows = ten::oracle_rows_for_corpus(corpus);
    } else if (!oracle_demos.empty()) {
      rows = ten::oracle_rows_for_demos(ten::load_demo_dir(oracle_demos));
    } else {
      rows = ten::oracle_rows_for_demos(ten::builtin_demos());
    }
    std::cout << ten::render_oracle_table(rows);
    if (!oracle_out.empty()) {
      std::ofstream out(oracle_out);
      if (!out) throw ten::StageError("cannot write " + oracle_out);
      out << ten::oracle_rows_to_json(rows).dump(2) << "\n";
    }
  });

  // pipeline all
  auto* pipeline_cmd = app.add_subcommand("pipeline", "end-to-end runs");
  pipeline_cmd->require_subcommand(1);
  auto* all_cmd =
      pipeline_cmd->add_subcommand("all", "run every stage into out_dir");
  ConfigArgs all_args;
  add_config_options(all_cmd, all_args);
  add_force_flag(all_cmd, force);
  all_cmd->callback([&] {
    print_stats(ten::run_pipeline_all(load_with_overrides(all_args), force));
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const ten::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
