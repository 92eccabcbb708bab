#include "ten/config.hpp"

#include <fstream>
#include <set>

#include "ten/corpus.hpp"
#include "ten/errors.hpp"

namespace ten {

namespace {

// Helper that records type mismatches instead of throwing, so a single load
// reports every problem at once.
class FieldReader {
 public:
  FieldReader(const nlohmann::json& object, std::string prefix,
              std::vector<std::string>& violations)
      : object_(object), prefix_(std::move(prefix)), violations_(violations) {}

  void read_string(const char* key, std::string& out) {
    const nlohmann::json* value = find(key);
    if (value == nullptr) return;
    if (!value->is_string())
      report(key, "must be a string");
    else
      out = value->get<std::string>();
  }

  void read_path(const char* key, std::filesystem::path& out) {
    std::string text;
    read_string(key, text);
    if (!text.empty()) out = text;
  }

  void read_bool(const char* key, bool& out) {
    const nlohmann::json* value = find(key);
    if (value == nullptr) return;
    if (!value->is_boolean())
      report(key, "must be a boolean");
    else
      out = value->get<bool>();
  }

  void read_int(const char* key, int& out) {
    const nlohmann::json* value = find(key);
    if (value == nullptr) return;
    if (!value->is_number_integer())
      report(key, "must be an integer");
    else
      out = value->get<int>();
  }

  void read_double(const char* key, double& out) {
    const nlohmann::json* value = find(key);
    if (value == nullptr) return;
    if (!value->is_number())
      report(key, "must be a number");
    else
      out = value->get<double>();
  }

  const nlohmann::json* read_object(const char* key) {
    const nlohmann::json* value = find(key);
    if (value == nullptr) return nullptr;
    if (!value->is_object()) {
      report(key, "must be an object");
      return nullptr;
    }
    return value;
  }

  void check_unknown() const {
    for (const auto& [key, value] : object_.items())
      if (!seen_.contains(key))
        violations_.push_back("unknown field '" + prefix_ + key + "'");
  }

 private:
  const nlohmann::json* find(const char* key) {
    seen_.insert(key);
    auto it = object_.find(key);
    return it == object_.end() ? nullptr : &*it;
  }

  void report(const char* key, const char* what) {
    violations_.push_back("field '" + prefix_ + key + "' " + what);
  }

  const nlohmann::json& object_;
  std::string prefix_;
  std::vector<std::string>& violations_;
  std::set<std::string> seen_;
};

void read_endpoint(FieldReader& top, const char* key, EndpointConfig& out,
                   std::vector<std::string>& violations) {
  const nlohmann::json* object = top.read_object(key);
  if (object == nullptr) return;
  FieldReader reader(*object, std::string(key) + ".", violations);
  reader.read_string("url", out.url);
  reader.read_string("model", out.model);
  reader.read_int("timeout_ms", out.timeout_ms);
  reader.read_int("max_retries", out.max_retries);
  reader.read_int("backoff_base_ms", out.backoff_base_ms);
  reader.read_double("temperature", out.temperature);
  reader.read_int("max_tokens", out.max_tokens);
  reader.check_unknown();
}

void resolve(std::filesystem::path& path, const std::filesystem::path& base) {
  if (!path.empty() && path.is_relative()) path = base / path;
}

nlohmann::ordered_json endpoint_snapshot(const EndpointConfig& endpoint) {
  nlohmann::ordered_json doc;
  doc["url"] = endpoint.url;
  doc["model"] = endpoint.model;
  doc["timeout_ms"] = endpoint.timeout_ms;
  doc["max_retries"] = endpoint.max_retries;
  doc["backoff_base_ms"] = endpoint.backoff_base_ms;
  doc["temperature"] = endpoint.temperature;
  doc["max_tokens"] = endpoint.max_tokens;
  return doc;
}

void check_endpoint(const char* name, const EndpointConfig& endpoint,
                    bool require_url, std::vector<std::string>& violations) {
  const std::string prefix = std::string(name) + ".";
  if (require_url && endpoint.url.empty())
    violations.push_back("field '" + prefix + "url' is required without mock");
  if (require_url && endpoint.model.empty())
    violations.push_back("field '" + prefix +
                         "model' is required without mock");
  if (endpoint.timeout_ms < 1)
    violations.push_back("field '" + prefix + "timeout_ms' must be positive");
  if (endpoint.max_retries < 1)
    violations.push_back("field '" + prefix + "max_retries' must be at least 1");
  if (endpoint.backoff_base_ms < 0)
    violations.push_back("field '" + prefix +
                         "backoff_base_ms' must be non-negative");
  if (endpoint.temperature < 0.0)
    violations.push_back("field '" + prefix +
                         "temperature' must be non-negative");
  if (endpoint.max_tokens < 1)
    violations.push_back("field '" + prefix + "max_tokens' must be positive");
}

}  // namespace

void PipelineConfig::validate() const {
  std::vector<std::string> violations;
  if (!parse_source(source).has_value())
    violations.push_back("field 'source' must be one of: numhg, xsum");
  if (corpus_in.empty())
    violations.push_back("field 'corpus_in' is required");
  if (out_dir.empty()) violations.push_back("field 'out_dir' is required");
  if (min_words < 1)
    violations.push_back("field 'min_words' must be positive");
  if (max_words < min_words)
    violations.push_back("field 'max_words' must be at least min_words");
  if (parallelism < 1)
    violations.push_back("field 'parallelism' must be positive");
  if (k < 1) violations.push_back("field 'k' must be positive");
  if (sample_temperature < 0.0)
    violations.push_back("field 'sample_temperature' must be non-negative");
  if (margin < 0.0 || margin > 1.0)
    violations.push_back("field 'margin' must be within [0, 1]");
  if (max_article_chars < 1)
    violations.push_back("field 'max_article_chars' must be positive");
  if (mock && mock_fixture_dir.empty())
    violations.push_back("field 'mock_fixture_dir' is required in mock mode");
  check_endpoint("teacher", teacher, !mock, violations);
  check_endpoint("rationale_gen", rationale_gen, !mock, violations);
  check_endpoint("headline_gen", headline_gen, !mock, violations);
  if (!violations.empty()) throw ConfigError(violations);
}

nlohmann::ordered_json PipelineConfig::snapshot() const {
  nlohmann::ordered_json doc;
  doc["source"] = source;
  doc["corpus_in"] = corpus_in.filename().string();
  doc["min_words"] = min_words;
  doc["max_words"] = max_words;
  doc["demo_dir"] = demo_dir.empty() ? std::string("<builtin>")
                                     : demo_dir.filename().string();
  doc["mock"] = mock;
  doc["mock_strict"] = mock_strict;
  doc["parallelism"] = parallelism;
  doc["k"] = k;
  doc["sample_temperature"] = sample_temperature;
  doc["margin"] = margin;
  doc["retry_invalid"] = retry_invalid;
  doc["max_article_chars"] = max_article_chars;
  doc["teacher"] = endpoint_snapshot(teacher);
  doc["rationale_gen"] = endpoint_snapshot(rationale_gen);
  doc["headline_gen"] = endpoint_snapshot(headline_gen);
  return doc;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({"cannot open config file: " + path.string()});
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& error) {
    throw ConfigError({"config is not valid JSON: " + std::string(error.what())});
  }
  if (!doc.is_object())
    throw ConfigError({"config root must be a JSON object"});

  PipelineConfig config;
  std::vector<std::string> violations;
  FieldReader reader(doc, "", violations);
  reader.read_string("source", config.source);
  reader.read_path("corpus_in", config.corpus_in);
  reader.read_int("min_words", config.min_words);
  reader.read_int("max_words", config.max_words);
  reader.read_path("demo_dir", config.demo_dir);
  reader.read_path("out_dir", config.out_dir);
  reader.read_bool("mock", config.mock);
  reader.read_path("mock_fixture_dir", config.mock_fixture_dir);
  reader.read_bool("mock_strict", config.mock_strict);
  reader.read_int("parallelism", config.parallelism);
  reader.read_int("k", config.k);
  reader.read_double("sample_temperature", config.sample_temperature);
  reader.read_double("margin", config.margin);
  reader.read_bool("retry_invalid", config.retry_invalid);
  reader.read_int("max_article_chars", config.max_article_chars);
  read_endpoint(reader, "teacher", config.teacher, violations);
  read_endpoint(reader, "rationale_gen", config.rationale_gen, violations);
  read_endpoint(reader, "headline_gen", config.headline_gen, violations);
  reader.check_unknown();
  if (!violations.empty()) throw ConfigError(violations);

  const std::filesystem::path base = path.parent_path();
  resolve(config.corpus_in, base);
  resolve(config.demo_dir, base);
  resolve(config.out_dir, base);
  resolve(config.mock_fixture_dir, base);
  return config;
}

}  // namespace ten
