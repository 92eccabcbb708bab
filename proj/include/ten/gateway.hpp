#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace ten {

enum class Role { system, user, assistant };

std::string_view to_string(Role role);

struct ChatMessage {
  Role role = Role::user;
  std::string content;
};

struct GenRequest {
  std::vector<ChatMessage> messages;
  double temperature = 0.0;
  int n_samples = 1;
  int max_tokens = 1024;
  std::string model_id;  // overrides the endpoint's model when non-empty
};

enum class Backend { http, mock };

struct GenResult {
  std::vector<std::string> completions;  // size == n_samples, request order
  Backend backend = Backend::mock;
  std::chrono::milliseconds latency{0};
};

// Where and how to talk to a chat-completion endpoint. Credentials are never
// stored here; the HTTP backend reads the TEN_API_KEY environment variable.
struct EndpointConfig {
  std::string url;  // full endpoint, e.g. http://host:8080/v1/chat/completions
  std::string model;
  int timeout_ms = 30000;
  int max_retries = 3;     // total attempts
  int backoff_base_ms = 250;
  double temperature = 0.0;
  int max_tokens = 1024;
};

// One batch slot: either a result or an error message, never both.
struct BatchItem {
  std::optional<GenResult> result;
  std::string error;
  bool ok() const { return result.has_value(); }
};

// Uniform front door to a completion backend.
//
//   http      POSTs OpenAI-style chat-completion JSON, retrying 429/5xx and
//             transport failures with exponential backoff up to the attempt
//             cap, then throws TransportError.
//   mock      deterministic offline backend: each (messages, index) pair maps
//             to a stable hash; a fixture file named <hash>.txt under the
//             fixture directory supplies the completion. Without a fixture
//             file, strict mode throws (naming the hash) and non-strict mode
//             falls back to a deterministic synthesizer, so reruns are
//             byte-identical either way.
//   scripted  an arbitrary responder function, for tests.
class Gateway {
 public:
  using Responder =
      std::function<std::string(const GenRequest&, int completion_index)>;

  static Gateway http();
  static Gateway mock(std::filesystem::path fixture_dir, bool strict = false);
  static Gateway scripted(Responder responder);

  GenResult complete(const GenRequest& request,
                     const EndpointConfig& endpoint) const;

  // Runs requests with at most `parallelism` in flight; results come back in
  // input order and failures stay per-item.
  std::vector<BatchItem> complete_batch(const std::vector<GenRequest>& requests,
                                        const EndpointConfig& endpoint,
                                        int parallelism) const;

  // Stable fixture key for a mock request.
  static std::uint64_t request_hash(const std::vector<ChatMessage>& messages,
                                    int completion_index);

  int n_cap = 32;  // upper bound on n_samples per request

 private:
  Gateway() = default;
  Backend backend_ = Backend::mock;
  std::filesystem::path fixture_dir_;
  bool strict_ = false;
  Responder responder_;

  std::string mock_completion(const GenRequest& request, int index) const;
  GenResult http_complete(const GenRequest& request,
                          const EndpointConfig& endpoint) const;
};

}  // namespace ten
