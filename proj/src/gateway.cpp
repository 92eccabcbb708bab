#include "ten/gateway.hpp"

#include <atomic>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "ten/errors.hpp"
#include "ten/hash.hpp"
#include "ten/mock_llm.hpp"

namespace ten {

namespace {

using nlohmann::json;

void validate_request(const GenRequest& req, int n_cap) {
  if (req.messages.empty()) {
    throw ValidationError("request has no messages");
  }
  for (const auto& m : req.messages) {
    if ((m.role == Role::system || m.role == Role::user) && m.content.empty()) {
      throw ValidationError("request has an empty system/user message");
    }
  }
  if (req.n_samples < 1 || req.n_samples > n_cap) {
    throw ValidationError("n_samples must be between 1 and " +
                          std::to_string(n_cap) + ", got " +
                          std::to_string(req.n_samples));
  }
  if (req.max_tokens < 1) {
    throw ValidationError("max_tokens must be positive");
  }
  if (req.temperature < 0.0) {
    throw ValidationError("temperature must be non-negative");
  }
}

// Splits "http://host:port/path" into origin and path.
std::pair<std::string, std::string> split_url(const std::string& url) {
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw TransportError("endpoint url has no scheme: " + url);
  }
  auto path_start = url.find('/', scheme_end + 3);
  if (path_start == std::string::npos) {
    return {url, "/"};
  }
  return {url.substr(0, path_start), url.substr(path_start)};
}

bool retryable_status(int status) {
  return status == 429 || status >= 500;
}

}  // namespace

std::string_view to_string(Role role) {
  switch (role) {
    case Role::system:
      return "system";
    case Role::user:
      return "user";
    case Role::assistant:
      return "assistant";
  }
  return "?";
}

Gateway Gateway::http() {
  Gateway g;
  g.backend_ = Backend::http;
  return g;
}

Gateway Gateway::mock(std::filesystem::path fixture_dir, bool strict) {
  Gateway g;
  g.backend_ = Backend::mock;
  g.fixture_dir_ = std::move(fixture_dir);
  g.strict_ = strict;
  return g;
}

Gateway Gateway::scripted(Responder responder) {
  Gateway g;
  g.backend_ = Backend::mock;
  g.responder_ = std::move(responder);
  return g;
}

std::uint64_t Gateway::request_hash(const std::vector<ChatMessage>& messages,
                                    int completion_index) {
  std::uint64_t h = kFnvOffset;
  for (const auto& m : messages) {
    h = fnv1a64(to_string(m.role), h);
    h = fnv1a64("\x1e", h);
    h = fnv1a64(m.content, h);
    h = fnv1a64("\x1f", h);
  }
  h = fnv1a64(std::to_string(completion_index), h);
  return h;
}

std::string Gateway::mock_completion(const GenRequest& req, int index) const {
  if (responder_) {
    return responder_(req, index);
  }
  std::uint64_t hash = request_hash(req.messages, index);
  if (!fixture_dir_.empty()) {
    auto file = fixture_dir_ / (to_hex(hash) + ".txt");
    std::ifstream in(file, std::ios::binary);
    if (in) {
      std::ostringstream buffer;
      buffer << in.rdbuf();
      return buffer.str();
    }
  }
  if (strict_) {
    throw TransportError("mock fixture missing for request hash " +
                         to_hex(hash));
  }
  return mock_llm::synthesize(req, index);
}

GenResult Gateway::complete(const GenRequest& req,
                            const EndpointConfig& endpoint) const {
  validate_request(req, n_cap);
  auto start = std::chrono::steady_clock::now();
  GenResult result;
  if (backend_ == Backend::mock) {
    result.backend = Backend::mock;
    result.completions.reserve(static_cast<std::size_t>(req.n_samples));
    for (int i = 0; i < req.n_samples; ++i) {
      result.completions.push_back(mock_completion(req, i));
    }
  } else {
    result = http_complete(req, endpoint);
  }
  result.latency = std::chrono::duration_cast<std::chrono::milliseconds>(
      std::chrono::steady_clock::now() - start);
  return result;
}

GenResult Gateway::http_complete(const GenRequest& req,
                                 const EndpointConfig& endpoint) const {
  auto [origin, path] = split_url(endpoint.url);
  httplib::Client client(origin);
  client.set_connection_timeout(0, endpoint.timeout_ms * 1000);
  client.set_read_timeout(endpoint.timeout_ms / 1000,
                          (endpoint.timeout_ms % 1000) * 1000);

  json body;
  body["model"] = req.model_id.empty() ? endpoint.model : req.model_id;
  body["messages"] = json::array();
  for (const auto& m : req.messages) {
    body["messages"].push_back(
        {{"role", std::string(to_string(m.role))}, {"content", m.content}});
  }
  body["temperature"] = req.temperature;
  body["n"] = req.n_samples;
  body["max_tokens"] = req.max_tokens;
  std::string payload = body.dump();

  httplib::Headers headers;
  if (const char* key = std::getenv("TEN_API_KEY")) {
    headers.emplace("Authorization", std::string("Bearer ") + key);
  }

  int attempts = std::max(1, endpoint.max_retries);
  std::string last_error;
  for (int attempt = 1; attempt <= attempts; ++attempt) {
    auto res = client.Post(path, headers, payload, "application/json");
    if (!res) {
      last_error = "transport failure: " + httplib::to_string(res.error());
    } else if (res->status == 200) {
      json parsed;
      try {
        parsed = json::parse(res->body);
      } catch (const json::exception& e) {
        throw TransportError(std::string("malformed response body: ") +
                             e.what());
      }
      if (!parsed.contains("choices") || !parsed["choices"].is_array()) {
        throw TransportError("response has no choices array");
      }
      GenResult result;
      result.backend = Backend::http;
      for (const auto& choice : parsed["choices"]) {
        result.completions.push_back(
            choice.at("message").at("content").get<std::string>());
      }
      if (static_cast<int>(result.completions.size()) != req.n_samples) {
        throw TransportError(
            "expected " + std::to_string(req.n_samples) + " completions, got " +
            std::to_string(result.completions.size()));
      }
      return result;
    } else if (retryable_status(res->status)) {
      last_error = "HTTP " + std::to_string(res->status);
    } else {
      throw TransportError("HTTP " + std::to_string(res->status) + ": " +
                           res->body);
    }
    if (attempt < attempts) {
      auto delay = std::chrono::milliseconds(
          endpoint.backoff_base_ms * (1LL << (attempt - 1)));
      delay = std::min(delay, std::chrono::milliseconds(10000));
      std::this_thread::sleep_for(delay);
    }
  }
  throw TransportError("gave up after " + std::to_string(attempts) +
                       " attempts: " + last_error);
}

std::vector<BatchItem> Gateway::complete_batch(
    const std::vector<GenRequest>& requests, const EndpointConfig& endpoint,
    int parallelism) const {
  if (parallelism < 1) {
    throw ValidationError("parallelism must be at least 1");
  }
  std::vector<BatchItem> items(requests.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    while (true) {
      std::size_t i = next.fetch_add(1);
      if (i >= requests.size()) break;
      try {
        items[i].result = complete(requests[i], endpoint);
      } catch (const std::exception& e) {
        items[i].error = e.what();
      }
    }
  };
  std::size_t n_threads =
      std::min(static_cast<std::size_t>(parallelism), requests.size());
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  return items;
}

}  // namespace ten
