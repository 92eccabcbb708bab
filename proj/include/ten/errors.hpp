#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace ten {

// Base for every error the toolkit raises on purpose. Catching ten::Error at
// the CLI boundary is enough to turn any failure into a clean exit code.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed rationale text, numeral text, or model output.
class ParseError : public Error {
 public:
  using Error::Error;
};

// Malformed corpus files (bad JSON, missing fields, bad labels).
class CorpusError : public Error {
 public:
  using Error::Error;
};

// A precondition or data invariant was violated (e.g. masking a headline that
// does not contain exactly one numeral, or a demo that fails its checks).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Transport-level failure talking to a completion endpoint, raised after the
// retry budget is exhausted.
class TransportError : public Error {
 public:
  using Error::Error;
};

// Invalid pipeline configuration. Carries every violation found, not just the
// first one, so a bad config can be fixed in one pass.
class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> violations)
      : Error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& vs) {
    std::string out = "invalid configuration:";
    for (const auto& v : vs) out += "\n  - " + v;
    return out;
  }
  std::vector<std::string> violations_;
};

// A pipeline stage failed after configuration was accepted.
class StageError : public Error {
 public:
  using Error::Error;
};

}  // namespace ten
