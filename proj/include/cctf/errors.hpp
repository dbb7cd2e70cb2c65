#pragma once

#include <stdexcept>
#include <string>

namespace cctf {

// Raised for malformed or out-of-range configuration input (file or flags).
// Messages carry the offending key and, for file input, a line number.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised when a Pearson correlation is requested over a zero-variance
// sequence. Deliberately distinct from returning 0: a silent zero would
// corrupt downstream sign tests.
class UndefinedCorrelationError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace cctf
