#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "hexband/number_theory.hpp"

namespace hexband::cli {

enum ExitCode : int { kOk = 0, kConfigError = 2, kNumericError = 3, kVerifyFailure = 4 };

/// Invalid configuration; the message names the offending field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Length grammar: decimal float, p/q, or (P+sqrt(D))/Q (also sqrt(D), (P-sqrt(D))/Q).
RatioInput parse_length(const std::string& text, const std::string& field);

/// Exact a/b when both inputs are rational or lie in the same quadratic field, else numeric.
RatioInput ratio_of(const RatioInput& a, const RatioInput& b);

/// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hexband::cli
