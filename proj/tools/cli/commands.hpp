#pragma once

#include <string>

#include <json.hpp>

#include "config.hpp"

namespace hahn::cli {

/// Text of a command's primary output, in the configured format.
struct CommandOutput {
  std::string text;
};

CommandOutput cmd_enumerate(const RunConfig& config);
CommandOutput cmd_kernel(const RunConfig& config);
CommandOutput cmd_sample(const RunConfig& config);
CommandOutput cmd_limit(const RunConfig& config);
CommandOutput cmd_render(const RunConfig& config);

/// {"value": decimal, "exact": "p/q"}.
nlohmann::json exact_field(const Rational& q);
nlohmann::json exact_field(const SignedSqrt& v);

}  // namespace hahn::cli
