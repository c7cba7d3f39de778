#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "jetvar/cli/model.hpp"
#include "jetvar/cli/report.hpp"

namespace jetvar::cli {

/// Bad command-line usage (exit status 2).
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CommandOptions {
  std::string command;
  std::string method = "theta";
  std::string field;
  std::vector<std::string> fields;
  std::string form;
  std::string section;
  int grid = 100;
};

const std::vector<std::string>& command_names();

/// Runs one command against a parsed model. Module errors propagate as
/// jetvar::Error; bad flags or unknown names raise UsageError.
Node run_command(const Model& model, const CommandOptions& options, std::vector<std::string>& warnings);

Node context_node(const Model& model);

/// {"context", "result", "warnings"} with sorted keys, two-space indent.
std::string json_document(const Model& model, const Node& result, const std::vector<std::string>& warnings);

}  // namespace jetvar::cli
