#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "jetvar/jetvar.hpp"

namespace jetvar::cli {

struct SourceLocation {
  int line = 0;
  int column = 0;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, SourceLocation at, std::vector<std::string> expected = {});
  const SourceLocation& location() const noexcept { return at_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::string message_;
  SourceLocation at_;
  std::vector<std::string> expected_;
};

template <typename T>
struct Named {
  std::string name;
  T value;
  SourceLocation at;
};

struct Model {
  int base_dim = 0;
  int fiber_dim = 0;
  int order = 0;
  int order_cap = kDefaultOrderCap;
  std::optional<TensorType> tensor;
  std::vector<FunctionSymbol> functions;
  std::optional<Expr> lagrangian;
  std::vector<Named<ProjectableField>> fields;
  std::vector<Named<DiffForm>> forms;
  std::vector<Named<PolySection>> sections;
  std::vector<std::string> warnings;

  JetContext context() const;
  const ProjectableField* field(const std::string& name) const;
  const DiffForm* form(const std::string& name) const;
  const PolySection* section(const std::string& name) const;
};

Model parse_model(std::string_view text, int order_cap = kDefaultOrderCap);

/// Canonical model text; parse_model accepts everything this produces.
std::string emit_model(const Model& model);

/// Parses a single expression or form against a context. Warnings about
/// normalized input are appended to `warnings` when given.
Expr parse_expression(const JetContext& ctx, std::string_view text, std::vector<std::string>* warnings = nullptr);
DiffForm parse_form(const JetContext& ctx, std::string_view text, std::vector<std::string>* warnings = nullptr);
/// As parse_expression, with diagnostics offset to `at`.
Expr parse_expression_at(const JetContext& ctx, std::string_view text, SourceLocation at,
                         std::vector<std::string>* warnings = nullptr);

}  // namespace jetvar::cli
