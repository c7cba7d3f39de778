#pragma once

#include <map>
#include <string>
#include <vector>

#include "json.hpp"

#include "jetvar/jetvar.hpp"

namespace jetvar::cli {

/// Result tree shared by the three output formats. Leaves keep their
/// symbolic values so each renderer formats the same canonical objects.
class Node {
 public:
  enum class Kind { Null, Bool, Integer, Real, String, Expression, Form, Object, Array };

  Node() = default;
  Node(bool b) : kind_(Kind::Bool), bool_(b) {}                                      // NOLINT
  Node(int i) : kind_(Kind::Integer), int_(i) {}                                    // NOLINT
  Node(double d) : kind_(Kind::Real), real_(d) {}                                   // NOLINT
  Node(std::string s) : kind_(Kind::String), string_(std::move(s)) {}               // NOLINT
  Node(const char* s) : Node(std::string(s)) {}                                     // NOLINT
  Node(Expr e) : kind_(Kind::Expression), expr_(std::move(e)) {}                    // NOLINT
  Node(DiffForm f) : kind_(Kind::Form), form_(std::move(f)) {}                      // NOLINT

  static Node object() { return Node(Kind::Object); }
  static Node array() { return Node(Kind::Array); }

  Kind kind() const noexcept { return kind_; }
  Node& operator[](const std::string& key);
  void push_back(Node n);

  const std::map<std::string, Node>& members() const noexcept { return object_; }
  const std::vector<Node>& items() const noexcept { return array_; }
  bool as_bool() const noexcept { return bool_; }
  int as_int() const noexcept { return int_; }
  double as_real() const noexcept { return real_; }
  const std::string& as_string() const noexcept { return string_; }
  const Expr& as_expr() const noexcept { return expr_; }
  const DiffForm& as_form() const noexcept { return form_; }

 private:
  explicit Node(Kind k) : kind_(k) {}

  Kind kind_ = Kind::Null;
  bool bool_ = false;
  int int_ = 0;
  double real_ = 0.0;
  std::string string_;
  Expr expr_;
  DiffForm form_;
  std::map<std::string, Node> object_;
  std::vector<Node> array_;
};

/// Object keyed "1".."k" from a list of expressions.
Node indexed(const std::vector<Expr>& values);

nlohmann::json to_json(const Node& n);
std::string render_text(const Node& n);
std::string render_latex(const Node& n);

}  // namespace jetvar::cli
