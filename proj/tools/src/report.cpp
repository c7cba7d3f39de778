#include "jetvar/cli/report.hpp"

#include <cstdio>
#include <sstream>

namespace jetvar::cli {

namespace {

std::string real_string(double d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", d);
  return buf;
}

std::string scalar_text(const Node& n) {
  switch (n.kind()) {
    case Node::Kind::Null:
      return "none";
    case Node::Kind::Bool:
      return n.as_bool() ? "true" : "false";
    case Node::Kind::Integer:
      return std::to_string(n.as_int());
    case Node::Kind::Real:
      return real_string(n.as_real());
    case Node::Kind::String:
      return n.as_string();
    case Node::Kind::Expression:
      return to_string(n.as_expr());
    case Node::Kind::Form:
      return to_string(n.as_form());
    default:
      return "";
  }
}

bool is_leaf(const Node& n) { return n.kind() != Node::Kind::Object && n.kind() != Node::Kind::Array; }

void text_into(std::ostringstream& out, const Node& n, int depth) {
  std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  if (n.kind() == Node::Kind::Object) {
    for (const auto& [k, v] : n.members()) {
      if (is_leaf(v)) {
        out << pad << k << ": " << scalar_text(v) << "\n";
      } else {
        out << pad << k << ":" << ((v.members().empty() && v.items().empty()) ? " {}" : "") << "\n";
        text_into(out, v, depth + 1);
      }
    }
  } else if (n.kind() == Node::Kind::Array) {
    for (const auto& v : n.items()) {
      if (is_leaf(v)) {
        out << pad << "- " << scalar_text(v) << "\n";
      } else {
        out << pad << "-\n";
        text_into(out, v, depth + 1);
      }
    }
  } else {
    out << pad << scalar_text(n) << "\n";
  }
}

std::string latex_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '_' || c == '&' || c == '%' || c == '#' || c == '{' || c == '}') out += '\\';
    out += c;
  }
  return out;
}

std::string latex_leaf(const Node& n) {
  switch (n.kind()) {
    case Node::Kind::Expression:
      return to_latex(n.as_expr());
    case Node::Kind::Form:
      return to_latex(n.as_form());
    case Node::Kind::Integer:
    case Node::Kind::Real:
      return scalar_text(n);
    default:
      return "\\text{" + latex_escape(scalar_text(n)) + "}";
  }
}

void latex_into(std::ostringstream& out, const Node& n, const std::string& path) {
  if (n.kind() == Node::Kind::Object) {
    for (const auto& [k, v] : n.members()) latex_into(out, v, path.empty() ? k : path + "[" + k + "]");
  } else if (n.kind() == Node::Kind::Array) {
    int k = 0;
    for (const auto& v : n.items()) latex_into(out, v, path + "[" + std::to_string(k++) + "]");
  } else {
    out << "\\texttt{" << latex_escape(path) << "} &= " << latex_leaf(n) << " \\\\\n";
  }
}

}  // namespace

Node& Node::operator[](const std::string& key) {
  if (kind_ == Kind::Null) kind_ = Kind::Object;
  return object_[key];
}

void Node::push_back(Node n) {
  if (kind_ == Kind::Null) kind_ = Kind::Array;
  array_.push_back(std::move(n));
}

Node indexed(const std::vector<Expr>& values) {
  Node out = Node::object();
  for (std::size_t k = 0; k < values.size(); ++k) out[std::to_string(k + 1)] = values[k];
  return out;
}

nlohmann::json to_json(const Node& n) {
  switch (n.kind()) {
    case Node::Kind::Null:
      return nullptr;
    case Node::Kind::Bool:
      return n.as_bool();
    case Node::Kind::Integer:
      return n.as_int();
    case Node::Kind::Real:
      return n.as_real();
    case Node::Kind::String:
      return n.as_string();
    case Node::Kind::Expression:
      return to_string(n.as_expr());
    case Node::Kind::Form:
      return to_string(n.as_form());
    case Node::Kind::Object: {
      nlohmann::json out = nlohmann::json::object();
      for (const auto& [k, v] : n.members()) out[k] = to_json(v);
      return out;
    }
    case Node::Kind::Array: {
      nlohmann::json out = nlohmann::json::array();
      for (const auto& v : n.items()) out.push_back(to_json(v));
      return out;
    }
  }
  return nullptr;
}

std::string render_text(const Node& n) {
  std::ostringstream out;
  text_into(out, n, 0);
  return out.str();
}

std::string render_latex(const Node& n) {
  std::ostringstream out;
  out << "\\begin{align*}\n";
  latex_into(out, n, "");
  out << "\\end{align*}\n";
  return out.str();
}

}  // namespace jetvar::cli
