#include "jetvar/format.hpp"

#include <sstream>

namespace jetvar {

namespace {

std::string join_signed(const std::vector<std::string>& parts) {
  if (parts.empty()) return "0";
  std::string out = parts.front();
  for (std::size_t k = 1; k < parts.size(); ++k) {
    const std::string& p = parts[k];
    if (!p.empty() && p.front() == '-') {
      out += " - " + p.substr(1);
    } else {
      out += " + " + p;
    }
  }
  return out;
}

std::string with_coefficient(const Rational& c, const std::string& body, const std::string& sep) {
  if (body.empty()) return to_string(c);
  if (c == 1) return body;
  if (c == -1) return "-" + body;
  return to_string(c) + sep + body;
}

std::string latex_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  std::string sign = sgn(q) < 0 ? "-" : "";
  mpz_class num = abs(q.get_num());
  return sign + "\\frac{" + num.get_str() + "}{" + q.get_den().get_str() + "}";
}

std::string latex_atom(const Atom& a) {
  if (a.is_coord()) return to_latex(a.coord());
  const auto& f = *a.symbol();
  if (a.deriv().empty()) return f.name;
  std::string out = "\\partial_{";
  for (int p : a.deriv()) out += to_latex(f.args[static_cast<std::size_t>(p - 1)]);
  return out + "} " + f.name;
}

std::string latex_monomial(const Monomial& m) {
  std::string out;
  for (const auto& f : m) {
    if (!out.empty()) out += " ";
    std::string a = latex_atom(f.atom);
    if (f.power != 1) a = "{" + a + "}^{" + std::to_string(f.power) + "}";
    out += a;
  }
  return out;
}

std::string latex_term(const Rational& c, const std::string& body) {
  if (body.empty()) return latex_rational(c);
  if (c == 1) return body;
  if (c == -1) return "-" + body;
  return latex_rational(c) + " " + body;
}

std::string basis_string(const Basis& b) {
  std::string out;
  for (const auto& c : b) {
    if (!out.empty()) out += "&";
    out += "d" + to_string(c);
  }
  return out;
}

}  // namespace

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_string(const MultiIndex& index) {
  bool wide = false;
  for (int i : index) wide = wide || i > 9;
  std::string out;
  for (int i : index) {
    if (wide && !out.empty()) out += ",";
    out += std::to_string(i);
  }
  return out;
}

std::string to_string(const Coord& c) {
  if (c.is_base()) return "x" + std::to_string(c.index());
  std::string out = "y" + std::to_string(c.index());
  if (c.order() > 0) out += "_" + to_string(c.multi());
  return out;
}

std::string to_string(const Atom& a) {
  if (a.is_coord()) return to_string(a.coord());
  const auto& f = *a.symbol();
  if (a.deriv().empty()) return f.name;
  std::string out = "diff(" + f.name;
  for (int p : a.deriv()) out += "," + to_string(f.args[static_cast<std::size_t>(p - 1)]);
  return out + ")";
}

std::string to_string(const Monomial& m) {
  std::string out;
  for (const auto& f : m) {
    if (!out.empty()) out += "*";
    out += to_string(f.atom);
    if (f.power != 1) out += "^" + std::to_string(f.power);
  }
  return out;
}

std::string to_string(const Expr& e) {
  std::vector<std::string> parts;
  for (const auto& t : e.terms()) parts.push_back(with_coefficient(t.coeff, to_string(t.monomial), "*"));
  return join_signed(parts);
}

std::string to_string(const DiffForm& a) {
  std::vector<std::string> parts;
  for (const auto& [b, c] : a.terms()) {
    std::string basis = basis_string(b);
    if (basis.empty()) {
      parts.push_back(to_string(c));
    } else if (c.size() == 1) {
      const Term& t = c.terms().front();
      std::string body = to_string(t.monomial);
      body = body.empty() ? basis : body + "*" + basis;
      parts.push_back(with_coefficient(t.coeff, body, "*"));
    } else {
      parts.push_back("(" + to_string(c) + ")*" + basis);
    }
  }
  return join_signed(parts);
}

std::string to_string(const JetField& xi) {
  std::string out;
  for (const auto& [c, e] : xi.components()) {
    if (!out.empty()) out += ", ";
    out += to_string(c) + ": " + to_string(e);
  }
  return "{" + out + "}";
}

std::string to_latex(const Coord& c) {
  if (c.is_base()) return "x_{" + std::to_string(c.index()) + "}";
  std::string out = "y^{" + std::to_string(c.index()) + "}";
  if (c.order() > 0) out += "_{" + to_string(c.multi()) + "}";
  return out;
}

std::string to_latex(const Expr& e) {
  std::vector<std::string> parts;
  for (const auto& t : e.terms()) parts.push_back(latex_term(t.coeff, latex_monomial(t.monomial)));
  return join_signed(parts);
}

std::string to_latex(const DiffForm& a) {
  std::vector<std::string> parts;
  for (const auto& [b, c] : a.terms()) {
    std::string basis;
    for (const auto& v : b) {
      if (!basis.empty()) basis += " \\wedge ";
      basis += "d" + to_latex(v);
    }
    if (basis.empty()) {
      parts.push_back(to_latex(c));
    } else if (c.size() == 1) {
      const Term& t = c.terms().front();
      std::string body = latex_monomial(t.monomial);
      body = body.empty() ? basis : body + " \\, " + basis;
      parts.push_back(latex_term(t.coeff, body));
    } else {
      parts.push_back("\\left(" + to_latex(c) + "\\right) " + basis);
    }
  }
  return join_signed(parts);
}

}  // namespace jetvar
