#pragma once

#include <string>

#include "jetvar/context.hpp"
#include "jetvar/expr.hpp"
#include "jetvar/forms.hpp"

namespace jetvar {

// Plain renderings use the model-file grammar: x1, y2, y1_12, diff(f,x1,y2),
// 1/2*y1_1^2, and for forms `coeff*dx1&dy1`.

std::string to_string(const Rational& q);
std::string to_string(const MultiIndex& index);
std::string to_string(const Coord& c);
std::string to_string(const Atom& a);
std::string to_string(const Monomial& m);
std::string to_string(const Expr& e);
std::string to_string(const DiffForm& a);
std::string to_string(const JetField& xi);

std::string to_latex(const Coord& c);
std::string to_latex(const Expr& e);
std::string to_latex(const DiffForm& a);

}  // namespace jetvar
