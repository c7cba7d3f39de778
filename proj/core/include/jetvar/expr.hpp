#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "jetvar/context.hpp"
#include "jetvar/multi_index.hpp"

namespace jetvar {

using Rational = mpq_class;

/// Indivisible factor of a monomial: a jet coordinate or a formal partial
/// derivative of an opaque function symbol.
class Atom {
 public:
  enum class Kind : std::uint8_t { Base, Jet, Func };

  Atom(const Coord& c);  // NOLINT(google-explicit-constructor)
  /// d^|deriv| f / d(arg_{deriv_1}) ... with `deriv` over 1-based argument positions.
  static Atom function(FunctionSymbol f, const MultiIndex& deriv = {});

  Kind kind() const noexcept { return kind_; }
  bool is_coord() const noexcept { return kind_ != Kind::Func; }
  bool is_function() const noexcept { return kind_ == Kind::Func; }
  Coord coord() const;
  const FunctionSymbol& symbol() const noexcept { return symbol_; }
  const MultiIndex& deriv() const noexcept { return multi_; }
  /// Jet order for coordinates; function atoms have order 0.
  int order() const noexcept { return kind_ == Kind::Jet ? static_cast<int>(multi_.order()) : 0; }

  friend bool operator==(const Atom& a, const Atom& b) noexcept;
  friend std::strong_ordering operator<=>(const Atom& a, const Atom& b) noexcept;

 private:
  Atom() = default;

  Kind kind_ = Kind::Base;
  std::uint8_t index_ = 1;
  MultiIndex multi_;
  FunctionSymbol symbol_;
};

struct Factor {
  Atom atom;
  int power;

  friend bool operator==(const Factor&, const Factor&) noexcept = default;
  friend std::strong_ordering operator<=>(const Factor& a, const Factor& b) noexcept {
    if (auto c = a.atom <=> b.atom; c != 0) return c;
    return a.power <=> b.power;
  }
};

/// Sorted product of atom powers; empty means 1.
using Monomial = std::vector<Factor>;

struct Term {
  Rational coeff;
  Monomial monomial;
};

/// Canonical differential polynomial with exact rational coefficients.
/// Terms are sorted by monomial, have nonzero coefficients and no duplicates,
/// so structural equality decides equality of polynomials.
class Expr {
 public:
  Expr() = default;
  Expr(long value);  // NOLINT(google-explicit-constructor)
  Expr(int value) : Expr(static_cast<long>(value)) {}  // NOLINT(google-explicit-constructor)
  Expr(const Rational& value);  // NOLINT(google-explicit-constructor)
  Expr(const Atom& atom);  // NOLINT(google-explicit-constructor)
  Expr(const Coord& c) : Expr(Atom(c)) {}  // NOLINT(google-explicit-constructor)

  static Expr x(int i) { return Expr(Coord::base(i)); }
  static Expr y(int mu) { return Expr(Coord::fiber(mu)); }
  static Expr z(int mu, const MultiIndex& index) { return Expr(Coord::jet(mu, index)); }
  static Expr function(const FunctionSymbol& f, const MultiIndex& deriv = {}) {
    return Expr(Atom::function(f, deriv));
  }
  /// Builds the canonical form of an arbitrary list of terms.
  static Expr from_terms(std::vector<Term> terms);

  std::span<const Term> terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Value of a constant expression; throws DomainError otherwise.
  Rational constant_value() const;
  /// Coefficient of the empty monomial.
  Rational constant_term() const;

  Expr& operator+=(const Expr& other);
  Expr& operator-=(const Expr& other);
  Expr& operator*=(const Expr& other);
  Expr operator-() const;

  friend Expr operator+(Expr a, const Expr& b) { return a += b; }
  friend Expr operator-(Expr a, const Expr& b) { return a -= b; }
  friend Expr operator*(const Expr& a, const Expr& b);

  friend bool operator==(const Expr& a, const Expr& b) noexcept;

 private:
  std::vector<Term> terms_;
};

Expr pow(const Expr& base, int exponent);

/// Scales every coefficient; cheaper than multiplying by a constant Expr.
Expr scaled(const Expr& e, const Rational& factor);

/// Highest jet order among coordinate atoms (0 when none).
int order(const Expr& e);
/// Order-0 and jet coordinates that `e` depends on, including function arguments.
std::set<Coord> dependencies(const Expr& e);
std::set<Atom> atoms(const Expr& e);
bool depends_on(const Expr& e, const Coord& c);
bool mentions_functions(const Expr& e);

/// Partial derivative treating every canonical coordinate as independent;
/// function atoms differentiate by the chain rule into their declared arguments.
Expr partial(const Expr& e, const Coord& c);
/// Derivative with respect to `a` treated as an independent variable (no chain rule).
Expr partial_atom(const Expr& e, const Atom& a);
/// Formal (total) derivative D_i; needs order(e) + 1 <= ctx.max_order().
Expr total_derivative(const JetContext& ctx, const Expr& e, int i);
/// D_{i_1} ... D_{i_k} e for the entries of `index`.
Expr total_derivative(const JetContext& ctx, const Expr& e, const MultiIndex& index);

/// Homomorphic image under a coordinate substitution. Every coordinate atom of
/// `e` must be bound; function atoms survive only when their arguments are
/// bound to themselves.
Expr substitute(const Expr& e, const std::map<Coord, Expr>& bindings);
/// Same, but unbound coordinates are left unchanged.
Expr substitute_partial(const Expr& e, const std::map<Coord, Expr>& bindings);
/// Replaces every atom of the named function symbols by the corresponding
/// derivative of the realization (an Expr in the symbol's arguments).
Expr substitute_functions(const Expr& e, const std::map<std::string, Expr>& realizations);

/// Groups `e` by the monomial formed from the atoms selected by `select`;
/// the remaining factors form the coefficient. Keys are monomials over the
/// selected atoms only (the empty monomial collects the selected-free part).
std::map<Monomial, Expr> split_by_atoms(const Expr& e, const std::function<bool(const Atom&)>& select);

/// Throws ContextError / OrderError if `e` is not an expression on J^max_order
/// of `ctx` (coordinate range, order, undeclared function symbol).
void check_in_context(const JetContext& ctx, const Expr& e);

/// Unnormalized expression tree, as produced by a parser.
struct RawExpr {
  enum class Kind { Number, Atom, Sum, Product, Negate, Power, Quotient };

  Kind kind = Kind::Number;
  Rational value;
  std::vector<Atom> atom;  // exactly one element for Kind::Atom
  std::vector<RawExpr> children;
  int exponent = 1;

  static RawExpr number(const Rational& v);
  static RawExpr leaf(const Atom& a);
  static RawExpr sum(std::vector<RawExpr> parts);
  static RawExpr product(std::vector<RawExpr> parts);
  static RawExpr negate(RawExpr inner);
  static RawExpr power(RawExpr base, int exponent);
  static RawExpr quotient(RawExpr numerator, RawExpr denominator);
};

/// Canonical form of a raw tree. Division is only by nonzero constants and
/// exponents must be non-negative unless the base is constant.
Expr normalize(const JetContext& ctx, const RawExpr& raw);

}  // namespace jetvar
