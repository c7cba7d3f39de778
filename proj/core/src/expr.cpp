#include "jetvar/expr.hpp"

#include <algorithm>
#include <utility>

#include "jetvar/errors.hpp"

namespace jetvar {

// ---------------------------------------------------------------------------
// Atom

Atom::Atom(const Coord& c)
    : kind_(c.is_base() ? Kind::Base : Kind::Jet),
      index_(static_cast<std::uint8_t>(c.index())),
      multi_(c.multi()) {}

Atom Atom::function(FunctionSymbol f, const MultiIndex& deriv) {
  if (!f) throw ContextError("null function symbol");
  for (int p : deriv)
    if (p > static_cast<int>(f->args.size()))
      throw ContextError("derivative position " + std::to_string(p) + " outside the arguments of " + f->name);
  Atom a;
  a.kind_ = Kind::Func;
  a.index_ = 0;
  a.multi_ = deriv;
  a.symbol_ = std::move(f);
  return a;
}

Coord Atom::coord() const {
  if (kind_ == Kind::Base) return Coord::base(index_);
  if (kind_ == Kind::Jet) return Coord::jet(index_, multi_);
  throw DomainError("function atom is not a coordinate");
}

bool operator==(const Atom& a, const Atom& b) noexcept {
  if (a.kind_ != b.kind_ || a.index_ != b.index_ || !(a.multi_ == b.multi_)) return false;
  if (a.kind_ != Atom::Kind::Func) return true;
  return a.symbol_ == b.symbol_ || a.symbol_->name == b.symbol_->name;
}

std::strong_ordering operator<=>(const Atom& a, const Atom& b) noexcept {
  if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
  if (a.kind_ == Atom::Kind::Func && a.symbol_ != b.symbol_) {
    int cmp = a.symbol_->name.compare(b.symbol_->name);
    if (cmp != 0) return cmp < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  if (auto c = a.index_ <=> b.index_; c != 0) return c;
  return a.multi_ <=> b.multi_;
}

// ---------------------------------------------------------------------------
// Monomial helpers

namespace {

Monomial multiply(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    auto c = ia->atom <=> ib->atom;
    if (c < 0) {
      out.push_back(*ia++);
    } else if (c > 0) {
      out.push_back(*ib++);
    } else {
      out.push_back({ia->atom, ia->power + ib->power});
      ++ia;
      ++ib;
    }
  }
  out.insert(out.end(), ia, a.end());
  out.insert(out.end(), ib, b.end());
  return out;
}

bool monomial_less(const Term& a, const Term& b) { return a.monomial < b.monomial; }

/// Sorts, merges duplicates and drops zero coefficients.
std::vector<Term> canonical(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), monomial_less);
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto& t : terms) {
    if (!out.empty() && out.back().monomial == t.monomial) {
      out.back().coeff += t.coeff;
    } else {
      if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
      out.push_back(std::move(t));
    }
  }
  if (!out.empty() && sgn(out.back().coeff) == 0) out.pop_back();
  return out;
}

/// Applies a derivation defined by its values on atoms.
template <typename AtomDerivative>
Expr apply_derivation(const Expr& e, AtomDerivative&& derive_atom) {
  std::map<Atom, Expr> cache;
  std::vector<Term> out;
  for (const auto& term : e.terms()) {
    for (std::size_t k = 0; k < term.monomial.size(); ++k) {
      const Factor& f = term.monomial[k];
      auto it = cache.find(f.atom);
      if (it == cache.end()) it = cache.emplace(f.atom, derive_atom(f.atom)).first;
      const Expr& d = it->second;
      if (d.is_zero()) continue;
      Monomial rest = term.monomial;
      if (f.power == 1) {
        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
      } else {
        rest[k].power -= 1;
      }
      Rational c = term.coeff * f.power;
      for (const auto& dt : d.terms()) out.push_back({c * dt.coeff, multiply(rest, dt.monomial)});
    }
  }
  return Expr::from_terms(std::move(out));
}

}  // namespace

// ---------------------------------------------------------------------------
// Expr

Expr::Expr(long value) {
  if (value != 0) terms_.push_back({Rational(value), {}});
}

Expr::Expr(const Rational& value) {
  if (sgn(value) != 0) terms_.push_back({value, {}});
}

Expr::Expr(const Atom& atom) { terms_.push_back({Rational(1), Monomial{{atom, 1}}}); }

Expr Expr::from_terms(std::vector<Term> terms) {
  Expr e;
  e.terms_ = canonical(std::move(terms));
  return e;
}

bool Expr::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().monomial.empty());
}

Rational Expr::constant_value() const {
  if (!is_constant()) throw DomainError("expression is not constant");
  return terms_.empty() ? Rational(0) : terms_.front().coeff;
}

Rational Expr::constant_term() const {
  if (!terms_.empty() && terms_.front().monomial.empty()) return terms_.front().coeff;
  return Rational(0);
}

Expr& Expr::operator+=(const Expr& other) {
  if (other.terms_.empty()) return *this;
  std::vector<Term> out;
  out.reserve(terms_.size() + other.terms_.size());
  auto ia = terms_.begin();
  auto ib = other.terms_.begin();
  while (ia != terms_.end() && ib != other.terms_.end()) {
    if (ia->monomial < ib->monomial) {
      out.push_back(std::move(*ia++));
    } else if (ib->monomial < ia->monomial) {
      out.push_back(*ib++);
    } else {
      Rational c = ia->coeff + ib->coeff;
      if (sgn(c) != 0) out.push_back({std::move(c), std::move(ia->monomial)});
      ++ia;
      ++ib;
    }
  }
  for (; ia != terms_.end(); ++ia) out.push_back(std::move(*ia));
  for (; ib != other.terms_.end(); ++ib) out.push_back(*ib);
  terms_ = std::move(out);
  return *this;
}

Expr& Expr::operator-=(const Expr& other) { return *this += -other; }

Expr Expr::operator-() const {
  Expr out = *this;
  for (auto& t : out.terms_) t.coeff = -t.coeff;
  return out;
}

Expr operator*(const Expr& a, const Expr& b) {
  if (a.is_zero() || b.is_zero()) return Expr();
  if (a.is_constant()) return scaled(b, a.terms_.front().coeff);
  if (b.is_constant()) return scaled(a, b.terms_.front().coeff);
  std::vector<Term> out;
  out.reserve(a.terms_.size() * b.terms_.size());
  for (const auto& ta : a.terms_)
    for (const auto& tb : b.terms_) out.push_back({ta.coeff * tb.coeff, multiply(ta.monomial, tb.monomial)});
  return Expr::from_terms(std::move(out));
}

Expr& Expr::operator*=(const Expr& other) { return *this = *this * other; }

bool operator==(const Expr& a, const Expr& b) noexcept {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k) {
    if (a.terms_[k].coeff != b.terms_[k].coeff) return false;
    if (a.terms_[k].monomial != b.terms_[k].monomial) return false;
  }
  return true;
}

Expr pow(const Expr& base, int exponent) {
  if (exponent < 0) {
    if (!base.is_constant() || base.is_zero()) throw DomainError("negative power of a non-constant expression");
    Rational inv = 1 / base.constant_value();
    return pow(Expr(inv), -exponent);
  }
  Expr result(1L);
  Expr b = base;
  int k = exponent;
  while (k > 0) {
    if (k & 1) result *= b;
    k >>= 1;
    if (k > 0) b *= b;
  }
  return result;
}

Expr scaled(const Expr& e, const Rational& factor) {
  if (sgn(factor) == 0) return Expr();
  std::vector<Term> out(e.terms().begin(), e.terms().end());
  for (auto& t : out) t.coeff *= factor;
  Expr r;
  r = Expr::from_terms(std::move(out));
  return r;
}

// ---------------------------------------------------------------------------
// Queries

int order(const Expr& e) {
  int k = 0;
  for (const auto& t : e.terms())
    for (const auto& f : t.monomial) k = std::max(k, f.atom.order());
  return k;
}

std::set<Atom> atoms(const Expr& e) {
  std::set<Atom> out;
  for (const auto& t : e.terms())
    for (const auto& f : t.monomial) out.insert(f.atom);
  return out;
}

std::set<Coord> dependencies(const Expr& e) {
  std::set<Coord> out;
  for (const auto& a : atoms(e)) {
    if (a.is_coord()) {
      out.insert(a.coord());
    } else {
      for (const auto& arg : a.symbol()->args) out.insert(arg);
    }
  }
  return out;
}

bool depends_on(const Expr& e, const Coord& c) { return dependencies(e).count(c) > 0; }

bool mentions_functions(const Expr& e) {
  for (const auto& t : e.terms())
    for (const auto& f : t.monomial)
      if (f.atom.is_function()) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Derivatives

Expr partial(const Expr& e, const Coord& c) {
  const Atom target(c);
  return apply_derivation(e, [&](const Atom& a) -> Expr {
    if (a.is_coord()) return a == target ? Expr(1L) : Expr();
    int pos = argument_position(*a.symbol(), c);
    if (pos == 0) return Expr();
    return Expr(Atom::function(a.symbol(), a.deriv().appended(pos)));
  });
}

Expr partial_atom(const Expr& e, const Atom& target) {
  return apply_derivation(e, [&](const Atom& a) -> Expr { return a == target ? Expr(1L) : Expr(); });
}

Expr total_derivative(const JetContext& ctx, const Expr& e, int i) {
  if (i < 1 || i > ctx.base_dim()) throw ContextError("total derivative index out of range: " + std::to_string(i));
  if (order(e) + 1 > ctx.max_order())
    throw OrderError("total derivative needs jet order " + std::to_string(order(e) + 1) +
                     " but the context order is " + std::to_string(ctx.max_order()));
  auto derive_coord = [i](const Coord& c) -> Expr {
    if (c.is_base()) return c.index() == i ? Expr(1L) : Expr();
    return Expr(c.raised(i));
  };
  return apply_derivation(e, [&](const Atom& a) -> Expr {
    if (a.is_coord()) return derive_coord(a.coord());
    Expr out;
    const auto& args = a.symbol()->args;
    for (std::size_t p = 0; p < args.size(); ++p) {
      Expr d = derive_coord(args[p]);
      if (d.is_zero()) continue;
      out += Expr(Atom::function(a.symbol(), a.deriv().appended(static_cast<int>(p) + 1))) * d;
    }
    return out;
  });
}

Expr total_derivative(const JetContext& ctx, const Expr& e, const MultiIndex& index) {
  Expr out = e;
  for (int i : index) out = total_derivative(ctx, out, i);
  return out;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

template <typename AtomImage>
Expr substitute_atoms(const Expr& e, AtomImage&& image) {
  std::map<Atom, Expr> cache;
  Expr out;
  for (const auto& term : e.terms()) {
    Expr product(term.coeff);
    for (const auto& f : term.monomial) {
      auto it = cache.find(f.atom);
      if (it == cache.end()) it = cache.emplace(f.atom, image(f.atom)).first;
      product *= pow(it->second, f.power);
      if (product.is_zero()) break;
    }
    out += product;
  }
  return out;
}

Expr substitute_impl(const Expr& e, const std::map<Coord, Expr>& bindings, bool total) {
  return substitute_atoms(e, [&](const Atom& a) -> Expr {
    if (a.is_coord()) {
      auto it = bindings.find(a.coord());
      if (it != bindings.end()) return it->second;
      if (total) throw SubstitutionError("no binding for a coordinate of the expression");
      return Expr(a);
    }
    for (const auto& arg : a.symbol()->args) {
      auto it = bindings.find(arg);
      if (it == bindings.end()) {
        if (total) throw SubstitutionError("no binding for argument of function " + a.symbol()->name);
        continue;
      }
      if (!(it->second == Expr(arg)))
        throw SubstitutionError("cannot substitute into the arguments of opaque function " + a.symbol()->name);
    }
    return Expr(a);
  });
}

}  // namespace

Expr substitute(const Expr& e, const std::map<Coord, Expr>& bindings) { return substitute_impl(e, bindings, true); }

Expr substitute_partial(const Expr& e, const std::map<Coord, Expr>& bindings) {
  return substitute_impl(e, bindings, false);
}

Expr substitute_functions(const Expr& e, const std::map<std::string, Expr>& realizations) {
  return substitute_atoms(e, [&](const Atom& a) -> Expr {
    if (a.is_coord()) return Expr(a);
    auto it = realizations.find(a.symbol()->name);
    if (it == realizations.end()) return Expr(a);
    Expr d = it->second;
    for (int pos : a.deriv()) d = partial(d, a.symbol()->args[static_cast<std::size_t>(pos - 1)]);
    return d;
  });
}

std::map<Monomial, Expr> split_by_atoms(const Expr& e, const std::function<bool(const Atom&)>& select) {
  std::map<Monomial, std::vector<Term>> grouped;
  for (const auto& term : e.terms()) {
    Monomial key;
    Monomial rest;
    for (const auto& f : term.monomial) (select(f.atom) ? key : rest).push_back(f);
    grouped[key].push_back({term.coeff, std::move(rest)});
  }
  std::map<Monomial, Expr> out;
  for (auto& [key, terms] : grouped) out.emplace(key, Expr::from_terms(std::move(terms)));
  return out;
}

void check_in_context(const JetContext& ctx, const Expr& e) {
  for (const auto& a : atoms(e)) {
    if (a.is_coord()) {
      ctx.check(a.coord());
      continue;
    }
    auto declared = ctx.find_function(a.symbol()->name);
    if (!declared) throw ContextError("undeclared function symbol " + a.symbol()->name);
    ctx.check(*a.symbol());
  }
}

// ---------------------------------------------------------------------------
// Raw trees

RawExpr RawExpr::number(const Rational& v) {
  RawExpr r;
  r.kind = Kind::Number;
  r.value = v;
  return r;
}

RawExpr RawExpr::leaf(const Atom& a) {
  RawExpr r;
  r.kind = Kind::Atom;
  r.atom.push_back(a);
  return r;
}

RawExpr RawExpr::sum(std::vector<RawExpr> parts) {
  RawExpr r;
  r.kind = Kind::Sum;
  r.children = std::move(parts);
  return r;
}

RawExpr RawExpr::product(std::vector<RawExpr> parts) {
  RawExpr r;
  r.kind = Kind::Product;
  r.children = std::move(parts);
  return r;
}

RawExpr RawExpr::negate(RawExpr inner) {
  RawExpr r;
  r.kind = Kind::Negate;
  r.children.push_back(std::move(inner));
  return r;
}

RawExpr RawExpr::power(RawExpr base, int exponent) {
  RawExpr r;
  r.kind = Kind::Power;
  r.exponent = exponent;
  r.children.push_back(std::move(base));
  return r;
}

RawExpr RawExpr::quotient(RawExpr numerator, RawExpr denominator) {
  RawExpr r;
  r.kind = Kind::Quotient;
  r.children.push_back(std::move(numerator));
  r.children.push_back(std::move(denominator));
  return r;
}

Expr normalize(const JetContext& ctx, const RawExpr& raw) {
  switch (raw.kind) {
    case RawExpr::Kind::Number:
      return Expr(raw.value);
    case RawExpr::Kind::Atom: {
      Expr e(raw.atom.at(0));
      check_in_context(ctx, e);
      return e;
    }
    case RawExpr::Kind::Sum: {
      Expr out;
      for (const auto& c : raw.children) out += normalize(ctx, c);
      return out;
    }
    case RawExpr::Kind::Product: {
      Expr out(1L);
      for (const auto& c : raw.children) out *= normalize(ctx, c);
      return out;
    }
    case RawExpr::Kind::Negate:
      return -normalize(ctx, raw.children.at(0));
    case RawExpr::Kind::Power:
      return pow(normalize(ctx, raw.children.at(0)), raw.exponent);
    case RawExpr::Kind::Quotient: {
      Expr den = normalize(ctx, raw.children.at(1));
      if (!den.is_constant()) throw DomainError("division is only allowed by rational constants");
      if (den.is_zero()) throw DomainError("division by zero");
      return scaled(normalize(ctx, raw.children.at(0)), 1 / den.constant_value());
    }
  }
  throw InternalError("unknown raw expression kind");
}

}  // namespace jetvar
