#pragma once

#include <map>
#include <vector>

#include "jetvar/context.hpp"
#include "jetvar/expr.hpp"

namespace jetvar {

/// Strictly increasing list of coordinates, read as dc_1 ^ ... ^ dc_p.
using Basis = std::vector<Coord>;

/// Exterior form with polynomial coefficients over the jet-coordinate
/// covectors. Terms are keyed by basis; zero coefficients are never stored.
class DiffForm {
 public:
  explicit DiffForm(int degree = 0);
  DiffForm(const Expr& f);  // NOLINT(google-explicit-constructor)

  /// coeff * dc_1 ^ ... ^ dc_p for an arbitrary ordering of `covectors`;
  /// repeated covectors give the zero form.
  static DiffForm basis(const std::vector<Coord>& covectors, const Expr& coeff = Expr(1L));
  static DiffForm dx(int i) { return basis({Coord::base(i)}); }
  static DiffForm dy(int mu) { return basis({Coord::fiber(mu)}); }
  static DiffForm dz(int mu, const MultiIndex& index) { return basis({Coord::jet(mu, index)}); }
  /// dx_1 ^ ... ^ dx_n.
  static DiffForm volume(int n);

  int degree() const noexcept { return degree_; }
  const std::map<Basis, Expr>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  /// Coefficient of a sorted basis (zero when absent).
  Expr coefficient(const Basis& b) const;
  /// Value of a degree-0 form.
  Expr scalar() const;

  DiffForm& operator+=(const DiffForm& other);
  DiffForm& operator-=(const DiffForm& other);
  DiffForm operator-() const;
  friend DiffForm operator+(DiffForm a, const DiffForm& b) { return a += b; }
  friend DiffForm operator-(DiffForm a, const DiffForm& b) { return a -= b; }
  friend DiffForm operator*(const Expr& f, const DiffForm& a);
  friend DiffForm operator*(const DiffForm& a, const Expr& f) { return f * a; }

  friend bool operator==(const DiffForm&, const DiffForm&) = default;

  /// Adds coeff * basis without re-sorting; `b` must be strictly increasing.
  void add_term(const Basis& b, const Expr& coeff);

 private:
  int degree_;
  std::map<Basis, Expr> terms_;
};

/// Sign of the permutation sorting `covectors`, together with the sorted
/// list; sign 0 when a covector repeats.
int sort_basis(std::vector<Coord>& covectors);

int order(const DiffForm& a);
bool mentions_functions(const DiffForm& a);
/// True when every basis covector is some dx_i.
bool is_horizontal(const DiffForm& a);
DiffForm map_coefficients(const DiffForm& a, const std::function<Expr(const Expr&)>& f);

DiffForm wedge(const DiffForm& a, const DiffForm& b);
/// Exterior derivative of a function: sum over dependencies of dF/dc dc.
DiffForm differential(const Expr& f);
DiffForm ext_d(const DiffForm& a);

/// Vector field sum comp(c) d/dc on a jet space; absent coordinates are zero.
class JetField {
 public:
  JetField() = default;
  explicit JetField(std::map<Coord, Expr> components);

  const std::map<Coord, Expr>& components() const noexcept { return components_; }
  Expr component(const Coord& c) const;
  void set(const Coord& c, const Expr& value);
  bool is_zero() const noexcept { return components_.empty(); }
  /// Highest coordinate order carrying a nonzero component.
  int order() const;

  /// The derivation f -> sum comp(c) * df/dc.
  Expr apply(const Expr& f) const;

  friend bool operator==(const JetField&, const JetField&) = default;

 private:
  std::map<Coord, Expr> components_;
};

/// Lie bracket of vector fields on a jet space.
JetField bracket(const JetField& a, const JetField& b);
JetField operator-(const JetField& a, const JetField& b);

DiffForm contract(const JetField& xi, const DiffForm& a);
DiffForm lie_derivative(const JetField& xi, const DiffForm& a);

/// Polynomial cross section x -> (x, gamma_mu(x)).
class PolySection {
 public:
  explicit PolySection(std::vector<Expr> components);

  int fiber_dim() const noexcept { return static_cast<int>(components_.size()); }
  const Expr& component(int mu) const { return components_.at(static_cast<std::size_t>(mu - 1)); }
  const std::vector<Expr>& components() const noexcept { return components_; }
  /// d_I gamma_mu, the value of z_{I mu} along the prolonged section.
  Expr jet(int mu, const MultiIndex& index) const;
  /// Bindings for every jet coordinate occurring in `e`.
  std::map<Coord, Expr> bindings_for(const Expr& e) const;
  /// e evaluated along the prolongation of the section.
  Expr restrict(const Expr& e) const;

 private:
  std::vector<Expr> components_;
};

DiffForm pullback_by_section(const DiffForm& a, const PolySection& gamma);

}  // namespace jetvar
