#include "jetvar/forms.hpp"

#include <algorithm>
#include <utility>

#include "jetvar/errors.hpp"

namespace jetvar {

int sort_basis(std::vector<Coord>& covectors) {
  int sign = 1;
  // insertion sort keeps track of transpositions
  for (std::size_t a = 1; a < covectors.size(); ++a) {
    for (std::size_t b = a; b > 0 && covectors[b] < covectors[b - 1]; --b) {
      std::swap(covectors[b], covectors[b - 1]);
      sign = -sign;
    }
  }
  for (std::size_t a = 1; a < covectors.size(); ++a)
    if (covectors[a] == covectors[a - 1]) return 0;
  return sign;
}

DiffForm::DiffForm(int degree) : degree_(degree) {
  if (degree < 0) throw DegreeError("negative form degree");
}

DiffForm::DiffForm(const Expr& f) : degree_(0) {
  if (!f.is_zero()) terms_.emplace(Basis{}, f);
}

DiffForm DiffForm::basis(const std::vector<Coord>& covectors, const Expr& coeff) {
  std::vector<Coord> sorted = covectors;
  int sign = sort_basis(sorted);
  DiffForm out(static_cast<int>(covectors.size()));
  if (sign == 0 || coeff.is_zero()) return out;
  out.terms_.emplace(std::move(sorted), sign > 0 ? coeff : -coeff);
  return out;
}

DiffForm DiffForm::volume(int n) {
  std::vector<Coord> b;
  for (int i = 1; i <= n; ++i) b.push_back(Coord::base(i));
  return basis(b);
}

Expr DiffForm::coefficient(const Basis& b) const {
  auto it = terms_.find(b);
  return it == terms_.end() ? Expr() : it->second;
}

Expr DiffForm::scalar() const {
  if (degree_ != 0) throw DegreeError("form of degree " + std::to_string(degree_) + " is not a function");
  return coefficient({});
}

void DiffForm::add_term(const Basis& b, const Expr& coeff) {
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(b, coeff);
  if (inserted) return;
  it->second += coeff;
  if (it->second.is_zero()) terms_.erase(it);
}

DiffForm& DiffForm::operator+=(const DiffForm& other) {
  if (other.is_zero()) return *this;
  if (is_zero()) {
    degree_ = other.degree_;
    terms_ = other.terms_;
    return *this;
  }
  if (degree_ != other.degree_)
    throw DegreeError("cannot add forms of degree " + std::to_string(degree_) + " and " +
                      std::to_string(other.degree_));
  for (const auto& [b, c] : other.terms_) add_term(b, c);
  return *this;
}

DiffForm& DiffForm::operator-=(const DiffForm& other) { return *this += -other; }

DiffForm DiffForm::operator-() const {
  DiffForm out = *this;
  for (auto& [b, c] : out.terms_) c = -c;
  return out;
}

DiffForm operator*(const Expr& f, const DiffForm& a) {
  DiffForm out(a.degree_);
  if (f.is_zero()) return out;
  for (const auto& [b, c] : a.terms_) out.add_term(b, f * c);
  return out;
}

int order(const DiffForm& a) {
  int k = 0;
  for (const auto& [b, c] : a.terms()) {
    k = std::max(k, order(c));
    for (const auto& v : b) k = std::max(k, v.order());
  }
  return k;
}

bool mentions_functions(const DiffForm& a) {
  for (const auto& [b, c] : a.terms())
    if (mentions_functions(c)) return true;
  return false;
}

bool is_horizontal(const DiffForm& a) {
  for (const auto& [b, c] : a.terms())
    for (const auto& v : b)
      if (!v.is_base()) return false;
  return true;
}

DiffForm map_coefficients(const DiffForm& a, const std::function<Expr(const Expr&)>& f) {
  DiffForm out(a.degree());
  for (const auto& [b, c] : a.terms()) out.add_term(b, f(c));
  return out;
}

DiffForm wedge(const DiffForm& a, const DiffForm& b) {
  DiffForm out(a.degree() + b.degree());
  for (const auto& [ba, ca] : a.terms()) {
    for (const auto& [bb, cb] : b.terms()) {
      std::vector<Coord> joined = ba;
      joined.insert(joined.end(), bb.begin(), bb.end());
      int sign = sort_basis(joined);
      if (sign == 0) continue;
      Expr c = ca * cb;
      out.add_term(joined, sign > 0 ? c : -c);
    }
  }
  return out;
}

DiffForm differential(const Expr& f) {
  DiffForm out(1);
  for (const auto& c : dependencies(f)) out.add_term({c}, partial(f, c));
  return out;
}

DiffForm ext_d(const DiffForm& a) {
  DiffForm out(a.degree() + 1);
  for (const auto& [b, c] : a.terms()) {
    for (const auto& v : dependencies(c)) {
      std::vector<Coord> joined{v};
      joined.insert(joined.end(), b.begin(), b.end());
      int sign = sort_basis(joined);
      if (sign == 0) continue;
      Expr dc = partial(c, v);
      out.add_term(joined, sign > 0 ? dc : -dc);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

JetField::JetField(std::map<Coord, Expr> components) {
  for (auto& [c, e] : components) set(c, e);
}

Expr JetField::component(const Coord& c) const {
  auto it = components_.find(c);
  return it == components_.end() ? Expr() : it->second;
}

void JetField::set(const Coord& c, const Expr& value) {
  if (value.is_zero()) {
    components_.erase(c);
  } else {
    components_.insert_or_assign(c, value);
  }
}

int JetField::order() const {
  int k = 0;
  for (const auto& [c, e] : components_) k = std::max(k, c.order());
  return k;
}

Expr JetField::apply(const Expr& f) const {
  Expr out;
  for (const auto& c : dependencies(f)) {
    auto it = components_.find(c);
    if (it != components_.end()) out += it->second * partial(f, c);
  }
  return out;
}

JetField bracket(const JetField& a, const JetField& b) {
  std::set<Coord> support;
  for (const auto& [c, e] : a.components()) support.insert(c);
  for (const auto& [c, e] : b.components()) support.insert(c);
  JetField out;
  for (const auto& c : support) out.set(c, a.apply(b.component(c)) - b.apply(a.component(c)));
  return out;
}

JetField operator-(const JetField& a, const JetField& b) {
  JetField out = a;
  for (const auto& [c, e] : b.components()) out.set(c, out.component(c) - e);
  return out;
}

DiffForm contract(const JetField& xi, const DiffForm& a) {
  if (a.degree() == 0) throw DegreeError("contraction needs a form of degree at least 1");
  DiffForm out(a.degree() - 1);
  for (const auto& [b, c] : a.terms()) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      Expr comp = xi.component(b[j]);
      if (comp.is_zero()) continue;
      Basis rest = b;
      rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(j));
      Expr term = comp * c;
      out.add_term(rest, j % 2 == 0 ? term : -term);
    }
  }
  return out;
}

DiffForm lie_derivative(const JetField& xi, const DiffForm& a) {
  DiffForm da = ext_d(a);
  DiffForm out = da.degree() >= 1 ? contract(xi, da) : DiffForm(a.degree());
  if (a.degree() >= 1) out += ext_d(contract(xi, a));
  return out;
}

// ---------------------------------------------------------------------------

PolySection::PolySection(std::vector<Expr> components) : components_(std::move(components)) {
  for (const auto& g : components_)
    for (const auto& c : dependencies(g))
      if (!c.is_base() || mentions_functions(g))
        throw DomainError("section components must be polynomials in the base coordinates");
}

Expr PolySection::jet(int mu, const MultiIndex& index) const {
  Expr out = component(mu);
  for (int i : index) out = partial(out, Coord::base(i));
  return out;
}

std::map<Coord, Expr> PolySection::bindings_for(const Expr& e) const {
  std::map<Coord, Expr> out;
  for (const auto& c : dependencies(e)) {
    if (c.is_base()) {
      out.emplace(c, Expr(c));
    } else {
      if (c.index() > fiber_dim()) throw ContextError("section has no component for fiber index " + std::to_string(c.index()));
      out.emplace(c, jet(c.index(), c.multi()));
    }
  }
  return out;
}

Expr PolySection::restrict(const Expr& e) const { return substitute(e, bindings_for(e)); }

DiffForm pullback_by_section(const DiffForm& a, const PolySection& gamma) {
  DiffForm out(a.degree());
  std::map<Coord, DiffForm> covector_images;
  auto image = [&](const Coord& c) -> const DiffForm& {
    auto it = covector_images.find(c);
    if (it != covector_images.end()) return it->second;
    DiffForm img = c.is_base() ? DiffForm::basis({c}) : differential(gamma.jet(c.index(), c.multi()));
    return covector_images.emplace(c, std::move(img)).first->second;
  };
  for (const auto& [b, c] : a.terms()) {
    DiffForm term(gamma.restrict(c));
    for (const auto& v : b) term = wedge(term, image(v));
    out += term;
  }
  return out;
}

}  // namespace jetvar
