#include "jetvar/symmetry.hpp"

#include <algorithm>

#include "jetvar/errors.hpp"

namespace jetvar {

namespace {

void require_first_order(const Expr& L, const char* what) {
  if (order(L) > 1)
    throw DomainError(std::string(what) + " needs a Lagrangian of order at most 1, got order " + std::to_string(order(L)));
}

}  // namespace

Expr lie_lagrangian(const JetContext& ctx, const Expr& L, const ProjectableField& X) {
  require_first_order(L, "lie_lagrangian");
  int n = ctx.base_dim();
  int m = ctx.fiber_dim();
  JetContext c = ctx.bumped(1);
  Expr out = L * X.divergence();
  for (int k = 1; k <= n; ++k) out += X.xi(k) * partial(L, Coord::base(k));
  for (int mu = 1; mu <= m; ++mu) {
    out += X.Xi(mu) * partial(L, Coord::fiber(mu));
    for (int i = 1; i <= n; ++i) {
      Expr dL = partial(L, Coord::jet(mu, {i}));
      if (!dL.is_zero()) out += prolongation_component(c, X, mu, {i}) * dL;
    }
  }
  return out;
}

NoetherResult noether_check(const JetContext& ctx, const Expr& L, const ProjectableField& X) {
  Expr r = lie_lagrangian(ctx, L, X);
  return {r.is_zero(), r};
}

SymmetryVerdict generalized_invariance_check(const JetContext& ctx, const Expr& L, const ProjectableField& X) {
  SymmetryVerdict out;
  out.lie = lie_lagrangian(ctx, L, X);
  out.invariant = out.lie.is_zero();
  out.lie_euler = euler(ctx, out.lie);
  out.generalized_invariant = out.lie_euler.is_zero();
  if (out.generalized_invariant) {
    try {
      out.certificate = null_certificate(ctx, out.lie);
    } catch (const Error&) {
      out.certificate.reset();
    }
  }
  return out;
}

ConservedCurrent conserved_current(const JetContext& ctx, const Expr& L, const ProjectableField& X) {
  require_first_order(L, "conserved_current");
  int n = ctx.base_dim();
  int m = ctx.fiber_dim();
  JetContext c = ctx.bumped(3);
  ConservedCurrent out;
  out.E = euler(c, L);
  out.lie = lie_lagrangian(c, L, X);
  for (int mu = 1; mu <= m; ++mu) out.Q.push_back(characteristic(X, mu));
  for (int k = 1; k <= n; ++k) {
    Expr J = L * X.xi(k);
    for (int mu = 1; mu <= m; ++mu) J += partial(L, Coord::jet(mu, {k})) * out.Q[static_cast<std::size_t>(mu - 1)];
    out.divergence += total_derivative(c, J, k);
    out.J.push_back(std::move(J));
  }
  out.residual = out.divergence - out.lie;
  for (int mu = 1; mu <= m; ++mu) out.residual += out.E[mu] * out.Q[static_cast<std::size_t>(mu - 1)];
  return out;
}

std::vector<EulerSystem> symmetric_system(const JetContext& ctx, const Expr& L, const std::vector<ProjectableField>& V) {
  std::vector<EulerSystem> out;
  out.push_back(euler(ctx, L));
  for (const auto& X : V) out.push_back(euler(ctx, lie_lagrangian(ctx, L, X)));
  return out;
}

DiffForm euler_form_lie_derivative(const JetContext& ctx, const Expr& L, const ProjectableField& X) {
  int r = order(L);
  JetContext c = ctx.bumped(2 * r + 1);
  EulerSystem E = euler(c, L);
  return lie_derivative(prolong(c, X, 2 * r), E.form(ctx.base_dim()));
}

std::vector<Expr> weak_critical_system(const JetContext& ctx, const Expr& L, const TensorType& type) {
  int n = ctx.base_dim();
  int m = ctx.fiber_dim();
  if (m != type.fiber_dim(n))
    throw DimensionError("fiber dimension " + std::to_string(m) + " does not match tensor type " + type.signature());
  if (order(L) > 2) throw DomainError("weak critical equations need a Lagrangian of order at most 2");
  JetContext c = ctx.bumped(2 * order(L) + 1);
  EulerSystem E = euler(c, L);
  SigmaConstants sigma(type, n);
  std::vector<Expr> out;
  for (int l = 1; l <= n; ++l) {
    Expr W;
    for (int mu = 1; mu <= m; ++mu) W += E[mu] * Expr::z(mu, {l});
    for (int q = 1; q <= n; ++q) {
      Expr inner;
      for (int mu = 1; mu <= m; ++mu)
        for (int nu = 1; nu <= m; ++nu)
          if (int s = sigma(mu, l, nu, q); s != 0) inner += scaled(E[mu], s) * Expr::y(nu);
      if (!inner.is_zero()) W += total_derivative(c, inner, q);
    }
    out.push_back(std::move(W));
  }
  return out;
}

Expr CovarianceTable::coefficient(int C, int p, const std::vector<int>& derivs) const {
  auto it = coefficients.find({C, p, MultiIndex(std::span<const int>(derivs))});
  return it == coefficients.end() ? Expr() : it->second;
}

bool CovarianceTable::is_zero() const { return coefficients.empty(); }

CovarianceTable covariance_system(const JetContext& ctx, const Expr& L, const TensorType& type) {
  require_first_order(L, "covariance_system");
  int n = ctx.base_dim();
  if (ctx.fiber_dim() != type.fiber_dim(n))
    throw DimensionError("fiber dimension " + std::to_string(ctx.fiber_dim()) + " does not match tensor type " +
                         type.signature());
  std::vector<Coord> base_args;
  for (int i = 1; i <= n; ++i) base_args.push_back(Coord::base(i));

  CovarianceTable out{n, ctx.fiber_dim(), {}, {}, {}};
  JetContext c = ctx.bumped(3);
  std::vector<Expr> xi;
  for (int p = 1; p <= n; ++p) {
    std::string name = "xi" + std::to_string(p);
    while (c.find_function(name)) name = "_" + name;
    FunctionSymbol f = make_function_symbol(name, base_args);
    c = c.with_function(f);
    out.xi.push_back(f);
    xi.push_back(Expr::function(f));
  }
  ProjectableField lift = tensor_lift(c, type, xi);
  Expr lie = lie_lagrangian(c, L, lift);
  EulerSystem E = euler(c, lie);

  auto is_xi = [&](const Atom& a) {
    return a.is_function() &&
           std::any_of(out.xi.begin(), out.xi.end(), [&](const FunctionSymbol& f) { return f->name == a.symbol()->name; });
  };
  for (int C = 1; C <= out.m; ++C) {
    out.lie_euler.push_back(E[C]);
    for (const auto& [key, coeff] : split_by_atoms(E[C], is_xi)) {
      if (key.empty() || key.size() != 1 || key.front().power != 1)
        throw InternalError("E(L_xi) is not linear in the base field");
      const Atom& a = key.front().atom;
      if (a.deriv().order() > 3) throw InternalError("E(L_xi) involves derivatives of the base field above order 3");
      int p = static_cast<int>(std::find_if(out.xi.begin(), out.xi.end(),
                                            [&](const FunctionSymbol& f) { return f->name == a.symbol()->name; }) -
                               out.xi.begin()) + 1;
      out.coefficients.emplace(std::make_tuple(C, p, a.deriv()), scaled(coeff, Rational(1, static_cast<long>(a.deriv().orderings()))));
    }
  }
  return out;
}

bool general_covariance_check(const JetContext& ctx, const Expr& L, const TensorType& type) {
  return covariance_system(ctx, L, type).is_zero();
}

}  // namespace jetvar
