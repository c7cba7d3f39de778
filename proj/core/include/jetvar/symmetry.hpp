#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "jetvar/context.hpp"
#include "jetvar/expr.hpp"
#include "jetvar/forms.hpp"
#include "jetvar/prolongation.hpp"
#include "jetvar/variational.hpp"

namespace jetvar {

/// L_Xi = <dL, j^1 Xi> + L div xi for a Lagrangian of order <= 1.
Expr lie_lagrangian(const JetContext& ctx, const Expr& L, const ProjectableField& X);

struct NoetherResult {
  bool invariant;
  Expr residual;
};

NoetherResult noether_check(const JetContext& ctx, const Expr& L, const ProjectableField& X);

struct SymmetryVerdict {
  bool invariant;
  bool generalized_invariant;
  Expr lie;
  EulerSystem lie_euler;
  /// Closed n-form eta on Y with h(eta) = L_Xi omega_0, when one could be built.
  std::optional<DiffForm> certificate;
};

SymmetryVerdict generalized_invariance_check(const JetContext& ctx, const Expr& L, const ProjectableField& X);

struct ConservedCurrent {
  std::vector<Expr> J;
  std::vector<Expr> Q;
  EulerSystem E;
  Expr lie;
  /// sum_k D_k J_k.
  Expr divergence;
  /// sum_k D_k J_k + sum_mu E_mu Q_mu - L_Xi; zero off shell.
  Expr residual;
};

ConservedCurrent conserved_current(const JetContext& ctx, const Expr& L, const ProjectableField& X);

/// E(L) followed by E(L_Xi) for each Xi in V.
std::vector<EulerSystem> symmetric_system(const JetContext& ctx, const Expr& L, const std::vector<ProjectableField>& V);

/// Lie derivative of the Euler form sum E_sigma dy_sigma ^ omega_0 along j^{2r} X.
DiffForm euler_form_lie_derivative(const JetContext& ctx, const Expr& L, const ProjectableField& X);

/// W_l = E_mu z_{l mu} + D_q(E_mu sigma_{mu l}^{nu q} y_nu), l = 1..n.
std::vector<Expr> weak_critical_system(const JetContext& ctx, const Expr& L, const TensorType& type);

/// Coefficients of E_C(L_{xi_sigma}) with respect to an opaque base field
/// xi_p(x), keyed by (C, p, derivative multi-index). Values are symmetrized:
/// the coefficient of d_J xi_p is spread evenly over the orderings of J.
struct CovarianceTable {
  int n;
  int m;
  std::vector<FunctionSymbol> xi;
  /// E_C(L_{xi_sigma}) with opaque xi.
  std::vector<Expr> lie_euler;
  std::map<std::tuple<int, int, MultiIndex>, Expr> coefficients;

  /// Symmetrized coefficient a_{p, J}^C for any ordering of J (|J| <= 3).
  Expr coefficient(int C, int p, const std::vector<int>& derivs) const;
  bool is_zero() const;
};

CovarianceTable covariance_system(const JetContext& ctx, const Expr& L, const TensorType& type);

bool general_covariance_check(const JetContext& ctx, const Expr& L, const TensorType& type);

}  // namespace jetvar
