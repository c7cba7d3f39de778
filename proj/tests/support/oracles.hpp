#pragma once

#include "jetvar/jetvar.hpp"

namespace jetvar::testing {

/// Euler-Lagrange derivative of L with respect to an opaque function symbol
/// phi(x_1..x_n): sum_J (-1)^|J| D_J(dL/d(d_J phi)).
Expr functional_derivative(const JetContext& ctx, const Expr& L, const FunctionSymbol& phi, int max_deriv);

/// h(rho) by expanding every covector into its horizontal differential and
/// collecting the dx_1..dx_n coefficient through explicit permutations.
Expr brute_force_density(int n, const DiffForm& rho);

/// Direct evaluation of the Euler expression of order <= 2 Lagrangians using
/// the explicit three-term formula.
EulerSystem euler_second_order(const JetContext& ctx, const Expr& L);

/// The coordinate field d/dc.
JetField basis_field(const Coord& c);

}  // namespace jetvar::testing
