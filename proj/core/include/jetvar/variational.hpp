#pragma once

#include <optional>
#include <tuple>
#include <vector>

#include "jetvar/context.hpp"
#include "jetvar/expr.hpp"
#include "jetvar/forms.hpp"
#include "jetvar/prolongation.hpp"

namespace jetvar {

// Lagrangians are plain Exprs: the density L of lambda = L * omega_0 with
// omega_0 = dx_1 ^ ... ^ dx_n.

/// Euler expressions E_mu, one per fiber index (1-based access).
struct EulerSystem {
  std::vector<Expr> E;

  const Expr& operator[](int mu) const { return E.at(static_cast<std::size_t>(mu - 1)); }
  int size() const noexcept { return static_cast<int>(E.size()); }
  bool is_zero() const;
  /// sum_mu E_mu dy_mu ^ omega_0 (equal to sum E_mu omega_mu ^ omega_0).
  DiffForm form(int n) const;

  friend bool operator==(const EulerSystem&, const EulerSystem&) = default;
};

/// Horizontalization: every dzeta becomes sum_k (D_k zeta) dx_k. Zero above degree n.
DiffForm horizontalize(const JetContext& ctx, const DiffForm& rho);
/// rho - h(rho).
DiffForm pseudovertical(const JetContext& ctx, const DiffForm& rho);
/// Extension of h to (n+1)-forms keeping one contact slot.
DiffForm h_tilde(const JetContext& ctx, const DiffForm& rho);
/// omega_0-coefficient of h(rho) for an n-form rho.
Expr horizontal_density(const JetContext& ctx, const DiffForm& rho);

/// Contact 1-form dc - sum_k z_{(I u k) mu} dx_k for c = z_{I mu} (c must be a jet coordinate).
DiffForm contact_form(int n, const Coord& c);
/// omega_0 with the covector in slot i replaced by dc.
DiffForm slot_form(int n, int i, const Coord& c);

EulerSystem euler(const JetContext& ctx, const Expr& L);

/// Lepage equivalent Theta(lambda) of a Lagrangian of order <= 2.
DiffForm lepage_theta(const JetContext& ctx, const Expr& L);
/// Multilinear Lepage equivalent Delta(lambda) of a Lagrangian of order <= 1.
DiffForm lepage_delta(const JetContext& ctx, const Expr& L);

struct CanonicalSplit {
  Expr G;
  /// A[k-1][nu-1] = A_{k nu}.
  std::vector<std::vector<Expr>> A;
  EulerSystem E;

  const Expr& a(int k, int nu) const {
    return A.at(static_cast<std::size_t>(k - 1)).at(static_cast<std::size_t>(nu - 1));
  }
};

/// Decomposition of h~(d rho) for an n-form on J^1 without dz covectors.
CanonicalSplit canonical_split(const JetContext& ctx, const DiffForm& rho);

struct LepageVerdict {
  bool lepagean;
  /// (k, nu, A_{k nu}) for every nonzero A.
  std::vector<std::tuple<int, int, Expr>> offending;
};

LepageVerdict is_lepagean(const JetContext& ctx, const DiffForm& rho);

bool null_test(const JetContext& ctx, const Expr& L);
/// Density of h(d eta) for an (n-1)-form eta on Y.
Expr null_from_form(const JetContext& ctx, const DiffForm& eta);
/// Closed n-form rho on Y with h(rho) = L omega_0, for a null Lagrangian L.
DiffForm null_certificate(const JetContext& ctx, const Expr& L);

/// omega_0-coefficient of the Lie derivative of L omega_0 along j^r X, r = order(L).
Expr lie_density(const JetContext& ctx, const Expr& L, const ProjectableField& X);

struct VariationSplit {
  EulerSystem euler;
  std::vector<Expr> Q;
  std::vector<Expr> J;
  Expr lie;

  /// sum E_mu Q_mu + sum D_k J_k - L_Xi; zero by construction.
  Expr residual(const JetContext& ctx) const;
};

/// First variation formula for a Lagrangian of order <= 2.
VariationSplit first_variation(const JetContext& ctx, const Expr& L, const ProjectableField& X);

/// E_mu evaluated along the prolongation of a polynomial section.
std::vector<Expr> extremal_residual(const JetContext& ctx, const Expr& L, const PolySection& gamma);

}  // namespace jetvar
