#pragma once

#include <string>
#include <vector>

#include "jetvar/context.hpp"
#include "jetvar/expr.hpp"
#include "jetvar/forms.hpp"

namespace jetvar {

/// Pi-projectable vector field xi_k d/dx_k + Xi_mu d/dy_mu on Y.
class ProjectableField {
 public:
  /// Throws DomainError unless every xi_k depends on base coordinates only and
  /// every Xi_mu on base and order-0 fiber coordinates.
  ProjectableField(std::vector<Expr> xi, std::vector<Expr> Xi);
  static ProjectableField zero(int n, int m);

  int base_dim() const noexcept { return static_cast<int>(xi_.size()); }
  int fiber_dim() const noexcept { return static_cast<int>(Xi_.size()); }
  const Expr& xi(int k) const { return xi_.at(static_cast<std::size_t>(k - 1)); }
  const Expr& Xi(int mu) const { return Xi_.at(static_cast<std::size_t>(mu - 1)); }
  const std::vector<Expr>& base_part() const noexcept { return xi_; }
  const std::vector<Expr>& fiber_part() const noexcept { return Xi_; }
  bool is_vertical() const;

  /// The field as a JetField on J^0.
  JetField as_jet_field() const;
  /// div xi = sum_k dxi_k/dx_k.
  Expr divergence() const;

  friend bool operator==(const ProjectableField&, const ProjectableField&) = default;

 private:
  std::vector<Expr> xi_;
  std::vector<Expr> Xi_;
};

/// Characteristic Q_mu = Xi_mu - z_{i mu} xi_i.
Expr characteristic(const ProjectableField& X, int mu);

/// Component Xi_{I mu} of the r-th prolongation (I may be empty).
Expr prolongation_component(const JetContext& ctx, const ProjectableField& X, int mu, const MultiIndex& index);

/// j^r X as a JetField on J^r.
JetField prolong(const JetContext& ctx, const ProjectableField& X, int r);

/// Vertical part of j^r X: components Q_{I mu} = Xi_{I mu} - z_{(I u i) mu} xi_i
/// for |I| <= r, living on J^{r+1}.
JetField vertical_part(const JetContext& ctx, const ProjectableField& X, int r);

ProjectableField bracket(const ProjectableField& a, const ProjectableField& b);

enum class Variance { Contravariant, Covariant };

/// Variance signature of a tensor bundle over X.
class TensorType {
 public:
  explicit TensorType(std::vector<Variance> slots, int cov_sign = 1);
  /// '+' for a contravariant slot, '-' for a covariant one, e.g. "+-".
  static TensorType from_signature(const std::string& signature, int cov_sign = 1);

  const std::vector<Variance>& slots() const noexcept { return slots_; }
  int rank() const noexcept { return static_cast<int>(slots_.size()); }
  int cov_sign() const noexcept { return cov_sign_; }
  std::string signature() const;
  /// n^rank.
  int fiber_dim(int n) const;
  /// Multi-label (a_1..a_rank) of the fiber index mu, row-major with a_1 slowest.
  std::vector<int> label(int n, int mu) const;
  int fiber_index(int n, const std::vector<int>& label) const;

 private:
  std::vector<Variance> slots_;
  int cov_sign_;
};

/// Dense table of sigma_{A p}^{B q}.
class SigmaConstants {
 public:
  SigmaConstants(const TensorType& type, int n);

  int base_dim() const noexcept { return n_; }
  int fiber_dim() const noexcept { return m_; }
  int operator()(int A, int p, int B, int q) const;

 private:
  int n_;
  int m_;
  std::vector<int> values_;
};

/// xi_sigma = xi_i d/dx_i + sigma_{Ap}^{Bq} dxi_p/dx_q y_B d/dy_A. The context
/// fiber dimension must equal n^rank.
ProjectableField tensor_lift(const JetContext& ctx, const TensorType& type, const std::vector<Expr>& xi);

}  // namespace jetvar
