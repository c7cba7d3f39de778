#include "jetvar/prolongation.hpp"

#include <map>
#include <utility>

#include "jetvar/errors.hpp"

namespace jetvar {

ProjectableField::ProjectableField(std::vector<Expr> xi, std::vector<Expr> Xi)
    : xi_(std::move(xi)), Xi_(std::move(Xi)) {
  for (const auto& e : xi_)
    for (const auto& c : dependencies(e))
      if (!c.is_base()) throw DomainError("base components of a projectable field may depend on x only");
  for (const auto& e : Xi_)
    for (const auto& c : dependencies(e))
      if (c.order() > 0) throw DomainError("fiber components of a projectable field may not depend on jet coordinates");
}

ProjectableField ProjectableField::zero(int n, int m) {
  return ProjectableField(std::vector<Expr>(static_cast<std::size_t>(n)), std::vector<Expr>(static_cast<std::size_t>(m)));
}

bool ProjectableField::is_vertical() const {
  for (const auto& e : xi_)
    if (!e.is_zero()) return false;
  return true;
}

JetField ProjectableField::as_jet_field() const {
  JetField out;
  for (int k = 1; k <= base_dim(); ++k) out.set(Coord::base(k), xi(k));
  for (int mu = 1; mu <= fiber_dim(); ++mu) out.set(Coord::fiber(mu), Xi(mu));
  return out;
}

Expr ProjectableField::divergence() const {
  Expr out;
  for (int k = 1; k <= base_dim(); ++k) out += partial(xi(k), Coord::base(k));
  return out;
}

Expr characteristic(const ProjectableField& X, int mu) {
  Expr out = X.Xi(mu);
  for (int i = 1; i <= X.base_dim(); ++i) out -= Expr::z(mu, {i}) * X.xi(i);
  return out;
}

namespace {

class Prolongator {
 public:
  Prolongator(const JetContext& ctx, const ProjectableField& X) : ctx_(ctx), X_(X) {}

  const Expr& component(int mu, const MultiIndex& index) {
    auto key = std::make_pair(mu, index);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Expr value;
    if (index.empty()) {
      value = X_.Xi(mu);
    } else {
      int i0 = index.back();
      MultiIndex I = index.without(i0);
      value = total_derivative(ctx_, component(mu, I), i0);
      for (int l = 1; l <= X_.base_dim(); ++l) {
        Expr dxi = partial(X_.xi(l), Coord::base(i0));
        if (!dxi.is_zero()) value -= Expr::z(mu, I.appended(l)) * dxi;
      }
    }
    return memo_.emplace(key, std::move(value)).first->second;
  }

 private:
  JetContext ctx_;
  const ProjectableField& X_;
  std::map<std::pair<int, MultiIndex>, Expr> memo_;
};

void check_dims(const JetContext& ctx, const ProjectableField& X) {
  if (X.base_dim() != ctx.base_dim() || X.fiber_dim() != ctx.fiber_dim())
    throw DimensionError("vector field dimensions do not match the jet context");
}

}  // namespace

Expr prolongation_component(const JetContext& ctx, const ProjectableField& X, int mu, const MultiIndex& index) {
  check_dims(ctx, X);
  Prolongator p(ctx.bumped(static_cast<int>(index.order())), X);
  return p.component(mu, index);
}

JetField prolong(const JetContext& ctx, const ProjectableField& X, int r) {
  check_dims(ctx, X);
  Prolongator p(ctx.bumped(r), X);
  JetField out = X.as_jet_field();
  for (int mu = 1; mu <= X.fiber_dim(); ++mu)
    for (const auto& I : multi_indices_up_to(ctx.base_dim(), r))
      if (!I.empty()) out.set(Coord::jet(mu, I), p.component(mu, I));
  return out;
}

JetField vertical_part(const JetContext& ctx, const ProjectableField& X, int r) {
  check_dims(ctx, X);
  Prolongator p(ctx.bumped(r + 1), X);
  JetField out;
  for (int mu = 1; mu <= X.fiber_dim(); ++mu) {
    for (const auto& I : multi_indices_up_to(ctx.base_dim(), r)) {
      Expr q = p.component(mu, I);
      for (int i = 1; i <= X.base_dim(); ++i) q -= Expr::z(mu, I.appended(i)) * X.xi(i);
      out.set(Coord::jet(mu, I), q);
    }
  }
  return out;
}

ProjectableField bracket(const ProjectableField& a, const ProjectableField& b) {
  if (a.base_dim() != b.base_dim() || a.fiber_dim() != b.fiber_dim())
    throw DimensionError("bracket of fields with different dimensions");
  JetField c = bracket(a.as_jet_field(), b.as_jet_field());
  std::vector<Expr> xi;
  std::vector<Expr> Xi;
  for (int k = 1; k <= a.base_dim(); ++k) xi.push_back(c.component(Coord::base(k)));
  for (int mu = 1; mu <= a.fiber_dim(); ++mu) Xi.push_back(c.component(Coord::fiber(mu)));
  return ProjectableField(std::move(xi), std::move(Xi));
}

// ---------------------------------------------------------------------------

TensorType::TensorType(std::vector<Variance> slots, int cov_sign) : slots_(std::move(slots)), cov_sign_(cov_sign) {
  if (slots_.empty()) throw DimensionError("tensor type needs at least one slot");
  if (cov_sign != 1 && cov_sign != -1) throw DomainError("cov_sign must be +1 or -1");
}

TensorType TensorType::from_signature(const std::string& signature, int cov_sign) {
  std::vector<Variance> slots;
  for (char ch : signature) {
    if (ch == '+') {
      slots.push_back(Variance::Contravariant);
    } else if (ch == '-') {
      slots.push_back(Variance::Covariant);
    } else {
      throw DomainError(std::string("variance marks are '+' or '-', got '") + ch + "'");
    }
  }
  return TensorType(std::move(slots), cov_sign);
}

std::string TensorType::signature() const {
  std::string out;
  for (auto v : slots_) out += v == Variance::Contravariant ? '+' : '-';
  return out;
}

int TensorType::fiber_dim(int n) const {
  int m = 1;
  for (std::size_t t = 0; t < slots_.size(); ++t) m *= n;
  return m;
}

std::vector<int> TensorType::label(int n, int mu) const {
  std::vector<int> out(slots_.size());
  int rest = mu - 1;
  for (std::size_t t = slots_.size(); t-- > 0;) {
    out[t] = rest % n + 1;
    rest /= n;
  }
  return out;
}

int TensorType::fiber_index(int n, const std::vector<int>& label) const {
  int mu = 0;
  for (int a : label) mu = mu * n + (a - 1);
  return mu + 1;
}

SigmaConstants::SigmaConstants(const TensorType& type, int n) : n_(n), m_(type.fiber_dim(n)) {
  values_.assign(static_cast<std::size_t>(m_ * n_ * m_ * n_), 0);
  for (int A = 1; A <= m_; ++A) {
    auto a = type.label(n, A);
    for (int B = 1; B <= m_; ++B) {
      auto b = type.label(n, B);
      for (int t = 0; t < type.rank(); ++t) {
        bool others_equal = true;
        for (int u = 0; u < type.rank(); ++u)
          if (u != t && a[static_cast<std::size_t>(u)] != b[static_cast<std::size_t>(u)]) others_equal = false;
        if (!others_equal) continue;
        int at = a[static_cast<std::size_t>(t)];
        int bt = b[static_cast<std::size_t>(t)];
        if (type.slots()[static_cast<std::size_t>(t)] == Variance::Contravariant) {
          values_[static_cast<std::size_t>((((A - 1) * n_ + (at - 1)) * m_ + (B - 1)) * n_ + (bt - 1))] += 1;
        } else {
          values_[static_cast<std::size_t>((((A - 1) * n_ + (bt - 1)) * m_ + (B - 1)) * n_ + (at - 1))] +=
              type.cov_sign();
        }
      }
    }
  }
}

int SigmaConstants::operator()(int A, int p, int B, int q) const {
  return values_[static_cast<std::size_t>((((A - 1) * n_ + (p - 1)) * m_ + (B - 1)) * n_ + (q - 1))];
}

ProjectableField tensor_lift(const JetContext& ctx, const TensorType& type, const std::vector<Expr>& xi) {
  int n = ctx.base_dim();
  if (static_cast<int>(xi.size()) != n) throw DimensionError("base field must have n components");
  if (ctx.fiber_dim() != type.fiber_dim(n))
    throw DimensionError("fiber dimension " + std::to_string(ctx.fiber_dim()) + " does not match tensor type " +
                         type.signature() + " over n = " + std::to_string(n));
  SigmaConstants sigma(type, n);
  int m = ctx.fiber_dim();
  std::vector<Expr> Xi(static_cast<std::size_t>(m));
  for (int p = 1; p <= n; ++p) {
    for (int q = 1; q <= n; ++q) {
      Expr d = partial(xi[static_cast<std::size_t>(p - 1)], Coord::base(q));
      if (d.is_zero()) continue;
      for (int A = 1; A <= m; ++A)
        for (int B = 1; B <= m; ++B)
          if (int s = sigma(A, p, B, q); s != 0) Xi[static_cast<std::size_t>(A - 1)] += scaled(d, s) * Expr::y(B);
    }
  }
  return ProjectableField(xi, std::move(Xi));
}

}  // namespace jetvar
