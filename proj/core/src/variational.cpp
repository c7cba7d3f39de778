#include "jetvar/variational.hpp"

#include <algorithm>
#include <numeric>

#include "jetvar/errors.hpp"
#include "jetvar/format.hpp"

namespace jetvar {

namespace {

int permutation_sign(const std::vector<int>& perm) {
  int inversions = 0;
  for (std::size_t a = 0; a < perm.size(); ++a)
    for (std::size_t b = a + 1; b < perm.size(); ++b)
      if (perm[a] > perm[b]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

long factorial(int p) {
  long out = 1;
  for (int k = 2; k <= p; ++k) out *= k;
  return out;
}

std::vector<std::vector<int>> subsets(int n, int p) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(current.size()) == p) {
      out.push_back(current);
      return;
    }
    for (int k = start; k <= n; ++k) {
      current.push_back(k);
      self(self, k + 1);
      current.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

/// Tuples in [1, m]^p with pairwise distinct entries.
std::vector<std::vector<int>> injective_tuples(int m, int p) {
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  auto rec = [&](auto&& self) -> void {
    if (static_cast<int>(current.size()) == p) {
      out.push_back(current);
      return;
    }
    for (int v = 1; v <= m; ++v) {
      if (std::find(current.begin(), current.end(), v) != current.end()) continue;
      current.push_back(v);
      self(self);
      current.pop_back();
    }
  };
  rec(rec);
  return out;
}

/// Horizontal differential of a coordinate, sum_k D_k(c) dx_k.
DiffForm horizontal_differential(int n, const Coord& c) {
  if (c.is_base()) return DiffForm::basis({c});
  DiffForm out(1);
  for (int k = 1; k <= n; ++k) out.add_term({Coord::base(k)}, Expr(c.raised(k)));
  return out;
}

void require_order_capacity(const JetContext& ctx, int needed) { (void)ctx.bumped(needed); }

Expr first_order_euler(const JetContext& ctx, const Expr& G, int nu) {
  Expr E = partial(G, Coord::fiber(nu));
  for (int k = 1; k <= ctx.base_dim(); ++k) E -= total_derivative(ctx, partial(G, Coord::jet(nu, {k})), k);
  return E;
}

}  // namespace

bool EulerSystem::is_zero() const {
  return std::all_of(E.begin(), E.end(), [](const Expr& e) { return e.is_zero(); });
}

DiffForm EulerSystem::form(int n) const {
  DiffForm out(n + 1);
  DiffForm omega0 = DiffForm::volume(n);
  for (int mu = 1; mu <= size(); ++mu) out += (*this)[mu] * wedge(DiffForm::dy(mu), omega0);
  return out;
}

DiffForm horizontalize(const JetContext& ctx, const DiffForm& rho) {
  int n = ctx.base_dim();
  if (rho.degree() > n) return DiffForm(rho.degree());
  require_order_capacity(ctx, order(rho) + 1);
  DiffForm out(rho.degree());
  std::map<Coord, DiffForm> cache;
  for (const auto& [b, c] : rho.terms()) {
    DiffForm term(c);
    for (const auto& v : b) {
      auto it = cache.find(v);
      if (it == cache.end()) it = cache.emplace(v, horizontal_differential(n, v)).first;
      term = wedge(term, it->second);
      if (term.is_zero()) break;
    }
    out += term;
  }
  return out;
}

DiffForm pseudovertical(const JetContext& ctx, const DiffForm& rho) { return rho - horizontalize(ctx, rho); }

DiffForm h_tilde(const JetContext& ctx, const DiffForm& rho) {
  int n = ctx.base_dim();
  if (rho.degree() != n + 1)
    throw DegreeError("h~ needs an (n+1)-form, got degree " + std::to_string(rho.degree()));
  require_order_capacity(ctx, order(rho) + 1);
  DiffForm out(n + 1);
  for (const auto& [b, c] : rho.terms()) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      DiffForm term = DiffForm::basis({b[j]}, j % 2 == 0 ? c : -c);
      for (std::size_t l = 0; l < b.size() && !term.is_zero(); ++l)
        if (l != j) term = wedge(term, horizontal_differential(n, b[l]));
      out += term;
    }
  }
  return out;
}

Expr horizontal_density(const JetContext& ctx, const DiffForm& rho) {
  int n = ctx.base_dim();
  if (rho.degree() != n) throw DegreeError("expected an n-form, got degree " + std::to_string(rho.degree()));
  DiffForm h = horizontalize(ctx, rho);
  Basis vol;
  for (int i = 1; i <= n; ++i) vol.push_back(Coord::base(i));
  return h.coefficient(vol);
}

DiffForm contact_form(int n, const Coord& c) {
  if (c.is_base()) throw DomainError("contact forms are attached to fiber and jet coordinates");
  DiffForm out = DiffForm::basis({c});
  for (int k = 1; k <= n; ++k) out.add_term({Coord::base(k)}, -Expr(c.raised(k)));
  return out;
}

DiffForm slot_form(int n, int i, const Coord& c) {
  std::vector<Coord> covectors;
  for (int k = 1; k <= n; ++k) covectors.push_back(k == i ? c : Coord::base(k));
  return DiffForm::basis(covectors);
}

EulerSystem euler(const JetContext& ctx, const Expr& L) {
  int r = order(L);
  JetContext c = ctx.bumped(2 * r);
  EulerSystem out;
  for (int sigma = 1; sigma <= ctx.fiber_dim(); ++sigma) {
    Expr E;
    for (const auto& I : multi_indices_up_to(ctx.base_dim(), r)) {
      Expr P = partial(L, Coord::jet(sigma, I));
      if (P.is_zero()) continue;
      Expr term = total_derivative(c, P, I);
      E += I.order() % 2 == 0 ? term : -term;
    }
    out.E.push_back(std::move(E));
  }
  return out;
}

DiffForm lepage_theta(const JetContext& ctx, const Expr& L) {
  int r = order(L);
  if (r > 2) throw DomainError("Theta is defined for Lagrangians of order at most 2, got order " + std::to_string(r));
  int n = ctx.base_dim();
  JetContext c = ctx.bumped(std::max(r + 1, 1));
  DiffForm omega0 = DiffForm::volume(n);
  auto contact_slot = [&](int i, const Coord& v) {
    return slot_form(n, i, v) - Expr(v.raised(i)) * omega0;
  };
  Rational half(1, 2);
  DiffForm out = L * omega0;
  for (int sigma = 1; sigma <= ctx.fiber_dim(); ++sigma) {
    for (int i = 1; i <= n; ++i) {
      Expr f = partial(L, Coord::jet(sigma, {i}));
      if (r == 2) {
        f -= total_derivative(c, partial(L, Coord::jet(sigma, {i, i})), i);
        for (int j = 1; j <= n; ++j)
          if (j != i) f -= scaled(total_derivative(c, partial(L, Coord::jet(sigma, {i, j})), j), half);
      }
      if (!f.is_zero()) out += f * contact_slot(i, Coord::fiber(sigma));
      if (r < 2) continue;
      for (int j = 1; j <= n; ++j) {
        Expr P = partial(L, Coord::jet(sigma, {i, j}));
        if (P.is_zero()) continue;
        if (i != j) P = scaled(P, half);
        out += P * contact_slot(i, Coord::jet(sigma, {j}));
      }
    }
  }
  return out;
}

DiffForm lepage_delta(const JetContext& ctx, const Expr& L) {
  int r = order(L);
  if (r > 1) throw DomainError("Delta is defined for first-order Lagrangians, got order " + std::to_string(r));
  int n = ctx.base_dim();
  int m = ctx.fiber_dim();

  struct Entry {
    std::vector<int> S;
    std::vector<int> sigma;
    Expr f;
    std::vector<Coord> vars;  // z_{s_i sigma_i}
  };
  std::vector<Entry> entries;

  for (int p = std::min(n, m); p >= 1; --p) {
    std::size_t higher = entries.size();
    std::vector<int> perm(static_cast<std::size_t>(p));
    for (const auto& S : subsets(n, p)) {
      for (const auto& sigma : injective_tuples(m, p)) {
        Expr acc;
        std::iota(perm.begin(), perm.end(), 0);
        do {
          std::vector<Coord> vars;
          for (int i = 0; i < p; ++i)
            vars.push_back(Coord::jet(sigma[static_cast<std::size_t>(i)], {S[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])]}));
          Expr d = L;
          for (const auto& v : vars) {
            d = partial(d, v);
            if (d.is_zero()) break;
          }
          for (std::size_t h = 0; h < higher; ++h) {
            const Entry& e = entries[h];
            Expr rest = e.f;
            for (const auto& v : e.vars)
              if (std::find(vars.begin(), vars.end(), v) == vars.end()) rest *= Expr(v);
            bool covered = std::all_of(vars.begin(), vars.end(), [&](const Coord& v) {
              return std::find(e.vars.begin(), e.vars.end(), v) != e.vars.end();
            });
            if (covered) d -= rest;
          }
          acc += permutation_sign(perm) > 0 ? d : -d;
        } while (std::next_permutation(perm.begin(), perm.end()));
        acc = scaled(acc, Rational(1, factorial(p)));
        if (acc.is_zero()) continue;
        Entry e{S, sigma, acc, {}};
        for (int i = 0; i < p; ++i)
          e.vars.push_back(Coord::jet(sigma[static_cast<std::size_t>(i)], {S[static_cast<std::size_t>(i)]}));
        entries.push_back(std::move(e));
      }
    }
  }

  Expr f0 = L;
  DiffForm out(n);
  for (const auto& e : entries) {
    Expr prod = e.f;
    for (const auto& v : e.vars) prod *= Expr(v);
    f0 -= prod;
    std::vector<Coord> covectors;
    for (int k = 1, i = 0; k <= n; ++k) {
      if (i < static_cast<int>(e.S.size()) && e.S[static_cast<std::size_t>(i)] == k) {
        covectors.push_back(Coord::fiber(e.sigma[static_cast<std::size_t>(i)]));
        ++i;
      } else {
        covectors.push_back(Coord::base(k));
      }
    }
    out += DiffForm::basis(covectors, scaled(e.f, Rational(1, factorial(static_cast<int>(e.S.size())))));
  }
  out += f0 * DiffForm::volume(n);
  return out;
}

CanonicalSplit canonical_split(const JetContext& ctx, const DiffForm& rho) {
  int n = ctx.base_dim();
  int m = ctx.fiber_dim();
  if (rho.degree() != n) throw DegreeError("canonical split needs an n-form, got degree " + std::to_string(rho.degree()));
  for (const auto& [b, c] : rho.terms()) {
    for (const auto& v : b)
      if (v.order() > 0) throw HorizontalityError("form contains the covector d" + to_string(v));
    if (order(c) > 1) throw DomainError("canonical split needs coefficients on J^1");
  }
  JetContext c2 = ctx.bumped(2);
  CanonicalSplit out;
  out.G = horizontal_density(c2, rho);
  out.A.assign(static_cast<std::size_t>(n), std::vector<Expr>(static_cast<std::size_t>(m)));
  for (int k = 1; k <= n; ++k) {
    for (int nu = 1; nu <= m; ++nu) {
      Coord z = Coord::jet(nu, {k});
      DiffForm d = map_coefficients(rho, [&](const Expr& e) { return partial(e, z); });
      out.A[static_cast<std::size_t>(k - 1)][static_cast<std::size_t>(nu - 1)] = horizontal_density(c2, d);
    }
  }
  for (int nu = 1; nu <= m; ++nu) out.E.E.push_back(first_order_euler(c2, out.G, nu));

  DiffForm omega0 = DiffForm::volume(n);
  DiffForm rebuilt(n + 1);
  for (int nu = 1; nu <= m; ++nu) {
    Expr coeff = out.E[nu];
    for (int k = 1; k <= n; ++k) {
      const Expr& A = out.a(k, nu);
      if (A.is_zero()) continue;
      coeff += total_derivative(c2, A, k);
      rebuilt += A * wedge(DiffForm::dz(nu, {k}), omega0);
    }
    rebuilt += coeff * wedge(DiffForm::dy(nu), omega0);
  }
  if (!(rebuilt == h_tilde(c2, ext_d(rho))))
    throw InternalError("canonical decomposition does not reproduce h~(d rho)");
  return out;
}

LepageVerdict is_lepagean(const JetContext& ctx, const DiffForm& rho) {
  CanonicalSplit split = canonical_split(ctx, rho);
  LepageVerdict out{true, {}};
  for (int k = 1; k <= ctx.base_dim(); ++k)
    for (int nu = 1; nu <= ctx.fiber_dim(); ++nu)
      if (!split.a(k, nu).is_zero()) {
        out.lepagean = false;
        out.offending.emplace_back(k, nu, split.a(k, nu));
      }
  return out;
}

bool null_test(const JetContext& ctx, const Expr& L) { return euler(ctx, L).is_zero(); }

Expr null_from_form(const JetContext& ctx, const DiffForm& eta) {
  int n = ctx.base_dim();
  if (eta.degree() != n - 1)
    throw DegreeError("expected an (n-1)-form, got degree " + std::to_string(eta.degree()));
  if (order(eta) > 0) throw DomainError("form must live on Y (order-0 coefficients and covectors)");
  return horizontal_density(ctx.bumped(1), ext_d(eta));
}

DiffForm null_certificate(const JetContext& ctx, const Expr& L) {
  int n = ctx.base_dim();
  // (S, sigma) in S order -> coefficient g
  std::map<std::pair<std::vector<int>, std::vector<int>>, Expr> groups;
  for (const auto& t : L.terms()) {
    std::vector<std::pair<int, int>> columns;  // (s, sigma)
    Monomial rest;
    for (const auto& f : t.monomial) {
      int k = f.atom.order();
      if (k == 0) {
        rest.push_back(f);
        continue;
      }
      Expr single = Expr::from_terms({Term{t.coeff, t.monomial}});
      if (k > 1) throw StructureError("monomial " + to_string(single) + " depends on jets of order above 1");
      if (f.power != 1) throw StructureError("monomial " + to_string(single) + " is not multilinear in the first jets");
      Coord z = f.atom.coord();
      int s = z.multi().front();
      for (const auto& [s2, sigma2] : columns)
        if (s2 == s) throw StructureError("monomial " + to_string(single) + " repeats the base index " + std::to_string(s));
      columns.emplace_back(s, z.index());
    }
    std::sort(columns.begin(), columns.end());
    std::vector<int> S;
    std::vector<int> sigma;
    for (auto [s, mu] : columns) {
      S.push_back(s);
      sigma.push_back(mu);
    }
    groups[{S, sigma}] += Expr::from_terms({Term{t.coeff, std::move(rest)}});
  }
  if (!null_test(ctx, L)) throw DomainError("Lagrangian is not null; no certificate exists");

  DiffForm rho(n);
  for (const auto& [key, g] : groups) {
    const auto& [S, sigma] = key;
    int p = static_cast<int>(S.size());
    if (p == 0) {
      rho += g * DiffForm::volume(n);
      continue;
    }
    // coefficient of omega^S_tau is Alt(g)_tau / p!, spread over the orbit of sigma
    std::vector<int> perm(static_cast<std::size_t>(p));
    std::iota(perm.begin(), perm.end(), 0);
    Rational weight(1, factorial(p) * factorial(p));
    do {
      std::vector<Coord> covectors;
      for (int k = 1; k <= n; ++k) {
        auto it = std::find(S.begin(), S.end(), k);
        if (it == S.end()) {
          covectors.push_back(Coord::base(k));
        } else {
          auto i = static_cast<std::size_t>(it - S.begin());
          covectors.push_back(Coord::fiber(sigma[static_cast<std::size_t>(perm[i])]));
        }
      }
      // omega^S_{sigma o perm} carries sgn(perm) * g / (p!)^2 from this group
      Expr c = scaled(g, weight * permutation_sign(perm));
      rho += DiffForm::basis(covectors, c);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  if (!ext_d(rho).is_zero()) throw InternalError("certificate is not closed");
  DiffForm target = L * DiffForm::volume(n);
  if (!(horizontalize(ctx.bumped(1), rho) == target))
    throw InternalError("certificate does not horizontalize to the Lagrangian");
  return rho;
}

Expr lie_density(const JetContext& ctx, const Expr& L, const ProjectableField& X) {
  int r = order(L);
  JetField Z = prolong(ctx, X, r);
  return Z.apply(L) + L * X.divergence();
}

Expr VariationSplit::residual(const JetContext& ctx) const {
  int k_order = 0;
  for (const auto& j : J) k_order = std::max(k_order, order(j));
  JetContext c = ctx.bumped(k_order + 1);
  Expr out = -lie;
  for (std::size_t mu = 0; mu < Q.size(); ++mu) out += euler.E[mu] * Q[mu];
  for (std::size_t k = 0; k < J.size(); ++k) out += total_derivative(c, J[k], static_cast<int>(k) + 1);
  return out;
}

VariationSplit first_variation(const JetContext& ctx, const Expr& L, const ProjectableField& X) {
  int r = order(L);
  if (r > 2) throw DomainError("first variation is implemented for order at most 2, got " + std::to_string(r));
  int n = ctx.base_dim();
  int m = ctx.fiber_dim();
  JetContext c = ctx.bumped(2 * r + 1);
  VariationSplit out;
  out.euler = euler(c, L);
  out.lie = lie_density(c, L, X);
  for (int mu = 1; mu <= m; ++mu) out.Q.push_back(characteristic(X, mu));
  out.J.assign(static_cast<std::size_t>(n), Expr());
  for (int k = 1; k <= n; ++k) {
    Expr& Jk = out.J[static_cast<std::size_t>(k - 1)];
    Jk = L * X.xi(k);
    for (int mu = 1; mu <= m; ++mu) Jk += partial(L, Coord::jet(mu, {k})) * out.Q[static_cast<std::size_t>(mu - 1)];
  }
  if (r == 2) {
    for (int mu = 1; mu <= m; ++mu) {
      const Expr& Q = out.Q[static_cast<std::size_t>(mu - 1)];
      for (int k = 1; k <= n; ++k) {
        for (int j = 1; j <= k; ++j) {
          Expr P = partial(L, Coord::jet(mu, {j, k}));
          if (P.is_zero()) continue;
          out.J[static_cast<std::size_t>(k - 1)] += P * total_derivative(c, Q, j);
          out.J[static_cast<std::size_t>(j - 1)] -= total_derivative(c, P, k) * Q;
        }
      }
    }
  }
  return out;
}

std::vector<Expr> extremal_residual(const JetContext& ctx, const Expr& L, const PolySection& gamma) {
  EulerSystem E = euler(ctx, L);
  std::vector<Expr> out;
  for (const auto& e : E.E) out.push_back(gamma.restrict(e));
  return out;
}

}  // namespace jetvar
