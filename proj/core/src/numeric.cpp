#include "jetvar/numeric.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>

#include "jetvar/errors.hpp"
#include "jetvar/format.hpp"
#include "jetvar/variational.hpp"

namespace jetvar {

namespace {

template <typename Scalar>
Scalar to_scalar(const Rational& q);

template <>
Rational to_scalar<Rational>(const Rational& q) {
  return q;
}

template <>
double to_scalar<double>(const Rational& q) {
  return q.get_d();
}

template <typename Scalar>
Scalar power(const Scalar& v, int k) {
  Scalar out = 1;
  for (int i = 0; i < k; ++i) out *= v;
  return out;
}

template <typename Scalar>
Scalar eval_impl(const Expr& e, const PointAssignment<Scalar>& a) {
  Expr grounded = a.realizations.empty() ? e : substitute_functions(e, a.realizations);
  Scalar out = 0;
  for (const auto& t : grounded.terms()) {
    Scalar term = to_scalar<Scalar>(t.coeff);
    for (const auto& f : t.monomial) {
      if (f.atom.is_function()) throw EvaluationError("no realization for function symbol " + f.atom.symbol()->name);
      auto it = a.values.find(f.atom.coord());
      if (it == a.values.end()) throw EvaluationError("no value for coordinate " + to_string(f.atom.coord()));
      term *= power(it->second, f.power);
    }
    out += term;
  }
  return out;
}

// Truncated multivariate Taylor series in n variables, total degree <= r.
class SeriesSpace {
 public:
  SeriesSpace(int n, int r) : n_(n), r_(r) {
    std::vector<int> e(static_cast<std::size_t>(n), 0);
    enumerate(e, 0, r);
    std::sort(exps_.begin(), exps_.end(), [](const auto& a, const auto& b) {
      int da = degree(a);
      int db = degree(b);
      return da != db ? da < db : a > b;
    });
    for (std::size_t k = 0; k < exps_.size(); ++k) index_[exps_[k]] = static_cast<int>(k);
    products_.resize(exps_.size());
    for (std::size_t a = 0; a < exps_.size(); ++a) {
      for (std::size_t b = 0; b < exps_.size(); ++b) {
        if (degree(exps_[a]) + degree(exps_[b]) > r_) continue;
        std::vector<int> s(static_cast<std::size_t>(n_));
        for (int k = 0; k < n_; ++k) s[static_cast<std::size_t>(k)] = exps_[a][static_cast<std::size_t>(k)] + exps_[b][static_cast<std::size_t>(k)];
        products_[a].emplace_back(static_cast<int>(b), index_.at(s));
      }
    }
  }

  using Series = std::vector<double>;

  std::size_t size() const { return exps_.size(); }
  int n() const { return n_; }
  const std::vector<int>& exponents(std::size_t k) const { return exps_[k]; }
  int index_of(const std::vector<int>& e) const { return index_.at(e); }

  Series constant(double c) const {
    Series s(size(), 0.0);
    s[0] = c;
    return s;
  }
  Series variable(int k, double at) const {
    Series s = constant(at);
    std::vector<int> e(static_cast<std::size_t>(n_), 0);
    e[static_cast<std::size_t>(k)] = 1;
    if (r_ >= 1) s[static_cast<std::size_t>(index_of(e))] = 1.0;
    return s;
  }
  Series mul(const Series& a, const Series& b) const {
    Series out(size(), 0.0);
    for (std::size_t i = 0; i < size(); ++i) {
      if (a[i] == 0.0) continue;
      for (auto [j, k] : products_[i]) out[static_cast<std::size_t>(k)] += a[i] * b[static_cast<std::size_t>(j)];
    }
    return out;
  }

  /// Evaluates a polynomial whose atoms are looked up in `atom_values`.
  Series eval(const Expr& e, const std::map<Coord, Series>& atom_values) const {
    Series out(size(), 0.0);
    for (const auto& t : e.terms()) {
      Series term = constant(t.coeff.get_d());
      for (const auto& f : t.monomial) {
        if (f.atom.is_function()) throw DomainError("flow oracle needs polynomial field components");
        const Series& v = atom_values.at(f.atom.coord());
        for (int p = 0; p < f.power; ++p) term = mul(term, v);
      }
      for (std::size_t k = 0; k < size(); ++k) out[k] += term[k];
    }
    return out;
  }

  /// s(sub_1, ..., sub_n) for substitutions without constant term.
  Series compose(const Series& s, const std::vector<Series>& sub) const {
    Series out(size(), 0.0);
    for (std::size_t k = 0; k < size(); ++k) {
      if (s[k] == 0.0) continue;
      Series term = constant(s[k]);
      for (int v = 0; v < n_; ++v)
        for (int p = 0; p < exps_[k][static_cast<std::size_t>(v)]; ++p) term = mul(term, sub[static_cast<std::size_t>(v)]);
      for (std::size_t q = 0; q < size(); ++q) out[q] += term[q];
    }
    return out;
  }

 private:
  static int degree(const std::vector<int>& e) {
    int d = 0;
    for (int v : e) d += v;
    return d;
  }
  void enumerate(std::vector<int>& e, int pos, int remaining) {
    if (pos == n_) {
      exps_.push_back(e);
      return;
    }
    for (int k = 0; k <= remaining; ++k) {
      e[static_cast<std::size_t>(pos)] = k;
      enumerate(e, pos + 1, remaining - k);
    }
    e[static_cast<std::size_t>(pos)] = 0;
  }

  int n_;
  int r_;
  std::vector<std::vector<int>> exps_;
  std::map<std::vector<int>, int> index_;
  std::vector<std::vector<std::pair<int, int>>> products_;
};

using Series = SeriesSpace::Series;

/// Jet coordinates of the transformed section at the transformed base point,
/// flattened in the order x, then (mu, I) for |I| <= r.
std::vector<double> transformed_jet(const SeriesSpace& space, const ProjectableField& X, const PolySection& gamma,
                                    const std::vector<double>& x0, int r, double t, double step, bool& ok) {
  int n = space.n();
  int m = X.fiber_dim();
  std::map<Coord, Series> base;
  for (int k = 1; k <= n; ++k) base[Coord::base(k)] = space.variable(k - 1, x0[static_cast<std::size_t>(k - 1)]);
  std::vector<Series> state;
  for (int k = 1; k <= n; ++k) state.push_back(base[Coord::base(k)]);
  for (int mu = 1; mu <= m; ++mu) state.push_back(space.eval(gamma.component(mu), base));

  auto rhs = [&](const std::vector<Series>& s) {
    std::map<Coord, Series> atoms;
    for (int k = 1; k <= n; ++k) atoms[Coord::base(k)] = s[static_cast<std::size_t>(k - 1)];
    for (int mu = 1; mu <= m; ++mu) atoms[Coord::fiber(mu)] = s[static_cast<std::size_t>(n + mu - 1)];
    std::vector<Series> out;
    for (int k = 1; k <= n; ++k) out.push_back(space.eval(X.xi(k), atoms));
    for (int mu = 1; mu <= m; ++mu) out.push_back(space.eval(X.Xi(mu), atoms));
    return out;
  };
  auto axpy = [&](const std::vector<Series>& s, const std::vector<Series>& d, double a) {
    std::vector<Series> out = s;
    for (std::size_t v = 0; v < s.size(); ++v)
      for (std::size_t k = 0; k < space.size(); ++k) out[v][k] += a * d[v][k];
    return out;
  };

  int steps = std::max(1, static_cast<int>(std::ceil(std::abs(t) / step)));
  double dt = t / steps;
  for (int s = 0; s < steps; ++s) {
    auto k1 = rhs(state);
    auto k2 = rhs(axpy(state, k1, dt / 2));
    auto k3 = rhs(axpy(state, k2, dt / 2));
    auto k4 = rhs(axpy(state, k3, dt));
    for (std::size_t v = 0; v < state.size(); ++v)
      for (std::size_t k = 0; k < space.size(); ++k)
        state[v][k] += dt / 6 * (k1[v][k] + 2 * k2[v][k] + 2 * k3[v][k] + k4[v][k]);
  }

  // invert the base map phi(delta) = x_t + A delta + N(delta)
  Eigen::MatrixXd A(n, n);
  std::vector<double> xt(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    xt[static_cast<std::size_t>(k)] = state[static_cast<std::size_t>(k)][0];
    for (int v = 0; v < n; ++v) {
      std::vector<int> e(static_cast<std::size_t>(n), 0);
      e[static_cast<std::size_t>(v)] = 1;
      A(k, v) = r >= 1 ? state[static_cast<std::size_t>(k)][static_cast<std::size_t>(space.index_of(e))] : (k == v ? 1.0 : 0.0);
    }
  }
  Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
  if (!lu.isInvertible()) {
    ok = false;
    return {};
  }
  Eigen::MatrixXd Ainv = lu.inverse();
  std::vector<Series> nonlinear;
  for (int k = 0; k < n; ++k) {
    Series s = state[static_cast<std::size_t>(k)];
    s[0] = 0.0;
    for (std::size_t q = 1; q < space.size() && q <= static_cast<std::size_t>(n); ++q) s[q] = 0.0;
    nonlinear.push_back(std::move(s));
  }
  std::vector<Series> u;
  for (int k = 0; k < n; ++k) u.push_back(space.variable(k, 0.0));
  std::vector<Series> delta(static_cast<std::size_t>(n), Series(space.size(), 0.0));
  for (int iter = 0; iter <= r; ++iter) {
    std::vector<Series> rhs_terms;
    for (int k = 0; k < n; ++k) {
      Series s = u[static_cast<std::size_t>(k)];
      Series nl = space.compose(nonlinear[static_cast<std::size_t>(k)], delta);
      for (std::size_t q = 0; q < space.size(); ++q) s[q] -= nl[q];
      rhs_terms.push_back(std::move(s));
    }
    for (int k = 0; k < n; ++k) {
      Series d(space.size(), 0.0);
      for (int v = 0; v < n; ++v)
        for (std::size_t q = 0; q < space.size(); ++q) d[q] += Ainv(k, v) * rhs_terms[static_cast<std::size_t>(v)][q];
      delta[static_cast<std::size_t>(k)] = std::move(d);
    }
  }

  std::vector<double> out = xt;
  for (int mu = 1; mu <= m; ++mu) {
    Series section = space.compose(state[static_cast<std::size_t>(n + mu - 1)], delta);
    section[0] = state[static_cast<std::size_t>(n + mu - 1)][0];
    for (const auto& I : multi_indices_up_to(n, r)) {
      std::vector<int> e(static_cast<std::size_t>(n), 0);
      double factor = 1.0;
      for (int i : I) {
        e[static_cast<std::size_t>(i - 1)] += 1;
        factor *= e[static_cast<std::size_t>(i - 1)];
      }
      out.push_back(section[static_cast<std::size_t>(space.index_of(e))] * factor);
    }
  }
  for (double v : out)
    if (!std::isfinite(v)) ok = false;
  return out;
}

}  // namespace

Rational eval(const Expr& e, const ExactPoint& a) { return eval_impl(e, a); }

double eval(const Expr& e, const FloatPoint& a) { return eval_impl(e, a); }

CompiledExpr::CompiledExpr(const Expr& e, const std::vector<Coord>& layout) {
  for (const auto& t : e.terms()) {
    Term term{t.coeff.get_d(), {}};
    for (const auto& f : t.monomial) {
      if (f.atom.is_function()) throw EvaluationError("cannot compile function symbol " + f.atom.symbol()->name);
      auto it = std::find(layout.begin(), layout.end(), f.atom.coord());
      if (it == layout.end()) throw EvaluationError("coordinate " + to_string(f.atom.coord()) + " missing from layout");
      term.factors.push_back({static_cast<int>(it - layout.begin()), f.power});
    }
    terms_.push_back(std::move(term));
  }
}

double CompiledExpr::operator()(const double* values) const {
  double out = 0.0;
  for (const auto& t : terms_) {
    double v = t.coeff;
    for (const auto& f : t.factors)
      for (int p = 0; p < f.power; ++p) v *= values[f.slot];
    out += v;
  }
  return out;
}

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-97, 97);
  std::uniform_int_distribution<int> den(1, 97);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  if (abs(q) > 1) q = 1 / q;
  return q;
}

Expr random_polynomial(std::mt19937_64& rng, const std::vector<Coord>& vars, int degree) {
  Expr out;
  std::vector<Expr> monomials{Expr(1L)};
  std::vector<Expr> frontier{Expr(1L)};
  for (int d = 1; d <= degree; ++d) {
    std::vector<Expr> next;
    std::set<std::string> seen;
    for (const auto& f : frontier)
      for (const auto& v : vars) {
        Expr mnm = f * Expr(v);
        if (seen.insert(to_string(mnm)).second) next.push_back(mnm);
      }
    monomials.insert(monomials.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  for (const auto& mnm : monomials) out += scaled(mnm, random_rational(rng));
  return out;
}

ZeroVerdict randomized_zero_check(const Expr& e, int trials, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::map<std::string, FunctionSymbol> symbols;
  for (const auto& a : atoms(e))
    if (a.is_function()) symbols.emplace(a.symbol()->name, a.symbol());
  for (int t = 0; t < trials; ++t) {
    ExactPoint point;
    for (const auto& [name, f] : symbols) point.realizations[name] = random_polynomial(rng, f->args, 3);
    Expr grounded = substitute_functions(e, point.realizations);
    for (const auto& c : dependencies(grounded)) point.values[c] = random_rational(rng);
    point.realizations.clear();
    if (eval(grounded, point) != 0) return ZeroVerdict::Nonzero;
  }
  return ZeroVerdict::ProbablyZero;
}

std::map<Coord, double> jet_of_section(const PolySection& gamma, int n, const std::vector<double>& x0, int r) {
  FloatPoint at;
  std::map<Coord, double> out;
  for (int k = 1; k <= n; ++k) {
    at.values[Coord::base(k)] = x0[static_cast<std::size_t>(k - 1)];
    out[Coord::base(k)] = x0[static_cast<std::size_t>(k - 1)];
  }
  for (int mu = 1; mu <= gamma.fiber_dim(); ++mu)
    for (const auto& I : multi_indices_up_to(n, r)) out[Coord::jet(mu, I)] = eval(gamma.jet(mu, I), at);
  return out;
}

FlowOracleResult flow_prolong_oracle(const ProjectableField& X, const PolySection& gamma, const std::vector<double>& x0,
                                     int r, const FlowOracleOptions& options) {
  int n = X.base_dim();
  if (static_cast<int>(x0.size()) != n) throw DimensionError("base point has the wrong dimension");
  SeriesSpace space(n, r);
  bool ok = true;
  auto plus = transformed_jet(space, X, gamma, x0, r, options.h_t, options.rk4_step, ok);
  auto minus = ok ? transformed_jet(space, X, gamma, x0, r, -options.h_t, options.rk4_step, ok) : plus;
  FlowOracleResult out{ok, {}};
  if (!ok) return out;
  std::size_t slot = 0;
  auto derivative = [&](std::size_t k) { return (plus[k] - minus[k]) / (2 * options.h_t); };
  for (int k = 1; k <= n; ++k) out.components[Coord::base(k)] = derivative(slot++);
  for (int mu = 1; mu <= X.fiber_dim(); ++mu)
    for (const auto& I : multi_indices_up_to(n, r)) out.components[Coord::jet(mu, I)] = derivative(slot++);
  return out;
}

GradientCheckReport discrete_action_gradient_check(const JetContext& ctx, const Expr& L, const PolySection& gamma,
                                                   const GridSpec& grid) {
  int n = grid.n;
  int N = grid.N;
  int m = ctx.fiber_dim();
  if (n != ctx.base_dim()) throw DimensionError("grid dimension differs from the base dimension");
  if (n < 1 || n > 2) throw DomainError("discrete action check supports n = 1 or 2");
  if (N < 6) throw DomainError("grid needs at least 6 nodes per axis");
  if (order(L) > 1) throw DomainError("discrete action check needs a first-order Lagrangian");
  if (mentions_functions(L)) throw DomainError("discrete action check needs a polynomial Lagrangian");

  std::vector<Coord> layout;
  for (int k = 1; k <= n; ++k) layout.push_back(Coord::base(k));
  for (int mu = 1; mu <= m; ++mu) layout.push_back(Coord::fiber(mu));
  for (int mu = 1; mu <= m; ++mu)
    for (int k = 1; k <= n; ++k) layout.push_back(Coord::jet(mu, {k}));
  CompiledExpr lagrangian(L, layout);

  std::vector<Coord> base_layout(layout.begin(), layout.begin() + n);
  std::vector<CompiledExpr> euler_along;
  for (const auto& e : extremal_residual(ctx, L, gamma)) euler_along.emplace_back(e, base_layout);
  std::vector<CompiledExpr> section;
  for (int mu = 1; mu <= m; ++mu) section.emplace_back(gamma.component(mu), base_layout);

  double h = 1.0 / (N - 1);
  double weight = n == 1 ? h : h * h;
  std::size_t nodes = n == 1 ? static_cast<std::size_t>(N) : static_cast<std::size_t>(N) * static_cast<std::size_t>(N);
  auto coords = [&](std::size_t node, int* idx) {
    idx[0] = static_cast<int>(node % static_cast<std::size_t>(N));
    idx[1] = n == 2 ? static_cast<int>(node / static_cast<std::size_t>(N)) : 0;
  };
  auto stride = [&](int k) { return k == 0 ? std::size_t{1} : static_cast<std::size_t>(N); };

  std::vector<std::vector<double>> u(static_cast<std::size_t>(m), std::vector<double>(nodes));
  for (std::size_t node = 0; node < nodes; ++node) {
    int idx[2];
    coords(node, idx);
    double x[2] = {idx[0] * h, idx[1] * h};
    for (int mu = 0; mu < m; ++mu) u[static_cast<std::size_t>(mu)][node] = section[static_cast<std::size_t>(mu)](x);
  }

  auto distance = [&](std::size_t node) {
    int idx[2];
    coords(node, idx);
    int d = std::min(idx[0], N - 1 - idx[0]);
    if (n == 2) d = std::min(d, std::min(idx[1], N - 1 - idx[1]));
    return d;
  };
  // dS/du at a node collects dL/dy there and the central-difference weights of
  // dL/dz at its neighbours; L is polynomial so this is the exact discrete gradient.
  std::vector<CompiledExpr> dL_dy;
  std::vector<std::vector<CompiledExpr>> dL_dz(static_cast<std::size_t>(m));
  for (int mu = 1; mu <= m; ++mu) {
    dL_dy.emplace_back(partial(L, Coord::fiber(mu)), layout);
    for (int k = 1; k <= n; ++k) dL_dz[static_cast<std::size_t>(mu - 1)].emplace_back(partial(L, Coord::jet(mu, {k})), layout);
  }
  std::vector<double> values(layout.size());
  auto load = [&](std::size_t node) {
    int idx[2];
    coords(node, idx);
    std::size_t slot = 0;
    for (int k = 0; k < n; ++k) values[slot++] = idx[k] * h;
    for (int mu = 0; mu < m; ++mu) values[slot++] = u[static_cast<std::size_t>(mu)][node];
    for (int mu = 0; mu < m; ++mu)
      for (int k = 0; k < n; ++k)
        values[slot++] = (u[static_cast<std::size_t>(mu)][node + stride(k)] - u[static_cast<std::size_t>(mu)][node - stride(k)]) / (2 * h);
  };

  double max_diff = 0.0;
  double scale = 0.0;
  int compared = 0;
  for (std::size_t node = 0; node < nodes; ++node) {
    if (distance(node) < 2) continue;
    ++compared;
    int idx[2];
    coords(node, idx);
    double x[2] = {idx[0] * h, idx[1] * h};
    for (int mu = 0; mu < m; ++mu) {
      auto umu = static_cast<std::size_t>(mu);
      load(node);
      double gradient = dL_dy[umu](values.data());
      for (int k = 0; k < n; ++k) {
        const CompiledExpr& p = dL_dz[umu][static_cast<std::size_t>(k)];
        load(node - stride(k));
        gradient += p(values.data()) / (2 * h);
        load(node + stride(k));
        gradient -= p(values.data()) / (2 * h);
      }
      gradient *= weight;
      double expected = weight * euler_along[umu](x);
      max_diff = std::max(max_diff, std::abs(gradient - expected));
      scale = std::max(scale, std::abs(expected));
    }
  }
  GradientCheckReport out{};
  out.compared_nodes = compared;
  out.scale = scale;
  out.vacuous = scale <= 1e-12 * weight;
  out.max_relative_error = out.vacuous ? max_diff : max_diff / scale;
  return out;
}

ConvergenceReport gradient_convergence(const JetContext& ctx, const Expr& L, const PolySection& gamma, int n,
                                       const std::vector<int>& N) {
  ConvergenceReport out;
  out.N = N;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int count : N) {
    GradientCheckReport r = discrete_action_gradient_check(ctx, L, gamma, {n, count});
    out.errors.push_back(r.max_relative_error);
    double lx = std::log(1.0 / (count - 1));
    double ly = std::log(std::max(r.max_relative_error, std::numeric_limits<double>::min()));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  double k = static_cast<double>(N.size());
  out.order = (k * sxy - sx * sy) / (k * sxx - sx * sx);
  return out;
}

}  // namespace jetvar
