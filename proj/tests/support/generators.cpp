#include "generators.hpp"

namespace jetvar::testing {

int uniform(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

Rational small_rational(Rng& rng, int bound) {
  int num = 0;
  while (num == 0) num = uniform(rng, -bound, bound);
  Rational q(num, uniform(rng, 1, bound));
  q.canonicalize();
  return q;
}

Expr random_expr(Rng& rng, const std::vector<Coord>& vars, int terms, int degree) {
  Expr out;
  for (int t = 0; t < terms; ++t) {
    Expr mono(small_rational(rng));
    int d = uniform(rng, 0, degree);
    for (int k = 0; k < d; ++k) mono *= Expr(vars[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(vars.size()) - 1))]);
    out += mono;
  }
  return out;
}

std::vector<Coord> base_coords(int n) {
  std::vector<Coord> out;
  for (int i = 1; i <= n; ++i) out.push_back(Coord::base(i));
  return out;
}

std::vector<Coord> coords_up_to(int n, int m, int order) {
  std::vector<Coord> out = base_coords(n);
  for (int mu = 1; mu <= m; ++mu)
    for (const auto& I : multi_indices_up_to(n, order)) out.push_back(Coord::jet(mu, I));
  return out;
}

Expr random_lagrangian(Rng& rng, int n, int m, int order, int terms, int degree) {
  auto vars = coords_up_to(n, m, order);
  std::vector<Coord> top;
  for (const auto& c : vars)
    if (c.order() == order && c.is_jet()) top.push_back(c);
  while (true) {
    Expr L = random_expr(rng, vars, terms, degree);
    Expr anchor = Expr(top[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(top.size()) - 1))]);
    L += scaled(anchor * random_expr(rng, vars, 1, 1), small_rational(rng));
    if (jetvar::order(L) == order) return L;
  }
}

ProjectableField random_field(Rng& rng, int n, int m, int degree, bool vertical) {
  auto xs = base_coords(n);
  auto ys = coords_up_to(n, m, 0);
  std::vector<Expr> xi;
  std::vector<Expr> Xi;
  for (int k = 1; k <= n; ++k) xi.push_back(vertical ? Expr() : random_expr(rng, xs, 2, degree));
  for (int mu = 1; mu <= m; ++mu) Xi.push_back(random_expr(rng, ys, 3, degree));
  return ProjectableField(std::move(xi), std::move(Xi));
}

namespace {

DiffForm random_form_over(Rng& rng, const std::vector<Coord>& coeff_vars, const std::vector<Coord>& covectors, int p,
                          int terms, int degree) {
  DiffForm out(p);
  if (p > static_cast<int>(covectors.size())) return out;
  for (int t = 0; t < terms; ++t) {
    std::vector<Coord> b;
    for (int k = 0; k < p; ++k) b.push_back(covectors[static_cast<std::size_t>(uniform(rng, 0, static_cast<int>(covectors.size()) - 1))]);
    out += DiffForm::basis(b, random_expr(rng, coeff_vars, 2, degree));
  }
  return out;
}

}  // namespace

DiffForm random_form_on_y(Rng& rng, int n, int m, int p, int terms, int degree) {
  auto vars = coords_up_to(n, m, 0);
  return random_form_over(rng, vars, vars, p, terms, degree);
}

DiffForm random_form(Rng& rng, int n, int m, int order, int p, int terms, int degree) {
  auto vars = coords_up_to(n, m, order);
  return random_form_over(rng, vars, vars, p, terms, degree);
}

DiffForm random_horizontal_over_y(Rng& rng, int n, int m, int terms) {
  return random_form_over(rng, coords_up_to(n, m, 1), coords_up_to(n, m, 0), n, terms, 2);
}

PolySection random_section(Rng& rng, int n, int m, int degree) {
  std::vector<Expr> g;
  for (int mu = 1; mu <= m; ++mu) g.push_back(random_expr(rng, base_coords(n), 4, degree));
  return PolySection(std::move(g));
}

}  // namespace jetvar::testing
