// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "jetvar/cli/commands.hpp"
#include "jetvar/jetvar.hpp"
#include "oracles.hpp"

namespace {

using namespace jetvar;
namespace gen = jetvar::testing;
using gen::Rng;

// Collects the first few failure descriptions of a criterion.
class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++total_;
    if (ok) return;
    ++failed_;
    if (failed_ <= 3) notes_ << (failed_ > 1 ? "; " : "") << what;
  }
  bool passed() const { return failed_ == 0 && total_ > 0; }
  std::string summary() const {
    std::ostringstream out;
    out << total_ - failed_ << "/" << total_ << " checks";
    if (failed_ > 0) out << ", first failures: " << notes_.str();
    return out.str();
  }

 private:
  int total_ = 0;
  int failed_ = 0;
  std::ostringstream notes_;
};

Expr z(int mu, std::initializer_list<int> I) { return Expr::z(mu, MultiIndex(I)); }
Expr half(const Expr& e) { return scaled(e, Rational(1, 2)); }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// L_Xi through the Cartan formula on L*omega_0, independent of lie_lagrangian.
Expr lie_via_forms(const JetContext& ctx, const Expr& L, const ProjectableField& X) {
  JetContext c = ctx.bumped(order(L) + 1);
  int n = ctx.base_dim();
  return horizontal_density(c, lie_derivative(prolong(c, X, order(L)), L * DiffForm::volume(n)));
}

void counterexample(Check& check) {
  auto f = make_function_symbol("f", {Coord::base(1), Coord::base(2), Coord::fiber(1), Coord::fiber(2)});
  JetContext ctx(2, 2, 1, {f});
  Expr fx1 = Expr::function(f, {1});
  Expr fx2 = Expr::function(f, {2});
  Expr fy2 = Expr::function(f, {4});
  Expr corrected = (fx2 + fy2 * z(2, {2})) * z(1, {1}) - (fx1 + fy2 * z(2, {1})) * z(1, {2});
  Expr printed = (fx2 + fy2 * z(2, {2})) * z(1, {1}) - (fx1 + fy2 * z(2, {1})) * z(2, {1});

  EulerSystem E = euler(ctx, corrected);
  check.expect(E.size() == 2 && E[1].is_zero() && E[2].is_zero(), "corrected L* has nonzero Euler expressions");
  check.expect(null_test(ctx, corrected), "null_test rejects corrected L*");
  Expr generated = null_from_form(ctx, Expr::function(f) * DiffForm::dy(1));
  check.expect(corrected == -generated, "L* differs from -h(d(f dy1))");
  for (const auto& [m, coeff] : split_by_atoms(corrected, [](const Atom&) { return true; }))
    check.expect(coeff == -split_by_atoms(generated, [](const Atom&) { return true; })[m], "coefficient mismatch");

  EulerSystem bad = euler(ctx, printed);
  check.expect(!bad.is_zero(), "printed variant reported null");
  check.expect(!null_test(ctx, printed), "null_test accepts printed variant");

  // the CLI discrepancy report lists the monomials of E
  cli::Model model = cli::parse_model(
      "[space]\nbase_dim = 2\nfiber_dim = 2\norder = 1\n[functions]\nf = x1, x2, y1, y2\n[lagrangian]\n"
      "L = (diff(f,x2) + diff(f,y2)*y2_2)*y1_1 - (diff(f,x1) + diff(f,y2)*y2_1)*y2_1\n");
  std::vector<std::string> warnings;
  cli::CommandOptions o;
  o.command = "nulltest";
  auto report = cli::to_json(cli::run_command(model, o, warnings));
  check.expect(report["is_null"] == false, "CLI reports printed variant null");
  std::size_t monomials = 0;
  for (int mu = 1; mu <= 2; ++mu) monomials += bad[mu].terms().size();
  check.expect(report.contains("offending") && report["offending"].size() == monomials && monomials > 0,
               "offending monomials do not match E");
}

void kernel_theorem(Check& check) {
  Rng rng(1001);
  for (int t = 0; t < 100; ++t) {
    int n = 1 + t % 3;
    int m = 1 + (t / 3) % 2;
    JetContext ctx(n, m, 1);
    DiffForm eta = gen::random_form_on_y(rng, n, m, n - 1, 3, 3);
    Expr L = null_from_form(ctx, eta);
    check.expect(euler(ctx, L).is_zero(), "E(h(d eta)) != 0 for " + to_string(eta));
    DiffForm rho = null_certificate(ctx, L);
    check.expect(ext_d(rho).is_zero(), "certificate not closed for " + to_string(eta));
    check.expect(horizontal_density(ctx, rho) == L, "h(certificate) != h(d eta) for " + to_string(eta));
  }
  int tested = 0;
  for (int t = 0; tested < 100; ++t) {
    int n = 1 + t % 2;
    int m = 1 + (t / 2) % 2;
    JetContext ctx(n, m, 1);
    Expr L = gen::random_lagrangian(rng, n, m, 1, 4, 3);
    EulerSystem oracle = gen::euler_second_order(ctx, L);
    if (oracle.is_zero()) continue;
    ++tested;
    check.expect(!null_test(ctx, L), "null_test accepts non-null " + to_string(L));
  }
}

void divergence_kernel(Check& check) {
  Rng rng(1002);
  for (int t = 0; t < 50; ++t) {
    int n = 1 + t % 3;
    int m = 1 + (t / 3) % 2;
    JetContext ctx(n, m, 2);
    Expr L;
    for (int k = 1; k <= n; ++k) L += total_derivative(ctx, gen::random_expr(rng, gen::coords_up_to(n, m, 1), 3, 3), k);
    check.expect(euler(ctx, L).is_zero(), "E(div f) != 0 for " + to_string(L));
  }
  auto F = make_function_symbol("F", {Coord::base(1), Coord::fiber(1)});
  JetContext ctx(1, 1, 1, {F});
  Expr dF = total_derivative(ctx, Expr::function(F), 1);
  check.expect(euler(ctx, dF).is_zero(), "E(dF/dx) != 0");
}

void lepage_suite(Check& check) {
  Rng rng(1003);
  for (int t = 0; t < 50; ++t) {
    int n = 1 + t % 3;
    int m = 1 + (t / 3) % 2;
    JetContext ctx(n, m, 1);
    Expr L = gen::random_lagrangian(rng, n, m, 1, 4, 3);
    DiffForm delta = lepage_delta(ctx, L);
    check.expect(is_lepagean(ctx, delta).lepagean, "Delta not Lepagean for " + to_string(L));
    check.expect(horizontal_density(ctx, delta) == L, "h(Delta) != L for " + to_string(L));
    JetContext big = ctx.bumped(3);
    EulerSystem E = gen::euler_second_order(ctx, L);
    DiffForm expected(n + 1);
    for (int s = 1; s <= m; ++s) {
      DiffForm omega = DiffForm::dy(s);
      for (int k = 1; k <= n; ++k) omega -= Expr::z(s, {k}) * DiffForm::dx(k);
      expected += E[s] * wedge(omega, DiffForm::volume(n));
    }
    check.expect(h_tilde(big, ext_d(delta)) == expected, "h~(d Delta) mismatch for " + to_string(L));
  }
  for (int t = 0; t < 50; ++t) {
    int n = 1 + t % 2;
    int m = 1 + (t / 2) % 2;
    JetContext ctx(n, m, 2);
    Expr L = gen::random_lagrangian(rng, n, m, 2, 3, 2);
    DiffForm theta = lepage_theta(ctx, L);
    JetContext big = ctx.bumped(5);
    check.expect(horizontal_density(big, theta) == L, "h(Theta) != L for " + to_string(L));
    EulerSystem E = gen::euler_second_order(ctx, L);
    DiffForm expected(n + 1);
    for (int s = 1; s <= m; ++s) expected += E[s] * wedge(DiffForm::dy(s), DiffForm::volume(n));
    check.expect(h_tilde(big, ext_d(theta)) == expected, "h~(d Theta) mismatch for " + to_string(L));
  }
}

void first_variation_identity(Check& check) {
  Rng rng(1004);
  for (int t = 0; t < 50; ++t) {
    int n = 1 + t % 3;
    int m = 1 + (t / 3) % 2;
    JetContext ctx(n, m, 1);
    Expr L = gen::random_lagrangian(rng, n, m, 1, 3, 3);
    ProjectableField X = gen::random_field(rng, n, m, 2);
    VariationSplit s = first_variation(ctx, L, X);
    JetContext big = ctx.bumped(3);
    EulerSystem E = gen::euler_second_order(ctx, L);
    Expr rhs;
    for (int mu = 1; mu <= m; ++mu) rhs += E[mu] * characteristic(X, mu);
    for (int k = 1; k <= n; ++k) rhs += total_derivative(big, s.J[static_cast<std::size_t>(k - 1)], k);
    check.expect(lie_via_forms(ctx, L, X) == rhs, "L_Xi != E.Q + div J for " + to_string(L));
  }
  for (int t = 0; t < 20; ++t) {
    int n = 1 + t % 2;
    int m = 1 + (t / 2) % 2;
    JetContext ctx(n, m, 1);
    Expr L = gen::random_lagrangian(rng, n, m, 1, 3, 2);
    ProjectableField X = gen::random_field(rng, n, m, 2, true);
    DiffForm rho = lepage_delta(ctx, L);
    JetContext big = ctx.bumped(3);
    DiffForm lhs = lie_derivative(prolong(big, X, 2), horizontalize(big, rho));
    DiffForm rhs = contract(prolong(big, X, 2), h_tilde(big, ext_d(rho))) +
                   horizontalize(big, ext_d(contract(prolong(big, X, 1), rho)));
    check.expect(lhs == rhs, "invariant first variation fails for " + to_string(L));
  }
}

void naturality(Check& check) {
  Rng rng(1005);
  for (int t = 0; t < 30; ++t) {
    int n = 1 + t % 2;
    int m = 1 + (t / 2) % 2;
    JetContext ctx(n, m, 1);
    Expr L = gen::random_lagrangian(rng, n, m, 1, 3, 2);
    ProjectableField X = gen::random_field(rng, n, m, 2);
    JetContext big = ctx.bumped(3);
    DiffForm lhs = lie_derivative(prolong(big, X, 2), gen::euler_second_order(ctx, L).form(n));
    DiffForm rhs = gen::euler_second_order(ctx, lie_via_forms(ctx, L, X)).form(n);
    check.expect(lhs == rhs, "naturality fails for " + to_string(L));
    check.expect(euler_form_lie_derivative(ctx, L, X) == rhs, "euler_form_lie_derivative disagrees");
  }
}

void prolongation(Check& check) {
  Rng rng(1006);
  for (int t = 0; t < 50; ++t) {
    int n = 1 + t % 2;
    int m = 1 + (t / 2) % 2;
    int r = 1 + t % 3;
    JetContext ctx(n, m, r + 1);
    ProjectableField a = gen::random_field(rng, n, m, 2);
    ProjectableField b = gen::random_field(rng, n, m, 2);
    check.expect(prolong(ctx, bracket(a, b), r) == bracket(prolong(ctx, a, r), prolong(ctx, b, r)),
                 "bracket commutation fails at r=" + std::to_string(r));
  }

  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  auto against_flow = [&](const ProjectableField& X, int r) {
    int n = X.base_dim();
    int m = X.fiber_dim();
    JetContext ctx(n, m, r);
    JetField sym = prolong(ctx, X, r);
    for (int p = 0; p < 20; ++p) {
      PolySection gamma = gen::random_section(rng, n, m, 2);
      std::vector<double> x0;
      for (int i = 0; i < n; ++i) x0.push_back(unit(rng));
      FlowOracleResult res = flow_prolong_oracle(X, gamma, x0, r);
      check.expect(res.conclusive, "flow oracle inconclusive");
      FloatPoint at{jet_of_section(gamma, n, x0, r), {}};
      for (const auto& [c, v] : res.components) {
        double expected = eval(sym.component(c), at);
        check.expect(std::abs(v - expected) <= 1e-5 * std::max(1.0, std::abs(expected)),
                     "flow oracle differs at " + to_string(c));
      }
    }
  };
  const Expr x1 = Expr::x(1);
  against_flow(ProjectableField({Expr()}, {x1}), 1);
  against_flow(ProjectableField({x1}, {Expr()}), 1);
  against_flow(ProjectableField({Expr()}, {Expr(2)}), 2);
  for (int t = 0; t < 10; ++t) {
    int n = 1 + t % 2;
    against_flow(gen::random_field(rng, n, 1 + (t / 2) % 2, 2), 2);
  }
}

void numeric_euler(Check& check) {
  Rng rng(1008);
  int done = 0;
  while (done < 10) {
    int n = 1 + done % 2;
    JetContext ctx(n, 1, 1);
    Expr L = gen::random_lagrangian(rng, n, 1, 1, 4, 4);
    // a cubic term in every variable keeps central differences from being exact
    Expr g = gen::random_section(rng, n, 1, 3).component(1);
    for (const auto& c : gen::base_coords(n)) g += Expr(gen::small_rational(rng)) * Expr(c) * Expr(c) * Expr(c);
    PolySection gamma({g});
    GradientCheckReport r = discrete_action_gradient_check(ctx, L, gamma, {n, 100});
    if (r.vacuous) continue;
    // pairs the discretization reproduces exactly have no measurable order
    ConvergenceReport c = gradient_convergence(ctx, L, gamma, n, {50, 100, 200});
    if (c.errors[0] < 1e-10) continue;
    ++done;
    check.expect(r.max_relative_error < 1e-3,
                 "relative error " + std::to_string(r.max_relative_error) + " for " + to_string(L) + " on " + to_string(g));
    check.expect(c.order >= 1.9, "order " + std::to_string(c.order) + " for " + to_string(L) + " on " + to_string(g));
  }
}

void mechanics(Check& check) {
  JetContext ctx(1, 1, 1);
  const Expr x1 = Expr::x(1);
  Expr L = half(z(1, {1}) * z(1, {1}));
  Rng rng(1009);
  for (int t = 0; t < 10; ++t) {
    PolySection line({Expr(gen::small_rational(rng)) + scaled(x1, gen::small_rational(rng))});
    check.expect(extremal_residual(ctx, L, line)[0].is_zero(), "straight line is not extremal");
  }
  check.expect(!extremal_residual(ctx, L, PolySection({x1 * x1}))[0].is_zero(), "parabola reported extremal");

  ConservedCurrent momentum = conserved_current(ctx, L, ProjectableField({Expr()}, {Expr(1)}));
  check.expect(momentum.J[0] == z(1, {1}) && momentum.residual.is_zero(), "momentum current");
  ConservedCurrent energy = conserved_current(ctx, L, ProjectableField({Expr(1)}, {Expr()}));
  check.expect(energy.J[0] == -L && energy.residual.is_zero(), "energy current");
  ConservedCurrent none = conserved_current(ctx, L, ProjectableField::zero(1, 1));
  check.expect(none.J[0].is_zero(), "zero field current");

  SymmetryVerdict boost = generalized_invariance_check(ctx, L, ProjectableField({Expr()}, {x1}));
  check.expect(!boost.invariant && boost.generalized_invariant, "boost classification");
  check.expect(boost.lie == z(1, {1}), "boost L_Xi");
  SymmetryVerdict scale = generalized_invariance_check(ctx, L, ProjectableField({Expr()}, {Expr::y(1)}));
  check.expect(!scale.invariant && !scale.generalized_invariant, "y d/dy classification");
}

void tensor_covariance(Check& check) {
  Rng rng(1010);
  TensorType tx = TensorType::from_signature("+");
  for (int n = 1; n <= 3; ++n) {
    JetContext ctx(n, n, 1);
    std::vector<Expr> xi;
    for (int i = 0; i < n; ++i) xi.push_back(gen::random_expr(rng, gen::base_coords(n), 3, 3));
    ProjectableField lift = tensor_lift(ctx, tx, xi);
    for (int i = 1; i <= n; ++i) {
      Expr expected;
      for (int j = 1; j <= n; ++j) expected += partial(xi[static_cast<std::size_t>(i - 1)], Coord::base(j)) * Expr::y(j);
      check.expect(lift.xi(i) == xi[static_cast<std::size_t>(i - 1)] && lift.Xi(i) == expected, "TX lift");
    }
  }

  std::uniform_int_distribution<int> num(-9, 9);
  std::uniform_int_distribution<int> den(1, 7);
  for (const char* sig : {"+", "-"}) {
    TensorType type = TensorType::from_signature(sig);
    JetContext ctx(2, 2, 1);
    Expr L = gen::random_lagrangian(rng, 2, 2, 1, 3, 2);
    CovarianceTable table = covariance_system(ctx, L, type);
    JetContext big = ctx.bumped(3);
    std::vector<Coord> layout = gen::coords_up_to(2, 2, 2);
    for (int t = 0; t < 5; ++t) {
      std::vector<Expr> xi{random_polynomial(rng, gen::base_coords(2), 3), random_polynomial(rng, gen::base_coords(2), 3)};
      EulerSystem direct = euler(big, lie_via_forms(big, L, tensor_lift(big, type, xi)));
      for (int C = 1; C <= 2; ++C) {
        Expr rebuilt;
        for (const auto& [key, coeff] : table.coefficients) {
          const auto& [c, p, J] = key;
          if (c != C) continue;
          Expr d = xi[static_cast<std::size_t>(p - 1)];
          for (int j : J) d = partial(d, Coord::base(j));
          rebuilt += coeff * d * Expr(static_cast<long>(J.orderings()));
        }
        for (int k = 0; k < 20; ++k) {
          ExactPoint at;
          for (const auto& c : layout) at.values[c] = Rational(num(rng), den(rng));
          check.expect(eval(rebuilt, at) == eval(direct[C], at), std::string("covariance extraction, type ") + sig);
        }
      }
    }
  }

  for (int t = 0; t < 10; ++t) {
    int n = 1 + t % 2;
    JetContext ctx(n, n, 1);
    Expr L = gen::random_lagrangian(rng, n, n, 1, 3, 2);
    std::vector<FunctionSymbol> symbols;
    std::vector<Expr> xi;
    for (int p = 1; p <= n; ++p) {
      std::vector<Coord> args;
      for (int i = 1; i <= n; ++i) args.push_back(Coord::base(i));
      symbols.push_back(make_function_symbol("xi" + std::to_string(p), args));
      xi.push_back(Expr::function(symbols.back()));
    }
    JetContext fc(n, n, 3, symbols);
    Expr lie = lie_via_forms(fc, L, tensor_lift(fc, tx, xi));
    auto W = weak_critical_system(ctx, L, tx);
    for (int l = 1; l <= n; ++l) {
      Expr coefficient = gen::functional_derivative(fc.bumped(5), lie, symbols[static_cast<std::size_t>(l - 1)], 2);
      check.expect(coefficient == -W[static_cast<std::size_t>(l - 1)], "weak critical W_" + std::to_string(l));
    }
  }
}

void cli_round_trip(Check& check) {
  const std::string dir = JETVAR_GOLDEN_DIR;
  for (const char* name : {"free_particle.model", "counterexample.model", "tx_covariance.model"}) {
    std::string once = cli::emit_model(cli::parse_model(slurp(dir + "/" + name)));
    check.expect(cli::emit_model(cli::parse_model(once)) == once, std::string("round trip of ") + name);
  }
  Rng rng(1011);
  for (int t = 0; t < 20; ++t) {
    int n = 1 + t % 3;
    int m = 1 + t % 2;
    cli::Model model;
    model.base_dim = n;
    model.fiber_dim = m;
    model.order = 1;
    model.lagrangian = gen::random_lagrangian(rng, n, m, 1);
    model.fields.push_back(cli::Named<ProjectableField>{"X", gen::random_field(rng, n, m), {}});
    model.forms.push_back(cli::Named<DiffForm>{"eta", gen::random_form_on_y(rng, n, m, n - 1), {}});
    model.sections.push_back(cli::Named<PolySection>{"g", gen::random_section(rng, n, m), {}});
    std::string once = cli::emit_model(model);
    check.expect(cli::emit_model(cli::parse_model(once)) == once, "random model round trip");
  }

  std::ifstream cases(dir + "/cases.txt");
  for (std::string line; std::getline(cases, line);) {
    std::istringstream words(line);
    std::string name, model_file;
    cli::CommandOptions o;
    if (!(words >> name >> model_file >> o.command)) continue;
    for (std::string flag, value; words >> flag >> value;) {
      if (flag == "--form") o.form = value;
      if (flag == "--field") o.field = value;
      if (flag == "--section") o.section = value;
    }
    cli::Model model = cli::parse_model(slurp(dir + "/" + model_file));
    std::vector<std::string> warnings = model.warnings;
    cli::Node result = cli::run_command(model, o, warnings);
    check.expect(cli::json_document(model, result, warnings) == slurp(dir + "/" + name + ".json"), "golden " + name);
  }
}

struct Criterion {
  int id;
  const char* title;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "null counterexample and printed variant", counterexample},
      {2, "kernel theorem and certificates", kernel_theorem},
      {3, "divergence kernel", divergence_kernel},
      {4, "Lepage equivalents Delta and Theta", lepage_suite},
      {5, "first variation identity", first_variation_identity},
      {6, "naturality of the Euler form", naturality},
      {7, "prolongation brackets and flow oracle", prolongation},
      {8, "discrete action gradient", numeric_euler},
      {9, "free particle mechanics", mechanics},
      {10, "tensor lift, covariance and weak critical equations", tensor_covariance},
      {11, "CLI round trip and golden outputs", cli_round_trip},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    Check check;
    auto start = std::chrono::steady_clock::now();
    std::string error;
    try {
      c.run(check);
    } catch (const std::exception& e) {
      error = e.what();
    }
    double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool ok = error.empty() && check.passed();
    if (!ok) ++failures;
    std::printf("%s criterion %d: %s (%s%s, %.1fs)\n", ok ? "PASS" : "FAIL", c.id, c.title, check.summary().c_str(),
                error.empty() ? "" : (", exception: " + error).c_str(), seconds);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
