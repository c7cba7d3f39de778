#include <gtest/gtest.h>

#include "generators.hpp"
#include "jetvar/jetvar.hpp"

namespace jetvar {
namespace {

using testing::Rng;

const Expr x1 = Expr::x(1);
const Expr x2 = Expr::x(2);
const Expr y1 = Expr::y(1);
const Expr z11 = Expr::z(1, {1});

TEST(MultiIndex, SortsEntries) {
  MultiIndex a{2, 1, 3};
  EXPECT_EQ(a.to_vector(), (std::vector<int>{1, 2, 3}));
  EXPECT_EQ(MultiIndex({1, 2}).appended(1), MultiIndex({1, 1, 2}));
  EXPECT_EQ(MultiIndex({1, 1, 2}).orderings(), 3);
  EXPECT_EQ(MultiIndex({1, 2, 3}).orderings(), 6);
  EXPECT_EQ(MultiIndex({1, 2, 2}).without(2), MultiIndex({1, 2}));
}

TEST(MultiIndex, Enumeration) {
  EXPECT_EQ(multi_indices_of_order(2, 2).size(), 3u);
  EXPECT_EQ(multi_indices_of_order(3, 2).size(), 6u);
  EXPECT_EQ(multi_indices_up_to(2, 3).size(), 10u);
}

TEST(Context, RejectsOutOfRange) {
  JetContext ctx(2, 1, 1);
  EXPECT_THROW(ctx.check(Coord::base(3)), ContextError);
  EXPECT_THROW(ctx.check(Coord::jet(2, {})), ContextError);
  EXPECT_THROW(ctx.check(Coord::jet(1, {1, 1})), OrderError);
  EXPECT_THROW(JetContext(0, 1, 1), ContextError);
  EXPECT_THROW(ctx.with_order(kDefaultOrderCap + 1), OrderError);
  EXPECT_THROW(make_function_symbol("f", {Coord::jet(1, {1})}), ContextError);
  EXPECT_THROW(make_function_symbol("f", {Coord::base(1), Coord::base(1)}), ContextError);
}

TEST(Normalize, CollectsLikeTerms) {
  JetContext ctx(2, 1, 1);
  EXPECT_EQ(normalize(ctx, RawExpr::sum({RawExpr::leaf(Coord::fiber(1)), RawExpr::leaf(Coord::fiber(1))})), scaled(y1, 2));
  auto x1x2 = RawExpr::product({RawExpr::leaf(Coord::base(1)), RawExpr::leaf(Coord::base(2))});
  auto x2x1 = RawExpr::product({RawExpr::leaf(Coord::base(2)), RawExpr::leaf(Coord::base(1))});
  EXPECT_TRUE(normalize(ctx, RawExpr::sum({x1x2, RawExpr::negate(x2x1)})).is_zero());
}

TEST(Normalize, MixedPartialsCommute) {
  auto f = make_function_symbol("f", {Coord::base(1), Coord::fiber(2)});
  EXPECT_EQ(Expr::function(f, {1, 2}), Expr::function(f, {2, 1}));
  JetContext ctx(1, 2, 1, {f});
  Expr a = partial(partial(Expr::function(f), Coord::base(1)), Coord::fiber(2));
  Expr b = partial(partial(Expr::function(f), Coord::fiber(2)), Coord::base(1));
  EXPECT_EQ(a, b);
}

TEST(Normalize, Errors) {
  JetContext ctx(1, 1, 1);
  EXPECT_THROW(normalize(ctx, RawExpr::leaf(Coord::base(2))), ContextError);
  EXPECT_THROW(normalize(ctx, RawExpr::leaf(Coord::jet(1, {1, 1}))), OrderError);
  EXPECT_THROW(normalize(ctx, RawExpr::quotient(RawExpr::number(1), RawExpr::leaf(Coord::base(1)))), DomainError);
  EXPECT_THROW(normalize(ctx, RawExpr::quotient(RawExpr::number(1), RawExpr::number(0))), DomainError);
  auto third = normalize(ctx, RawExpr::quotient(RawExpr::leaf(Coord::base(1)), RawExpr::number(3)));
  EXPECT_EQ(third, scaled(x1, Rational(1, 3)));
}

TEST(Normalize, Idempotent) {
  Rng rng(11);
  JetContext ctx(2, 2, 2);
  for (int t = 0; t < 50; ++t) {
    Expr e = testing::random_expr(rng, testing::coords_up_to(2, 2, 2), 5, 3);
    std::vector<RawExpr> parts;
    for (const auto& term : e.terms()) {
      std::vector<RawExpr> factors{RawExpr::number(term.coeff)};
      for (const auto& f : term.monomial) factors.push_back(RawExpr::power(RawExpr::leaf(f.atom), f.power));
      parts.push_back(RawExpr::product(std::move(factors)));
    }
    Expr once = normalize(ctx, RawExpr::sum(parts));
    EXPECT_EQ(once, e);
    EXPECT_EQ(Expr::from_terms(std::vector<Term>(once.terms().begin(), once.terms().end())), once);
  }
}

TEST(Partial, Examples) {
  EXPECT_EQ(partial(scaled(pow(z11, 2), Rational(1, 2)), Coord::jet(1, {1})), z11);
  auto f = make_function_symbol("f", {Coord::base(1), Coord::fiber(1)});
  EXPECT_EQ(partial(Expr::function(f), Coord::fiber(1)), Expr::function(f, {2}));
  EXPECT_TRUE(partial(z11, Coord::base(1)).is_zero());
  EXPECT_TRUE(partial(Expr::function(f), Coord::base(2)).is_zero());
}

TEST(Partial, Commute) {
  Rng rng(3);
  auto vars = testing::coords_up_to(2, 2, 1);
  for (int t = 0; t < 100; ++t) {
    Expr e = testing::random_expr(rng, vars, 6, 4);
    const Coord& a = vars[static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<int>(vars.size()) - 1))];
    const Coord& b = vars[static_cast<std::size_t>(testing::uniform(rng, 0, static_cast<int>(vars.size()) - 1))];
    EXPECT_EQ(partial(partial(e, a), b), partial(partial(e, b), a));
  }
}

TEST(TotalDerivative, Examples) {
  JetContext ctx(2, 1, 2);
  EXPECT_EQ(total_derivative(ctx, y1, 1), z11);
  EXPECT_TRUE(total_derivative(ctx, x2, 1).is_zero());
  EXPECT_EQ(total_derivative(ctx, y1 * z11, 2), Expr::z(1, {2}) * z11 + y1 * Expr::z(1, {1, 2}));
  EXPECT_EQ(total_derivative(ctx, x1 * x1, 1), scaled(x1, 2));
}

TEST(TotalDerivative, OrderOverflow) {
  JetContext ctx(1, 1, 1);
  EXPECT_THROW(total_derivative(ctx, z11, 1), OrderError);
  EXPECT_NO_THROW(total_derivative(ctx.bumped(2), z11, 1));
}

TEST(TotalDerivative, FunctionChainRule) {
  auto g = make_function_symbol("g", {Coord::base(1), Coord::fiber(1)});
  JetContext ctx(1, 1, 1, {g});
  Expr D = total_derivative(ctx, Expr::function(g), 1);
  EXPECT_EQ(D, Expr::function(g, {1}) + Expr::function(g, {2}) * z11);
}

TEST(TotalDerivative, Commute) {
  Rng rng(5);
  JetContext ctx(2, 2, 3);
  auto vars = testing::coords_up_to(2, 2, 1);
  for (int t = 0; t < 100; ++t) {
    Expr e = testing::random_expr(rng, vars, 5, 3);
    EXPECT_EQ(total_derivative(ctx, total_derivative(ctx, e, 1), 2), total_derivative(ctx, total_derivative(ctx, e, 2), 1));
  }
}

TEST(TotalDerivative, TriangularDependence) {
  Rng rng(8);
  JetContext ctx(2, 1, 4);
  auto vars = testing::coords_up_to(2, 1, 2);
  for (int t = 0; t < 50; ++t) {
    Expr e = testing::random_expr(rng, vars, 5, 3);
    int top = order(e);
    for (int i = 1; i <= 2; ++i) {
      Expr De = total_derivative(ctx, e, i);
      for (const auto& I : multi_indices_up_to(2, top)) {
        Coord raised = Coord::jet(1, I.appended(i));
        Expr diff = partial(De, raised) - partial(e, Coord::jet(1, I));
        if (static_cast<int>(I.order()) == top) {
          // D_i e is affine in the new top-order coordinates
          EXPECT_TRUE(diff.is_zero());
        } else {
          EXPECT_EQ(diff, total_derivative(ctx, partial(e, raised), i));
        }
      }
    }
  }
}

TEST(Expr, SubtractionGivesZero) {
  Rng rng(13);
  auto vars = testing::coords_up_to(3, 2, 2);
  for (int t = 0; t < 100; ++t) {
    Expr e = testing::random_expr(rng, vars, 6, 4);
    EXPECT_TRUE((e - e).is_zero());
    EXPECT_EQ(e + e, scaled(e, 2));
  }
}

TEST(Expr, RingLaws) {
  Rng rng(17);
  auto vars = testing::coords_up_to(2, 1, 1);
  for (int t = 0; t < 30; ++t) {
    Expr a = testing::random_expr(rng, vars, 3, 2);
    Expr b = testing::random_expr(rng, vars, 3, 2);
    Expr c = testing::random_expr(rng, vars, 3, 2);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a * b) * c, a * (b * c));
  }
}

TEST(Substitute, Examples) {
  JetContext ctx(1, 1, 1);
  EXPECT_EQ(substitute(pow(z11, 2), {{Coord::jet(1, {1}), Expr(3)}}), Expr(9));
  EXPECT_EQ(substitute(x1 + y1, {{Coord::base(1), x1}, {Coord::fiber(1), x1 * x1}}), x1 + x1 * x1);
  Expr D = total_derivative(ctx, y1 * y1, 1);
  EXPECT_EQ(substitute(D, {{Coord::fiber(1), x1 * x1}, {Coord::jet(1, {1}), scaled(x1, 2)}}), scaled(pow(x1, 3), 4));
}

TEST(Substitute, MissingBinding) {
  EXPECT_THROW(substitute(x1 + y1, {{Coord::base(1), x1}}), SubstitutionError);
  EXPECT_EQ(substitute_partial(x1 + y1, {{Coord::base(1), Expr(2)}}), Expr(2) + y1);
}

TEST(Substitute, FunctionRealization) {
  auto f = make_function_symbol("f", {Coord::base(1), Coord::fiber(1)});
  Expr e = Expr::function(f, {1, 2}) + Expr::function(f);
  Expr realized = substitute_functions(e, {{"f", x1 * x1 * y1}});
  EXPECT_EQ(realized, scaled(x1, 2) + x1 * x1 * y1);
}

TEST(Format, GrammarStrings) {
  EXPECT_EQ(to_string(scaled(pow(z11, 2), Rational(1, 2))), "1/2*y1_1^2");
  EXPECT_EQ(to_string(-Expr::z(1, {1, 1})), "-y1_11");
  EXPECT_EQ(to_string(x1 - y1 + Expr(3)), "3 + x1 - y1");
  EXPECT_EQ(to_string(Expr()), "0");
  auto f = make_function_symbol("f", {Coord::base(1), Coord::fiber(2)});
  EXPECT_EQ(to_string(Expr::function(f, {1, 2})), "diff(f,x1,y2)");
  EXPECT_EQ(to_latex(scaled(pow(z11, 2), Rational(1, 2))), "\\frac{1}{2} {y^{1}_{1}}^{2}");
}

}  // namespace
}  // namespace jetvar
