#include <gtest/gtest.h>

#include "generators.hpp"
#include "jetvar/jetvar.hpp"

namespace jetvar {
namespace {

using testing::Rng;

const Expr x1 = Expr::x(1);
const Expr y1 = Expr::y(1);
const Expr z1 = Expr::z(1, {1});
const Expr free_particle = scaled(z1 * z1, Rational(1, 2));

ProjectableField field(const Expr& xi, const Expr& Xi) { return ProjectableField({xi}, {Xi}); }

TEST(LieLagrangian, FreeParticle) {
  JetContext ctx(1, 1, 1);
  EXPECT_TRUE(lie_lagrangian(ctx, free_particle, field(Expr(), Expr(1))).is_zero());
  EXPECT_EQ(lie_lagrangian(ctx, free_particle, field(Expr(), x1)), z1);
  EXPECT_EQ(lie_lagrangian(ctx, free_particle, field(x1, Expr())), -free_particle);
  EXPECT_THROW(lie_lagrangian(ctx.bumped(2), Expr::z(1, {1, 1}), field(Expr(), Expr(1))), DomainError);
}

TEST(LieLagrangian, AgreesWithFormLieDerivative) {
  Rng rng(61);
  for (int t = 0; t < 20; ++t) {
    int n = 1 + t % 2;
    JetContext ctx(n, 2, 1);
    Expr L = testing::random_lagrangian(rng, n, 2, 1, 3, 2);
    ProjectableField X = testing::random_field(rng, n, 2, 2);
    EXPECT_EQ(lie_lagrangian(ctx, L, X), lie_density(ctx, L, X));
  }
}

TEST(Noether, Examples) {
  JetContext ctx(1, 1, 1);
  EXPECT_TRUE(noether_check(ctx, free_particle + y1, field(Expr(1), Expr())).invariant);
  NoetherResult boost = noether_check(ctx, free_particle, field(Expr(), x1));
  EXPECT_FALSE(boost.invariant);
  EXPECT_EQ(boost.residual, z1);
  EXPECT_TRUE(noether_check(ctx, free_particle, ProjectableField::zero(1, 1)).invariant);
}

TEST(GeneralizedInvariance, Classification) {
  JetContext ctx(1, 1, 1);
  SymmetryVerdict boost = generalized_invariance_check(ctx, free_particle, field(Expr(), x1));
  EXPECT_FALSE(boost.invariant);
  EXPECT_TRUE(boost.generalized_invariant);
  ASSERT_TRUE(boost.certificate.has_value());
  EXPECT_EQ(*boost.certificate, DiffForm::dy(1));

  SymmetryVerdict translation = generalized_invariance_check(ctx, free_particle, field(Expr(1), Expr()));
  EXPECT_TRUE(translation.invariant && translation.generalized_invariant);

  SymmetryVerdict scaling = generalized_invariance_check(ctx, free_particle, field(Expr(), y1));
  EXPECT_EQ(scaling.lie, z1 * z1);
  EXPECT_EQ(scaling.lie_euler[1], scaled(Expr::z(1, {1, 1}), -2));
  EXPECT_FALSE(scaling.invariant || scaling.generalized_invariant);
}

TEST(ConservedCurrent, FreeParticle) {
  JetContext ctx(1, 1, 1);
  EXPECT_EQ(conserved_current(ctx, free_particle, field(Expr(), Expr(1))).J[0], z1);
  ConservedCurrent energy = conserved_current(ctx, free_particle, field(Expr(1), Expr()));
  EXPECT_EQ(energy.J[0], -free_particle);
  EXPECT_TRUE(energy.residual.is_zero());
  EXPECT_TRUE(conserved_current(ctx, free_particle, ProjectableField::zero(1, 1)).J[0].is_zero());
}

TEST(ConservedCurrent, OffShellIdentity) {
  Rng rng(62);
  for (int t = 0; t < 30; ++t) {
    int n = 1 + t % 2;
    int m = 1 + (t / 2) % 2;
    JetContext ctx(n, m, 1);
    ConservedCurrent c = conserved_current(ctx, testing::random_lagrangian(rng, n, m, 1, 3, 2), testing::random_field(rng, n, m));
    EXPECT_TRUE(c.residual.is_zero());
  }
}

TEST(SymmetricSystem, Examples) {
  JetContext ctx(1, 1, 1);
  auto plain = symmetric_system(ctx, free_particle, {});
  ASSERT_EQ(plain.size(), 1u);
  EXPECT_EQ(plain[0][1], -Expr::z(1, {1, 1}));
  auto with = symmetric_system(ctx, free_particle, {field(Expr(1), Expr()), field(Expr(), x1)});
  ASSERT_EQ(with.size(), 3u);
  EXPECT_TRUE(with[1].is_zero());
  EXPECT_TRUE(with[2].is_zero());
}

TEST(Naturality, EulerFormCommutesWithFlow) {
  Rng rng(63);
  for (int t = 0; t < 10; ++t) {
    int n = 1 + t % 2;
    JetContext ctx(n, 1, 1);
    Expr L = testing::random_lagrangian(rng, n, 1, 1, 3, 2);
    ProjectableField X = testing::random_field(rng, n, 1, 2);
    DiffForm lhs = euler_form_lie_derivative(ctx, L, X);
    EulerSystem rhs = euler(ctx.bumped(3), lie_lagrangian(ctx, L, X));
    EXPECT_EQ(lhs, rhs.form(n));
  }
}

TEST(WeakCritical, Examples) {
  TensorType tx = TensorType::from_signature("+");
  JetContext ctx(1, 1, 1);
  auto W = weak_critical_system(ctx, free_particle, tx);
  Expr E = -Expr::z(1, {1, 1});
  ASSERT_EQ(W.size(), 1u);
  EXPECT_EQ(W[0], z1 * E + total_derivative(ctx.bumped(3), E * y1, 1));
  auto f = make_function_symbol("f", {Coord::base(1), Coord::fiber(1)});
  JetContext fc(1, 1, 1, {f});
  EXPECT_TRUE(weak_critical_system(fc, total_derivative(fc, Expr::function(f), 1), tx)[0].is_zero());
  EXPECT_THROW(weak_critical_system(JetContext(2, 3, 1), Expr(), tx), DimensionError);
}

TEST(Covariance, Examples) {
  TensorType tx = TensorType::from_signature("+");
  EXPECT_TRUE(general_covariance_check(JetContext(2, 2, 1), Expr(), tx));
  JetContext ctx(1, 1, 1);
  CovarianceTable table = covariance_system(ctx, y1, tx);
  EXPECT_FALSE(table.is_zero());
  EXPECT_FALSE(table.coefficient(1, 1, {1}).is_zero());
  EXPECT_FALSE(general_covariance_check(ctx, y1, tx));
}

TEST(Covariance, StructuralProperties) {
  Rng rng(64);
  TensorType tx = TensorType::from_signature("+");
  for (int t = 0; t < 5; ++t) {
    JetContext ctx(2, 2, 1);
    Expr L = testing::random_lagrangian(rng, 2, 2, 1, 3, 2);
    CovarianceTable table = covariance_system(ctx, L, tx);
    EulerSystem E = euler(ctx.bumped(3), L);
    for (int C = 1; C <= 2; ++C)
      for (int p = 1; p <= 2; ++p) {
        EXPECT_EQ(table.coefficient(C, p, {}), partial(E[C], Coord::base(p)));
        EXPECT_EQ(table.coefficient(C, p, {1, 1, 2}), table.coefficient(C, p, {2, 1, 1}));
        EXPECT_EQ(table.coefficient(C, p, {1, 2}), table.coefficient(C, p, {2, 1}));
      }
  }
}

TEST(Covariance, MatchesConcreteSubstitution) {
  Rng rng(65);
  for (const char* sig : {"+", "-"}) {
    TensorType type = TensorType::from_signature(sig);
    JetContext ctx(2, 2, 1);
    Expr L = testing::random_lagrangian(rng, 2, 2, 1, 3, 2);
    CovarianceTable table = covariance_system(ctx, L, type);
    for (int t = 0; t < 3; ++t) {
      std::vector<Expr> xi{random_polynomial(rng, testing::base_coords(2), 3),
                           random_polynomial(rng, testing::base_coords(2), 3)};
      JetContext big = ctx.bumped(3);
      EulerSystem direct = euler(big, lie_lagrangian(big, L, tensor_lift(big, type, xi)));
      std::map<std::string, Expr> realize;
      for (std::size_t p = 0; p < 2; ++p) realize[table.xi[p]->name] = xi[p];
      for (int C = 1; C <= 2; ++C) {
        EXPECT_EQ(substitute_functions(table.lie_euler[static_cast<std::size_t>(C - 1)], realize), direct[C]);
        Expr rebuilt;
        for (const auto& [key, coeff] : table.coefficients) {
          const auto& [c, p, J] = key;
          if (c != C) continue;
          Expr d = xi[static_cast<std::size_t>(p - 1)];
          for (int j : J) d = partial(d, Coord::base(j));
          rebuilt += coeff * d * Expr(static_cast<long>(J.orderings()));
        }
        EXPECT_EQ(rebuilt, direct[C]);
      }
    }
  }
}

}  // namespace
}  // namespace jetvar
