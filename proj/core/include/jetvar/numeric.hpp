#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "jetvar/context.hpp"
#include "jetvar/expr.hpp"
#include "jetvar/forms.hpp"
#include "jetvar/prolongation.hpp"

namespace jetvar {

/// Coordinate values plus polynomial realizations of opaque function symbols
/// (each an Expr in the symbol's declared arguments).
template <typename Scalar>
struct PointAssignment {
  std::map<Coord, Scalar> values;
  std::map<std::string, Expr> realizations;
};

using ExactPoint = PointAssignment<Rational>;
using FloatPoint = PointAssignment<double>;

/// Exact evaluation; throws EvaluationError on an ungrounded atom.
Rational eval(const Expr& e, const ExactPoint& a);
double eval(const Expr& e, const FloatPoint& a);

/// Polynomial with a fixed coordinate layout, evaluated without allocation.
class CompiledExpr {
 public:
  CompiledExpr(const Expr& e, const std::vector<Coord>& layout);
  double operator()(const double* values) const;

 private:
  struct Factor {
    int slot;
    int power;
  };
  struct Term {
    double coeff;
    std::vector<Factor> factors;
  };
  std::vector<Term> terms_;
};

/// Random rational in [-1, 1] with numerator and denominator at most 97.
Rational random_rational(std::mt19937_64& rng);
/// Dense polynomial of degree <= `degree` in the given coordinates with
/// random small rational coefficients.
Expr random_polynomial(std::mt19937_64& rng, const std::vector<Coord>& vars, int degree);

enum class ZeroVerdict { ProbablyZero, Nonzero };

/// Sanity check: evaluates `e` at random rational points with random cubic
/// realizations of its function symbols.
ZeroVerdict randomized_zero_check(const Expr& e, int trials, std::uint64_t seed = 1);

struct FlowOracleResult {
  bool conclusive;
  /// Components of j^r Xi at j^r_{x0} gamma, for x_k, y_mu and z_{I mu} with |I| <= r.
  std::map<Coord, double> components;
};

struct FlowOracleOptions {
  double h_t = 1e-4;
  double rk4_step = 1e-3;
};

/// Differentiates the flow of Xi acting on the prolonged section at t = 0.
FlowOracleResult flow_prolong_oracle(const ProjectableField& X, const PolySection& gamma,
                                     const std::vector<double>& x0, int r, const FlowOracleOptions& options = {});

/// The point j^r_{x0} gamma as coordinate values (x, y, z up to order r).
std::map<Coord, double> jet_of_section(const PolySection& gamma, int n, const std::vector<double>& x0, int r);

struct GridSpec {
  int n;
  int N;  // nodes per axis on the unit cube
};

struct GradientCheckReport {
  double max_relative_error;
  /// max |h^n E| over the compared nodes.
  double scale;
  bool vacuous;
  int compared_nodes;
};

/// Compares the gradient of the discrete action with respect to nodal values
/// against h^n E_mu at nodes at least two steps from the boundary.
GradientCheckReport discrete_action_gradient_check(const JetContext& ctx, const Expr& L, const PolySection& gamma,
                                                   const GridSpec& grid);

struct ConvergenceReport {
  std::vector<int> N;
  std::vector<double> errors;
  /// Least-squares slope of log(error) against log(h).
  double order;
};

ConvergenceReport gradient_convergence(const JetContext& ctx, const Expr& L, const PolySection& gamma, int n,
                                       const std::vector<int>& N);

}  // namespace jetvar
