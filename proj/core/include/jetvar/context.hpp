#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "jetvar/multi_index.hpp"

namespace jetvar {

/// A jet coordinate: either a base coordinate x_i or a fiber/jet coordinate
/// z_{I,mu} (with I empty meaning y_mu).
class Coord {
 public:
  enum class Kind : std::uint8_t { Base, Jet };

  static Coord base(int i);
  static Coord fiber(int mu) { return jet(mu, MultiIndex{}); }
  static Coord jet(int mu, const MultiIndex& index);

  Kind kind() const noexcept { return kind_; }
  bool is_base() const noexcept { return kind_ == Kind::Base; }
  bool is_jet() const noexcept { return kind_ == Kind::Jet; }
  /// Base index i for x_i, fiber index mu for jet coordinates.
  int index() const noexcept { return index_; }
  const MultiIndex& multi() const noexcept { return multi_; }
  /// Jet order; 0 for x_i and y_mu.
  int order() const noexcept { return static_cast<int>(multi_.order()); }

  /// z_{(I u {i}) mu}; base coordinates have no such successor.
  Coord raised(int i) const;

  friend bool operator==(const Coord&, const Coord&) noexcept = default;
  friend std::strong_ordering operator<=>(const Coord& a, const Coord& b) noexcept {
    if (auto c = a.kind_ <=> b.kind_; c != 0) return c;
    if (auto c = a.index_ <=> b.index_; c != 0) return c;
    return a.multi_ <=> b.multi_;
  }

 private:
  Coord(Kind kind, int index, const MultiIndex& multi)
      : kind_(kind), index_(static_cast<std::uint8_t>(index)), multi_(multi) {}

  Kind kind_ = Kind::Base;
  std::uint8_t index_ = 1;
  MultiIndex multi_;
};

struct FunctionSymbolData {
  std::string name;
  std::vector<Coord> args;
};

/// Opaque function of order-0 coordinates. Shared and immutable; identity is
/// the name.
using FunctionSymbol = std::shared_ptr<const FunctionSymbolData>;

/// Validates the argument list (distinct, order 0) and builds a symbol.
FunctionSymbol make_function_symbol(std::string name, std::vector<Coord> args);

/// Position (1-based) of `c` in the argument list of `f`, or 0.
int argument_position(const FunctionSymbolData& f, const Coord& c) noexcept;

/// Highest jet order the engine will ever bump a context to.
inline constexpr int kDefaultOrderCap = 12;

/// Dimensions of the fibered chart, the working jet order and the declared
/// function symbols. A cheap value type; operations that need higher-order
/// coordinates derive a bumped copy.
class JetContext {
 public:
  JetContext(int n, int m, int max_order, std::vector<FunctionSymbol> functions = {},
             int order_cap = kDefaultOrderCap);

  int base_dim() const noexcept { return n_; }
  int fiber_dim() const noexcept { return m_; }
  int max_order() const noexcept { return max_order_; }
  int order_cap() const noexcept { return order_cap_; }
  const std::vector<FunctionSymbol>& functions() const noexcept { return functions_; }

  /// Same context with max_order set to `order`; throws OrderError above the cap.
  JetContext with_order(int order) const;
  /// Same context with max_order raised to at least `order`.
  JetContext bumped(int order) const { return order > max_order_ ? with_order(order) : *this; }
  JetContext with_order_cap(int cap) const;
  /// Adds a function symbol; throws ContextError on a duplicate name or bad args.
  JetContext with_function(FunctionSymbol f) const;

  std::optional<FunctionSymbol> find_function(const std::string& name) const;

  /// Throws ContextError / OrderError when `c` is not a coordinate of J^max_order.
  void check(const Coord& c) const;
  void check(const FunctionSymbolData& f) const;

  /// All coordinates x_1..x_n, y_1..y_m, z_{I mu} with |I| <= order.
  std::vector<Coord> coordinates(int order) const;

 private:
  int n_;
  int m_;
  int max_order_;
  int order_cap_;
  std::vector<FunctionSymbol> functions_;
};

}  // namespace jetvar
