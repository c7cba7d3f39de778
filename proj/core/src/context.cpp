#include "jetvar/context.hpp"

#include <algorithm>

#include "jetvar/errors.hpp"

namespace jetvar {

const char* error_code_name(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Context: return "context";
    case ErrorCode::Order: return "order";
    case ErrorCode::Substitution: return "substitution";
    case ErrorCode::Degree: return "degree";
    case ErrorCode::Domain: return "domain";
    case ErrorCode::Structure: return "structure";
    case ErrorCode::Horizontality: return "horizontality";
    case ErrorCode::Dimension: return "dimension";
    case ErrorCode::Evaluation: return "evaluation";
    case ErrorCode::Internal: return "internal";
    case ErrorCode::Parse: return "parse";
  }
  return "unknown";
}

Coord Coord::base(int i) {
  if (i < 1 || i > 255) throw ContextError("base index out of range: " + std::to_string(i));
  return Coord(Kind::Base, i, MultiIndex{});
}

Coord Coord::jet(int mu, const MultiIndex& index) {
  if (mu < 1 || mu > 255) throw ContextError("fiber index out of range: " + std::to_string(mu));
  return Coord(Kind::Jet, mu, index);
}

Coord Coord::raised(int i) const {
  if (is_base()) throw ContextError("base coordinates have no jet successor");
  return Coord(Kind::Jet, index_, multi_.appended(i));
}

FunctionSymbol make_function_symbol(std::string name, std::vector<Coord> args) {
  if (name.empty()) throw ContextError("function symbol needs a name");
  for (std::size_t a = 0; a < args.size(); ++a) {
    if (args[a].order() != 0)
      throw ContextError("function symbol " + name + ": arguments must be order-0 coordinates");
    for (std::size_t b = 0; b < a; ++b)
      if (args[a] == args[b]) throw ContextError("function symbol " + name + ": repeated argument");
  }
  return std::make_shared<const FunctionSymbolData>(FunctionSymbolData{std::move(name), std::move(args)});
}

int argument_position(const FunctionSymbolData& f, const Coord& c) noexcept {
  for (std::size_t a = 0; a < f.args.size(); ++a)
    if (f.args[a] == c) return static_cast<int>(a) + 1;
  return 0;
}

JetContext::JetContext(int n, int m, int max_order, std::vector<FunctionSymbol> functions, int order_cap)
    : n_(n), m_(m), max_order_(max_order), order_cap_(order_cap), functions_() {
  if (n < 1 || m < 1) throw ContextError("base and fiber dimensions must be at least 1");
  if (n > 255 || m > 255) throw ContextError("dimension too large");
  if (max_order < 0) throw ContextError("jet order must be non-negative");
  if (order_cap > static_cast<int>(kMaxIndexLength))
    throw ContextError("order cap exceeds the supported maximum");
  if (max_order > order_cap)
    throw OrderError("jet order " + std::to_string(max_order) + " exceeds cap " + std::to_string(order_cap));
  for (auto& f : functions) {
    JetContext probe = *this;
    *this = probe.with_function(std::move(f));
  }
}

JetContext JetContext::with_order(int order) const {
  if (order < 0) throw ContextError("jet order must be non-negative");
  if (order > order_cap_)
    throw OrderError("operation needs jet order " + std::to_string(order) + " but the cap is " +
                     std::to_string(order_cap_));
  JetContext out = *this;
  out.max_order_ = order;
  return out;
}

JetContext JetContext::with_order_cap(int cap) const {
  if (cap > static_cast<int>(kMaxIndexLength)) throw ContextError("order cap exceeds the supported maximum");
  if (cap < max_order_) throw OrderError("order cap below current jet order");
  JetContext out = *this;
  out.order_cap_ = cap;
  return out;
}

JetContext JetContext::with_function(FunctionSymbol f) const {
  if (!f) throw ContextError("null function symbol");
  check(*f);
  if (find_function(f->name)) throw ContextError("function symbol declared twice: " + f->name);
  JetContext out = *this;
  out.functions_.push_back(std::move(f));
  return out;
}

std::optional<FunctionSymbol> JetContext::find_function(const std::string& name) const {
  for (const auto& f : functions_)
    if (f->name == name) return f;
  return std::nullopt;
}

void JetContext::check(const Coord& c) const {
  if (c.is_base()) {
    if (c.index() > n_) throw ContextError("base coordinate x" + std::to_string(c.index()) + " outside n = " + std::to_string(n_));
    return;
  }
  if (c.index() > m_) throw ContextError("fiber index " + std::to_string(c.index()) + " outside m = " + std::to_string(m_));
  for (int i : c.multi())
    if (i > n_) throw ContextError("derivative index " + std::to_string(i) + " outside n = " + std::to_string(n_));
  if (c.order() > max_order_)
    throw OrderError("coordinate of order " + std::to_string(c.order()) + " exceeds context order " +
                     std::to_string(max_order_));
}

void JetContext::check(const FunctionSymbolData& f) const {
  for (const auto& a : f.args) check(a);
}

std::vector<Coord> JetContext::coordinates(int order) const {
  std::vector<Coord> out;
  for (int i = 1; i <= n_; ++i) out.push_back(Coord::base(i));
  for (int mu = 1; mu <= m_; ++mu)
    for (const auto& I : multi_indices_up_to(n_, order)) out.push_back(Coord::jet(mu, I));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace jetvar
