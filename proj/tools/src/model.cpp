#include "jetvar/cli/model.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

namespace jetvar::cli {

namespace {

std::string describe(const std::string& message, SourceLocation at, const std::vector<std::string>& expected) {
  std::string out = std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + message;
  if (!expected.empty()) {
    out += " (expected ";
    for (std::size_t k = 0; k < expected.size(); ++k) out += (k ? ", " : "") + expected[k];
    out += ")";
  }
  return out;
}

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

int small_int(std::string_view s) {
  if (s.size() > 3) return 1000;
  return std::stoi(std::string(s));
}

struct CoordName {
  Coord coord;
  bool reordered = false;
};

// x<i>, y<mu> and y<mu>_<digits>; anything else is not a coordinate name.
std::optional<CoordName> coord_from_name(std::string_view name) {
  if (name.size() < 2) return std::nullopt;
  if (name[0] == 'x' && all_digits(name.substr(1))) {
    int i = small_int(name.substr(1));
    if (i < 1 || i > 255) return std::nullopt;
    return CoordName{Coord::base(i)};
  }
  if (name[0] != 'y') return std::nullopt;
  auto under = name.find('_');
  std::string_view fiber = name.substr(1, under == std::string_view::npos ? std::string_view::npos : under - 1);
  if (!all_digits(fiber)) return std::nullopt;
  int mu = small_int(fiber);
  if (mu < 1 || mu > 255) return std::nullopt;
  if (under == std::string_view::npos) return CoordName{Coord::fiber(mu)};
  std::string_view digits = name.substr(under + 1);
  if (!all_digits(digits) || digits.size() > kMaxIndexLength) return std::nullopt;
  std::vector<int> entries;
  for (char c : digits) {
    if (c == '0') return std::nullopt;
    entries.push_back(c - '0');
  }
  bool sorted = std::is_sorted(entries.begin(), entries.end());
  return CoordName{Coord::jet(mu, MultiIndex(std::span<const int>(entries))), !sorted};
}

bool is_identifier(std::string_view s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

bool is_reserved(std::string_view s) {
  if (s == "diff") return true;
  if (coord_from_name(s)) return true;
  return s.size() > 1 && s[0] == 'd' && coord_from_name(s.substr(1)).has_value();
}

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Caret, Amp, LParen, RParen, Comma, End };

struct Token {
  Tok kind;
  std::string text;
  int column;
};

std::string token_label(const Token& t) {
  if (t.kind == Tok::End) return "end of expression";
  return "'" + t.text + "'";
}

class ExprParser {
 public:
  ExprParser(const JetContext& ctx, std::string_view text, SourceLocation origin, std::vector<std::string>* warnings)
      : ctx_(ctx), origin_(origin), warnings_(warnings) {
    tokenize(text);
  }

  DiffForm parse() {
    DiffForm out = sum();
    if (peek().kind != Tok::End)
      fail("unexpected " + token_label(peek()), peek(), {"operator", "end of expression"});
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& message, const Token& at, std::vector<std::string> expected = {}) const {
    throw ParseError(message, where(at), std::move(expected));
  }

  SourceLocation where(const Token& t) const { return {origin_.line, origin_.column + t.column}; }

  void tokenize(std::string_view s) {
    std::size_t k = 0;
    while (k < s.size()) {
      char c = s[k];
      int col = static_cast<int>(k);
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++k;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = k;
        while (j < s.size() && std::isdigit(static_cast<unsigned char>(s[j]))) ++j;
        tokens_.push_back({Tok::Number, std::string(s.substr(k, j - k)), col});
        k = j;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = k;
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
        tokens_.push_back({Tok::Ident, std::string(s.substr(k, j - k)), col});
        k = j;
      } else {
        static const std::map<char, Tok> ops{{'+', Tok::Plus},  {'-', Tok::Minus},  {'*', Tok::Star},
                                             {'/', Tok::Slash}, {'^', Tok::Caret},  {'&', Tok::Amp},
                                             {'(', Tok::LParen}, {')', Tok::RParen}, {',', Tok::Comma}};
        auto it = ops.find(c);
        if (it == ops.end())
          throw ParseError(std::string("unexpected character '") + c + "'", {origin_.line, origin_.column + col},
                           {"coordinate", "number", "operator"});
        tokens_.push_back({it->second, std::string(1, c), col});
        ++k;
      }
    }
    tokens_.push_back({Tok::End, "", static_cast<int>(s.size())});
  }

  const Token& peek() const { return tokens_[pos_]; }
  Token next() { return tokens_[pos_++]; }
  bool accept(Tok kind) {
    if (peek().kind != kind) return false;
    ++pos_;
    return true;
  }
  Token expect(Tok kind, const std::string& label) {
    if (peek().kind != kind) fail("unexpected " + token_label(peek()), peek(), {label});
    return next();
  }

  DiffForm sum() {
    DiffForm acc = wedge_chain();
    while (peek().kind == Tok::Plus || peek().kind == Tok::Minus) {
      Token op = next();
      DiffForm rhs = wedge_chain();
      if (rhs.degree() != acc.degree())
        fail("cannot add forms of degree " + std::to_string(acc.degree()) + " and " + std::to_string(rhs.degree()), op);
      if (op.kind == Tok::Plus) {
        acc += rhs;
      } else {
        acc -= rhs;
      }
    }
    return acc;
  }

  DiffForm wedge_chain() {
    DiffForm acc = product();
    while (accept(Tok::Amp)) acc = wedge(acc, product());
    return acc;
  }

  DiffForm product() {
    DiffForm acc = unary();
    while (peek().kind == Tok::Star || peek().kind == Tok::Slash) {
      Token op = next();
      DiffForm rhs = unary();
      if (op.kind == Tok::Star) {
        if (acc.degree() > 0 && rhs.degree() > 0) fail("use & to wedge forms of positive degree", op);
        acc = wedge(acc, rhs);
      } else {
        Expr d = rhs.degree() == 0 ? rhs.scalar() : Expr();
        if (rhs.degree() != 0 || !d.is_constant() || d.is_zero())
          fail("division is only allowed by nonzero rational constants", op);
        acc = Expr(Rational(1) / d.constant_value()) * acc;
      }
    }
    return acc;
  }

  DiffForm unary() {
    if (accept(Tok::Minus)) return -unary();
    if (accept(Tok::Plus)) return unary();
    return power();
  }

  DiffForm power() {
    Token at = peek();
    DiffForm base = primary();
    if (!accept(Tok::Caret)) return base;
    Token e = expect(Tok::Number, "integer exponent");
    if (base.degree() != 0) fail("only functions can be raised to a power", at);
    if (e.text.size() > 3) fail("exponent too large", e);
    return DiffForm(pow(base.scalar(), std::stoi(e.text)));
  }

  Coord checked(const CoordName& c, const Token& t) {
    if (c.reordered && warnings_) {
      SourceLocation loc = where(t);
      warnings_->push_back(std::to_string(loc.line) + ":" + std::to_string(loc.column) + ": " + t.text +
                           " normalized to " + to_string(c.coord));
    }
    try {
      ctx_.check(c.coord);
    } catch (const Error& err) {
      fail(err.what(), t);
    }
    return c.coord;
  }

  DiffForm primary() {
    Token t = next();
    switch (t.kind) {
      case Tok::Number:
        return DiffForm(Expr(Rational(mpz_class(t.text))));
      case Tok::LParen: {
        DiffForm inner = sum();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Ident:
        return identifier(t);
      default:
        fail("unexpected " + token_label(t), t, {"coordinate", "number", "function", "'('"});
    }
  }

  FunctionSymbol function_named(const Token& t) const {
    auto f = ctx_.find_function(t.text);
    if (!f) fail("undeclared function symbol " + t.text, t);
    return *f;
  }

  DiffForm identifier(const Token& t) {
    if (auto c = coord_from_name(t.text)) return DiffForm(Expr(checked(*c, t)));
    if (t.text.size() > 1 && t.text[0] == 'd') {
      if (auto c = coord_from_name(t.text.substr(1))) return DiffForm::basis({checked(*c, t)});
    }
    if (t.text == "diff" && peek().kind == Tok::LParen) {
      next();
      Token name = expect(Tok::Ident, "function name");
      FunctionSymbol f = function_named(name);
      std::vector<int> positions;
      while (accept(Tok::Comma)) {
        Token arg = expect(Tok::Ident, "argument of " + f->name);
        auto c = coord_from_name(arg.text);
        int pos = c ? argument_position(*f, c->coord) : 0;
        if (pos == 0) fail(arg.text + " is not an argument of " + f->name, arg);
        positions.push_back(pos);
      }
      expect(Tok::RParen, "')'");
      return DiffForm(Expr::function(f, MultiIndex(std::span<const int>(positions))));
    }
    if (t.text.size() > 1 && (t.text[0] == 'x' || t.text[0] == 'y') && std::isdigit(static_cast<unsigned char>(t.text[1])))
      fail("malformed coordinate " + t.text, t, {"x<i>", "y<mu>", "y<mu>_<digits 1-9>"});
    return DiffForm(Expr::function(function_named(t)));
  }

  const JetContext& ctx_;
  SourceLocation origin_;
  std::vector<std::string>* warnings_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

struct Entry {
  std::string key;
  std::string value;
  SourceLocation key_at;
  SourceLocation value_at;
};

struct Section {
  std::string name;
  SourceLocation at;
  std::vector<Entry> entries;
};

std::string trim(std::string_view s, std::size_t* lead = nullptr) {
  std::size_t a = 0;
  while (a < s.size() && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  std::size_t b = s.size();
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  if (lead) *lead = a;
  return std::string(s.substr(a, b - a));
}

const std::vector<std::string> kSections{"space", "tensor_type", "functions", "lagrangian", "fields", "forms", "sections"};

std::vector<Section> split_sections(std::string_view text) {
  std::vector<Section> out;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::size_t lead = 0;
    std::string body = trim(raw, &lead);
    if (body.empty()) continue;
    int col = static_cast<int>(lead) + 1;
    if (body.front() == '[') {
      if (body.back() != ']') throw ParseError("unterminated section header", {line, col}, {"']'"});
      std::string name = trim(std::string_view(body).substr(1, body.size() - 2));
      if (std::find(kSections.begin(), kSections.end(), name) == kSections.end())
        throw ParseError("unknown section [" + name + "]", {line, col}, kSections);
      for (const auto& s : out)
        if (s.name == name) throw ParseError("duplicate section [" + name + "]", {line, col});
      out.push_back({name, {line, col}, {}});
      continue;
    }
    if (out.empty()) throw ParseError("entry outside of any section", {line, col}, {"'[space]'"});
    auto eq = raw.find('=');
    if (eq == std::string::npos) throw ParseError("missing '='", {line, col + static_cast<int>(body.size())}, {"'='"});
    std::size_t vlead = 0;
    std::string key = trim(std::string_view(raw).substr(0, eq));
    std::string value = trim(std::string_view(raw).substr(eq + 1), &vlead);
    if (key.empty()) throw ParseError("missing key", {line, col}, {"name"});
    out.back().entries.push_back({key, value, {line, col}, {line, static_cast<int>(eq + 1 + vlead) + 1}});
  }
  return out;
}

const Section* find_section(const std::vector<Section>& all, const std::string& name) {
  for (const auto& s : all)
    if (s.name == name) return &s;
  return nullptr;
}

int parse_int(const Entry& e) {
  std::string v = e.value;
  bool neg = !v.empty() && v[0] == '-';
  if (!all_digits(neg ? v.substr(1) : v) || v.size() > 6) throw ParseError("expected an integer", e.value_at, {"integer"});
  return std::stoi(v);
}

// "NAME.COORD" keys of the fields and sections blocks.
std::pair<std::string, Coord> dotted_key(const Entry& e, const JetContext& ctx, bool fiber_only) {
  auto dot = e.key.find('.');
  std::vector<std::string> expected{fiber_only ? "NAME.y<mu>" : "NAME.x<i> or NAME.y<mu>"};
  if (dot == std::string::npos) throw ParseError("expected a dotted component key", e.key_at, expected);
  std::string name = e.key.substr(0, dot);
  std::string comp = e.key.substr(dot + 1);
  if (!is_identifier(name)) throw ParseError("invalid name '" + name + "'", e.key_at, {"identifier"});
  auto c = coord_from_name(comp);
  SourceLocation comp_at{e.key_at.line, e.key_at.column + static_cast<int>(dot) + 1};
  if (!c || c->coord.order() > 0 || (fiber_only && c->coord.is_base()))
    throw ParseError("invalid component '" + comp + "'", comp_at, expected);
  try {
    ctx.check(c->coord);
  } catch (const Error& err) {
    throw ParseError(err.what(), comp_at);
  }
  return {name, c->coord};
}

template <typename T>
auto find_named(std::vector<Named<T>>& list, const std::string& name) {
  return std::find_if(list.begin(), list.end(), [&](const Named<T>& x) { return x.name == name; });
}

}  // namespace

ParseError::ParseError(const std::string& message, SourceLocation at, std::vector<std::string> expected)
    : Error(ErrorCode::Parse, describe(message, at, expected)), message_(message), at_(at), expected_(std::move(expected)) {}

JetContext Model::context() const { return JetContext(base_dim, fiber_dim, order, functions, order_cap); }

const ProjectableField* Model::field(const std::string& name) const {
  for (const auto& f : fields)
    if (f.name == name) return &f.value;
  return nullptr;
}

const DiffForm* Model::form(const std::string& name) const {
  for (const auto& f : forms)
    if (f.name == name) return &f.value;
  return nullptr;
}

const PolySection* Model::section(const std::string& name) const {
  for (const auto& s : sections)
    if (s.name == name) return &s.value;
  return nullptr;
}

Expr parse_expression(const JetContext& ctx, std::string_view text, std::vector<std::string>* warnings) {
  return parse_expression_at(ctx, text, {1, 1}, warnings);
}

DiffForm parse_form(const JetContext& ctx, std::string_view text, std::vector<std::string>* warnings) {
  return ExprParser(ctx, text, {1, 1}, warnings).parse();
}

Expr parse_expression_at(const JetContext& ctx, std::string_view text, SourceLocation at, std::vector<std::string>* warnings) {
  DiffForm f = ExprParser(ctx, text, at, warnings).parse();
  if (f.degree() != 0) throw ParseError("expected a function, got a " + std::to_string(f.degree()) + "-form", at);
  return f.scalar();
}

Model parse_model(std::string_view text, int order_cap) {
  Model model;
  model.order_cap = order_cap;
  auto sections = split_sections(text);

  const Section* space = find_section(sections, "space");
  if (!space) throw ParseError("missing [space] section", {1, 1}, {"'[space]'"});
  std::map<std::string, int> dims;
  for (const auto& e : space->entries) {
    if (e.key != "base_dim" && e.key != "fiber_dim" && e.key != "order")
      throw ParseError("unknown key '" + e.key + "'", e.key_at, {"base_dim", "fiber_dim", "order"});
    if (dims.count(e.key)) throw ParseError("duplicate key '" + e.key + "'", e.key_at);
    dims[e.key] = parse_int(e);
  }
  for (const char* k : {"base_dim", "fiber_dim", "order"})
    if (!dims.count(k)) throw ParseError(std::string("missing key '") + k + "' in [space]", space->at, {k});
  model.base_dim = dims["base_dim"];
  model.fiber_dim = dims["fiber_dim"];
  model.order = dims["order"];
  try {
    (void)model.context();
  } catch (const Error& err) {
    if (err.code() == ErrorCode::Order) throw;
    throw ParseError(err.what(), space->at);
  }
  if (model.base_dim > 9) throw ParseError("base_dim above 9 is not expressible in the coordinate grammar", space->at);

  if (const Section* tt = find_section(sections, "tensor_type")) {
    std::string variance;
    int sign = 1;
    SourceLocation at = tt->at;
    for (const auto& e : tt->entries) {
      if (e.key == "variance") {
        variance = e.value;
        at = e.value_at;
        if (variance.empty() || variance.find_first_not_of("+-") != std::string::npos)
          throw ParseError("variance must be a string of '+' and '-'", e.value_at, {"'+'", "'-'"});
      } else if (e.key == "cov_sign") {
        sign = parse_int(e);
        if (sign != 1 && sign != -1) throw ParseError("cov_sign must be 1 or -1", e.value_at, {"1", "-1"});
      } else {
        throw ParseError("unknown key '" + e.key + "'", e.key_at, {"variance", "cov_sign"});
      }
    }
    if (variance.empty()) throw ParseError("missing key 'variance' in [tensor_type]", tt->at, {"variance"});
    model.tensor = TensorType::from_signature(variance, sign);
    if (model.tensor->fiber_dim(model.base_dim) != model.fiber_dim)
      throw ParseError("tensor type " + variance + " needs fiber_dim " +
                           std::to_string(model.tensor->fiber_dim(model.base_dim)) + ", got " + std::to_string(model.fiber_dim),
                       at);
  }

  if (const Section* fs = find_section(sections, "functions")) {
    JetContext ctx = model.context();
    for (const auto& e : fs->entries) {
      if (!is_identifier(e.key) || is_reserved(e.key))
        throw ParseError("invalid function name '" + e.key + "'", e.key_at, {"identifier"});
      std::vector<Coord> args;
      std::size_t start = 0;
      while (start <= e.value.size()) {
        std::size_t comma = e.value.find(',', start);
        std::size_t stop = comma == std::string::npos ? e.value.size() : comma;
        std::size_t lead = 0;
        std::string arg = trim(std::string_view(e.value).substr(start, stop - start), &lead);
        SourceLocation at{e.value_at.line, e.value_at.column + static_cast<int>(start + lead)};
        auto c = coord_from_name(arg);
        if (!c || c->coord.order() > 0)
          throw ParseError("function arguments must be coordinates x<i> or y<mu>", at, {"x<i>", "y<mu>"});
        try {
          ctx.check(c->coord);
        } catch (const Error& err) {
          throw ParseError(err.what(), at);
        }
        args.push_back(c->coord);
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      try {
        ctx = ctx.with_function(make_function_symbol(e.key, args));
      } catch (const Error& err) {
        throw ParseError(err.what(), e.key_at);
      }
    }
    model.functions = ctx.functions();
  }

  JetContext ctx = model.context();
  auto expr_of = [&](const Entry& e) { return parse_expression_at(ctx, e.value, e.value_at, &model.warnings); };

  if (const Section* ls = find_section(sections, "lagrangian")) {
    for (const auto& e : ls->entries) {
      if (e.key != "L") throw ParseError("unknown key '" + e.key + "'", e.key_at, {"L"});
      if (model.lagrangian) throw ParseError("duplicate Lagrangian", e.key_at);
      model.lagrangian = expr_of(e);
    }
  }

  if (const Section* fs = find_section(sections, "fields")) {
    std::vector<Named<std::map<Coord, Expr>>> raw;
    for (const auto& e : fs->entries) {
      auto [name, c] = dotted_key(e, ctx, false);
      auto it = find_named(raw, name);
      if (it == raw.end()) {
        raw.push_back({name, {}, e.key_at});
        it = raw.end() - 1;
      }
      if (it->value.count(c)) throw ParseError("duplicate component " + e.key, e.key_at);
      it->value[c] = expr_of(e);
    }
    for (auto& f : raw) {
      std::vector<Expr> xi;
      std::vector<Expr> Xi;
      for (int k = 1; k <= model.base_dim; ++k) xi.push_back(f.value[Coord::base(k)]);
      for (int mu = 1; mu <= model.fiber_dim; ++mu) Xi.push_back(f.value[Coord::fiber(mu)]);
      try {
        model.fields.push_back({f.name, ProjectableField(std::move(xi), std::move(Xi)), f.at});
      } catch (const Error& err) {
        throw ParseError("field " + f.name + ": " + err.what(), f.at);
      }
    }
  }

  if (const Section* fs = find_section(sections, "forms")) {
    for (const auto& e : fs->entries) {
      if (!is_identifier(e.key)) throw ParseError("invalid form name '" + e.key + "'", e.key_at, {"identifier"});
      if (find_named(model.forms, e.key) != model.forms.end()) throw ParseError("duplicate form " + e.key, e.key_at);
      model.forms.push_back({e.key, ExprParser(ctx, e.value, e.value_at, &model.warnings).parse(), e.key_at});
    }
  }

  if (const Section* ss = find_section(sections, "sections")) {
    std::vector<Named<std::map<int, Expr>>> raw;
    for (const auto& e : ss->entries) {
      auto [name, c] = dotted_key(e, ctx, true);
      auto it = find_named(raw, name);
      if (it == raw.end()) {
        raw.push_back({name, {}, e.key_at});
        it = raw.end() - 1;
      }
      if (it->value.count(c.index())) throw ParseError("duplicate component " + e.key, e.key_at);
      Expr g = expr_of(e);
      for (const auto& a : atoms(g))
        if (!a.is_coord() || !a.coord().is_base())
          throw ParseError("section components may only depend on x coordinates", e.value_at);
      it->value[c.index()] = g;
    }
    for (auto& s : raw) {
      std::vector<Expr> g;
      for (int mu = 1; mu <= model.fiber_dim; ++mu) g.push_back(s.value[mu]);
      model.sections.push_back({s.name, PolySection(std::move(g)), s.at});
    }
  }
  return model;
}

std::string emit_model(const Model& model) {
  std::ostringstream out;
  out << "[space]\nbase_dim = " << model.base_dim << "\nfiber_dim = " << model.fiber_dim << "\norder = " << model.order
      << "\n";
  if (model.tensor) out << "\n[tensor_type]\nvariance = " << model.tensor->signature() << "\ncov_sign = " << model.tensor->cov_sign() << "\n";
  if (!model.functions.empty()) {
    out << "\n[functions]\n";
    for (const auto& f : model.functions) {
      out << f->name << " =";
      for (std::size_t k = 0; k < f->args.size(); ++k) out << (k ? ", " : " ") << to_string(f->args[k]);
      out << "\n";
    }
  }
  if (model.lagrangian) out << "\n[lagrangian]\nL = " << to_string(*model.lagrangian) << "\n";
  if (!model.fields.empty()) {
    out << "\n[fields]\n";
    for (const auto& f : model.fields) {
      for (int k = 1; k <= f.value.base_dim(); ++k) out << f.name << ".x" << k << " = " << to_string(f.value.xi(k)) << "\n";
      for (int mu = 1; mu <= f.value.fiber_dim(); ++mu) out << f.name << ".y" << mu << " = " << to_string(f.value.Xi(mu)) << "\n";
    }
  }
  if (!model.forms.empty()) {
    out << "\n[forms]\n";
    for (const auto& f : model.forms) out << f.name << " = " << to_string(f.value) << "\n";
  }
  if (!model.sections.empty()) {
    out << "\n[sections]\n";
    for (const auto& s : model.sections)
      for (int mu = 1; mu <= s.value.fiber_dim(); ++mu) out << s.name << ".y" << mu << " = " << to_string(s.value.component(mu)) << "\n";
  }
  return out.str();
}

}  // namespace jetvar::cli
