#include "slitlogic/formula.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <utility>

#include "slitlogic/error.hpp"

namespace slitlogic {
namespace {

constexpr std::size_t kMaxNesting = 2000;

bool valid_identifier(std::string_view name) {
  if (name.empty() || !std::isalpha(static_cast<unsigned char>(name.front()))) return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

enum class Tok { ident, zero, one, bang, amp, bar, caret, lparen, rparen, end };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::ident: return "identifier '" + t.text + "'";
    case Tok::end: return "end of input";
    default: return "'" + t.text + "'";
  }
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      const std::size_t line = line_, column = column_;
      if (pos_ >= text_.size()) {
        out.push_back({Tok::end, "", line, column});
        return out;
      }
      const char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c))) {
        std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                       text_[pos_] == '_')) {
          advance(1);
        }
        out.push_back({Tok::ident, std::string(text_.substr(start, pos_ - start)), line, column});
        continue;
      }
      if (auto alias = unicode_operator()) {
        out.push_back({alias->first, alias->second, line, column});
        continue;
      }
      Tok kind;
      switch (c) {
        case '0': kind = Tok::zero; break;
        case '1': kind = Tok::one; break;
        case '!': kind = Tok::bang; break;
        case '&': kind = Tok::amp; break;
        case '|': kind = Tok::bar; break;
        case '^': kind = Tok::caret; break;
        case '(': kind = Tok::lparen; break;
        case ')': kind = Tok::rparen; break;
        default:
          throw ParseError(line, column, "unexpected character '" + current_char() + "'");
      }
      out.push_back({kind, std::string(1, c), line, column});
      advance(1);
    }
  }

 private:
  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
        ++pos_;
      } else {
        advance(1);
      }
    }
  }

  // Columns count code points, not bytes.
  void advance(std::size_t bytes) {
    for (std::size_t i = 0; i < bytes; ++i, ++pos_) {
      if ((static_cast<unsigned char>(text_[pos_]) & 0xC0) != 0x80) ++column_;
    }
  }

  std::optional<std::pair<Tok, std::string>> unicode_operator() {
    static const std::pair<std::string_view, Tok> aliases[] = {
        {"\xC2\xAC", Tok::bang},       // ¬
        {"\xE2\x88\xA7", Tok::amp},    // ∧
        {"\xE2\x88\xA8", Tok::bar},    // ∨
        {"\xE2\x8A\x95", Tok::caret},  // ⊕
    };
    for (const auto& [spelling, kind] : aliases) {
      if (text_.substr(pos_).starts_with(spelling)) {
        advance(spelling.size());
        return std::pair{kind, std::string(spelling)};
      }
    }
    return std::nullopt;
  }

  std::string current_char() const {
    std::size_t len = 1;
    while (pos_ + len < text_.size() &&
           (static_cast<unsigned char>(text_[pos_ + len]) & 0xC0) == 0x80) {
      ++len;
    }
    return std::string(text_.substr(pos_, len));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t column_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Formula run() {
    if (peek().kind == Tok::end) {
      throw ParseError(peek().line, peek().column, "empty formula");
    }
    Formula f = or_expr();
    if (peek().kind != Tok::end) fail("an operator or end of input");
    return f;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }

  [[noreturn]] void fail(const std::string& expected) const {
    throw ParseError(peek().line, peek().column, "expected " + expected + ", found " + describe(peek()));
  }

  template <typename Next>
  Formula chain(Tok op, FormulaKind kind, Next next) {
    std::vector<Formula> items;
    items.push_back((this->*next)());
    while (peek().kind == op) {
      ++pos_;
      items.push_back((this->*next)());
    }
    if (items.size() == 1) return std::move(items.front());
    switch (kind) {
      case FormulaKind::disjunction: return Formula::disjunction(std::move(items));
      case FormulaKind::exclusive_or: return Formula::exclusive_or(std::move(items));
      default: return Formula::conjunction(std::move(items));
    }
  }

  Formula or_expr() { return chain(Tok::bar, FormulaKind::disjunction, &Parser::xor_expr); }
  Formula xor_expr() { return chain(Tok::caret, FormulaKind::exclusive_or, &Parser::and_expr); }
  Formula and_expr() { return chain(Tok::amp, FormulaKind::conjunction, &Parser::unary); }

  Formula unary() {
    if (peek().kind == Tok::bang) {
      ++pos_;
      Descend guard(*this);
      return Formula::negation(unary());
    }
    return atom();
  }

  Formula atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::ident: {
        ++pos_;
        return Formula::variable(t.text);
      }
      case Tok::zero: ++pos_; return Formula::constant(false);
      case Tok::one: ++pos_; return Formula::constant(true);
      case Tok::lparen: {
        ++pos_;
        Descend guard(*this);
        Formula inner = or_expr();
        if (peek().kind != Tok::rparen) fail("')'");
        ++pos_;
        return inner;
      }
      default: fail("a variable, constant, '!' or '('");
    }
  }

  struct Descend {
    explicit Descend(Parser& p) : parser(p) {
      if (++parser.depth_ > kMaxNesting) {
        throw ParseError(parser.peek().line, parser.peek().column, "formula nested too deeply");
      }
    }
    ~Descend() { --parser.depth_; }
    Parser& parser;
  };

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t depth_ = 0;
};

int precedence(FormulaKind kind) {
  switch (kind) {
    case FormulaKind::disjunction: return 1;
    case FormulaKind::exclusive_or: return 2;
    case FormulaKind::conjunction: return 3;
    case FormulaKind::negation: return 4;
    default: return 5;
  }
}

void render_into(const Formula& f, std::string& out) {
  switch (f.kind()) {
    case FormulaKind::variable: out += f.name(); return;
    case FormulaKind::constant: out += f.value() ? "1" : "0"; return;
    case FormulaKind::negation: {
      const Formula& c = f.children().front();
      out += "!";
      const bool paren = precedence(c.kind()) < precedence(FormulaKind::negation);
      if (paren) out += "(";
      render_into(c, out);
      if (paren) out += ")";
      return;
    }
    default: break;
  }
  const char* sep = f.kind() == FormulaKind::disjunction    ? " | "
                    : f.kind() == FormulaKind::exclusive_or ? " ^ "
                                                            : " & ";
  bool first = true;
  for (const Formula& c : f.children()) {
    if (!first) out += sep;
    first = false;
    // Equal precedence needs parentheses too, otherwise the chain would flatten.
    const bool paren = precedence(c.kind()) <= precedence(f.kind());
    if (paren) out += "(";
    render_into(c, out);
    if (paren) out += ")";
  }
}

void collect_variables(const Formula& f, std::vector<std::string>& names, std::set<std::string>& seen) {
  if (f.kind() == FormulaKind::variable) {
    if (seen.insert(f.name()).second) names.push_back(f.name());
    return;
  }
  for (const Formula& c : f.children()) collect_variables(c, names, seen);
}

std::size_t index_of(std::span<const std::string> order, const std::string& name) {
  auto it = std::find(order.begin(), order.end(), name);
  if (it == order.end()) throw ArgumentError("variable '" + name + "' is not in the variable order");
  return static_cast<std::size_t>(it - order.begin());
}

MultilinearPoly lower(const Formula& f, std::span<const std::string> order) {
  const std::size_t n = order.size();
  switch (f.kind()) {
    case FormulaKind::variable: return MultilinearPoly::variable(n, index_of(order, f.name()) + 1);
    case FormulaKind::constant: return MultilinearPoly::constant(n, f.value() ? 1 : 0);
    case FormulaKind::negation:
      return subtract(MultilinearPoly::constant(n, 1), lower(f.children().front(), order));
    default: break;
  }
  MultilinearPoly acc = lower(f.children().front(), order);
  for (std::size_t i = 1; i < f.children().size(); ++i) {
    const MultilinearPoly next = lower(f.children()[i], order);
    switch (f.kind()) {
      case FormulaKind::conjunction: acc = multiply(acc, next); break;
      case FormulaKind::disjunction: acc = subtract(add(acc, next), multiply(acc, next)); break;
      default: acc = xor_op(acc, next); break;
    }
  }
  return acc;
}

}  // namespace

Formula::Formula(FormulaKind kind, std::string name, bool value, std::vector<Formula> children)
    : kind_(kind), name_(std::move(name)), value_(value), children_(std::move(children)) {}

Formula Formula::variable(std::string name) {
  if (!valid_identifier(name)) throw ArgumentError("invalid variable name '" + name + "'");
  return Formula(FormulaKind::variable, std::move(name), false, {});
}

Formula Formula::constant(bool value) { return Formula(FormulaKind::constant, "", value, {}); }

Formula Formula::negation(Formula child) {
  std::vector<Formula> children;
  children.push_back(std::move(child));
  return Formula(FormulaKind::negation, "", false, std::move(children));
}

Formula Formula::nary(FormulaKind kind, std::vector<Formula> children) {
  if (children.size() < 2) throw ArgumentError("n-ary connective needs at least two operands");
  return Formula(kind, "", false, std::move(children));
}

Formula Formula::conjunction(std::vector<Formula> children) {
  return nary(FormulaKind::conjunction, std::move(children));
}
Formula Formula::disjunction(std::vector<Formula> children) {
  return nary(FormulaKind::disjunction, std::move(children));
}
Formula Formula::exclusive_or(std::vector<Formula> children) {
  return nary(FormulaKind::exclusive_or, std::move(children));
}

Formula parse(std::string_view text) { return Parser(Lexer(text).run()).run(); }

std::string render(const Formula& f) {
  std::string out;
  render_into(f, out);
  return out;
}

std::vector<std::string> variables(const Formula& f) {
  std::vector<std::string> names;
  std::set<std::string> seen;
  collect_variables(f, names, seen);
  return names;
}

bool evaluate(const Formula& f, std::span<const std::string> order, std::uint32_t assignment) {
  switch (f.kind()) {
    case FormulaKind::variable: return ((assignment >> index_of(order, f.name())) & 1u) != 0;
    case FormulaKind::constant: return f.value();
    case FormulaKind::negation: return !evaluate(f.children().front(), order, assignment);
    case FormulaKind::conjunction:
      return std::all_of(f.children().begin(), f.children().end(),
                         [&](const Formula& c) { return evaluate(c, order, assignment); });
    case FormulaKind::disjunction:
      return std::any_of(f.children().begin(), f.children().end(),
                         [&](const Formula& c) { return evaluate(c, order, assignment); });
    case FormulaKind::exclusive_or: {
      bool parity = false;
      for (const Formula& c : f.children()) parity ^= evaluate(c, order, assignment);
      return parity;
    }
  }
  return false;
}

MultilinearPoly ast_to_poly(const Formula& f, std::span<const std::string> order) {
  if (order.size() > kMaxVariables) {
    throw ArgumentError("variable order has " + std::to_string(order.size()) + " names; at most " +
                        std::to_string(kMaxVariables) + " are supported");
  }
  std::set<std::string> seen;
  for (const std::string& name : order) {
    if (!seen.insert(name).second) throw ArgumentError("duplicate variable '" + name + "' in order");
  }
  return lower(f, order);
}

MultilinearPoly ast_to_poly(const Formula& f) {
  const std::vector<std::string> order = variables(f);
  return ast_to_poly(f, order);
}

EquivalenceResult equivalence(const Formula& f, const Formula& g) {
  std::set<std::string> names;
  for (auto& v : variables(f)) names.insert(v);
  for (auto& v : variables(g)) names.insert(v);

  EquivalenceResult result;
  result.order.assign(names.begin(), names.end());
  const MultilinearPoly difference = subtract(ast_to_poly(f, result.order), ast_to_poly(g, result.order));
  result.equivalent = difference.is_zero();
  if (!result.equivalent) {
    // At a lowest-degree monomial S of the difference, no other monomial
    // divides S, so the difference evaluates to that (nonzero) coefficient.
    const Monomial lowest = difference.terms().front().monomial;
    std::vector<int> witness(result.order.size());
    for (std::size_t i = 0; i < witness.size(); ++i) witness[i] = lowest.contains(i + 1) ? 1 : 0;
    result.witness = std::move(witness);
  }
  return result;
}

}  // namespace slitlogic
