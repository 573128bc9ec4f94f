#include "concept_nmr/formula.hpp"

#include <cctype>
#include <optional>
#include <vector>

#include "concept_nmr/error.hpp"

namespace cnmr::logic {

Formula Formula::var(std::string name) {
  if (!is_identifier(name)) throw InputError("invalid variable name '" + name + "'");
  return Formula(std::make_shared<const Node>(Node{Kind::Var, std::move(name), nullptr, nullptr, 1}));
}

Formula Formula::top() {
  static const Formula t(std::make_shared<const Node>(Node{Kind::Top, {}, nullptr, nullptr, 1}));
  return t;
}

Formula Formula::bot() {
  static const Formula b(std::make_shared<const Node>(Node{Kind::Bot, {}, nullptr, nullptr, 1}));
  return b;
}

Formula Formula::conj(Formula left, Formula right) {
  const std::size_t size = left.size() + right.size() + 1;
  return Formula(std::make_shared<const Node>(Node{Kind::And, {}, std::make_shared<const Formula>(std::move(left)),
                                                   std::make_shared<const Formula>(std::move(right)), size}));
}

Formula Formula::disj(Formula left, Formula right) {
  const std::size_t size = left.size() + right.size() + 1;
  return Formula(std::make_shared<const Node>(Node{Kind::Or, {}, std::make_shared<const Formula>(std::move(left)),
                                                   std::make_shared<const Formula>(std::move(right)), size}));
}

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case Formula::Kind::Var:
      return a.name() == b.name();
    case Formula::Kind::Top:
    case Formula::Kind::Bot:
      return true;
    default:
      return a.left() == b.left() && a.right() == b.right();
  }
}

namespace {

void print(const Formula& f, std::string& out) {
  using K = Formula::Kind;
  switch (f.kind()) {
    case K::Var:
      out += f.name();
      return;
    case K::Top:
      out += "top";
      return;
    case K::Bot:
      out += "bot";
      return;
    case K::And:
    case K::Or: {
      const bool is_and = f.kind() == K::And;
      // Left operand never needs parentheses unless it is a join under a meet;
      // the right operand needs them whenever it would regroup.
      const bool wrap_left = is_and && f.left().kind() == K::Or;
      const bool wrap_right = f.right().kind() == K::Or || (is_and && f.right().kind() == K::And);
      if (wrap_left) out += '(';
      print(f.left(), out);
      if (wrap_left) out += ')';
      out += is_and ? " & " : " | ";
      if (wrap_right) out += '(';
      print(f.right(), out);
      if (wrap_right) out += ')';
      return;
    }
  }
}

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

enum class Tok { Ident, And, Or, LParen, RParen, Strict, Defeasible, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t col = i + 1;
    if (ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && ident_char(text[j])) ++j;
      tokens.push_back({Tok::Ident, std::string(text.substr(i, j - i)), col});
      i = j;
    } else if (c == '&') {
      tokens.push_back({Tok::And, "&", col});
      ++i;
    } else if (c == '|') {
      if (i + 1 < text.size() && text[i + 1] == '-') {
        tokens.push_back({Tok::Strict, "|-", col});
        i += 2;
      } else if (i + 1 < text.size() && text[i + 1] == '~') {
        tokens.push_back({Tok::Defeasible, "|~", col});
        i += 2;
      } else {
        tokens.push_back({Tok::Or, "|", col});
        ++i;
      }
    } else if (c == '(') {
      tokens.push_back({Tok::LParen, "(", col});
      ++i;
    } else if (c == ')') {
      tokens.push_back({Tok::RParen, ")", col});
      ++i;
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", 1, col);
    }
  }
  tokens.push_back({Tok::End, "", text.size() + 1});
  return tokens;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Formula formula() {
    Formula f = term();
    while (peek().kind == Tok::Or) {
      ++pos_;
      f = Formula::disj(std::move(f), term());
    }
    return f;
  }

  const Token& peek() const { return tokens_[pos_]; }
  void advance() { ++pos_; }

  [[noreturn]] void fail(const std::string& message) const {
    const Token& t = peek();
    throw ParseError(message + (t.kind == Tok::End ? " at end of input" : ", found '" + t.text + "'"), 1, t.column);
  }

 private:
  Formula term() {
    Formula f = atom();
    while (peek().kind == Tok::And) {
      ++pos_;
      f = Formula::conj(std::move(f), atom());
    }
    return f;
  }

  Formula atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: {
        ++pos_;
        if (t.text == "top") return Formula::top();
        if (t.text == "bot") return Formula::bot();
        return Formula::var(t.text);
      }
      case Tok::LParen: {
        ++pos_;
        Formula f = formula();
        if (peek().kind != Tok::RParen) fail("expected ')'");
        ++pos_;
        return f;
      }
      default:
        fail("expected a formula");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string Formula::to_string() const {
  std::string out;
  print(*this, out);
  return out;
}

void Formula::collect_variables(std::set<std::string>& out) const {
  if (kind() == Kind::Var) {
    out.insert(name());
  } else if (is_binary()) {
    left().collect_variables(out);
    right().collect_variables(out);
  }
}

std::string Sequent::to_string() const {
  return lhs.to_string() + (kind == Kind::Strict ? " |- " : " |~ ") + rhs.to_string();
}

bool is_identifier(std::string_view text) {
  if (text.empty() || !ident_start(text.front())) return false;
  for (char c : text)
    if (!ident_char(c)) return false;
  return text != "top" && text != "bot";
}

Formula parse_formula(std::string_view text) {
  Parser p(tokenize(text));
  if (p.peek().kind == Tok::End) throw ParseError("empty formula", 1, 1);
  Formula f = p.formula();
  if (p.peek().kind != Tok::End) p.fail("unexpected token");
  return f;
}

Sequent parse_sequent(std::string_view text) {
  Parser p(tokenize(text));
  if (p.peek().kind == Tok::End) throw ParseError("empty sequent", 1, 1);
  Formula lhs = p.formula();
  Sequent::Kind kind;
  if (p.peek().kind == Tok::Strict) {
    kind = Sequent::Kind::Strict;
  } else if (p.peek().kind == Tok::Defeasible) {
    kind = Sequent::Kind::Defeasible;
  } else {
    p.fail("expected '|-' or '|~'");
  }
  p.advance();
  Formula rhs = p.formula();
  if (p.peek().kind != Tok::End) p.fail("unexpected token");
  return {kind, std::move(lhs), std::move(rhs)};
}

}  // namespace cnmr::logic
