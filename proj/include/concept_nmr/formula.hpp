#pragma once

// Formulas of the lattice language: variables, top, bot, & (meet), | (join).
//
// Text grammar, whitespace insignificant:
//
//   formula := term ('|' term)*
//   term    := atom ('&' atom)*
//   atom    := identifier | 'top' | 'bot' | '(' formula ')'
//
// Both operators associate to the left. A sequent is `formula |- formula`
// (strict) or `formula |~ formula` (defeasible).

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>

namespace cnmr::logic {

class Formula {
 public:
  enum class Kind { Var, Top, Bot, And, Or };

  static Formula var(std::string name);
  static Formula top();
  static Formula bot();
  static Formula conj(Formula left, Formula right);
  static Formula disj(Formula left, Formula right);

  Kind kind() const { return node_->kind; }
  bool is_binary() const { return kind() == Kind::And || kind() == Kind::Or; }
  // Only meaningful for Var.
  const std::string& name() const { return node_->name; }
  // Only meaningful for And / Or.
  const Formula& left() const { return *node_->left; }
  const Formula& right() const { return *node_->right; }

  // Node count.
  std::size_t size() const { return node_->size; }
  std::string to_string() const;
  void collect_variables(std::set<std::string>& out) const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const Formula> left;
    std::shared_ptr<const Formula> right;
    std::size_t size = 1;
  };
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

inline Formula operator&(Formula a, Formula b) { return Formula::conj(std::move(a), std::move(b)); }
inline Formula operator|(Formula a, Formula b) { return Formula::disj(std::move(a), std::move(b)); }

struct Sequent {
  enum class Kind { Strict, Defeasible };

  Kind kind;
  Formula lhs;
  Formula rhs;

  static Sequent strict(Formula lhs, Formula rhs) { return {Kind::Strict, std::move(lhs), std::move(rhs)}; }
  static Sequent defeasible(Formula lhs, Formula rhs) {
    return {Kind::Defeasible, std::move(lhs), std::move(rhs)};
  }

  std::string to_string() const;
  friend bool operator==(const Sequent&, const Sequent&) = default;
};

// Throws ParseError (column = 1-based character offset) on bad input.
Formula parse_formula(std::string_view text);
Sequent parse_sequent(std::string_view text);

bool is_identifier(std::string_view text);

}  // namespace cnmr::logic
