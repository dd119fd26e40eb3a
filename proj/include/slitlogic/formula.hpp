#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "slitlogic/poly.hpp"

namespace slitlogic {

enum class FormulaKind { variable, constant, negation, conjunction, disjunction, exclusive_or };

/// Propositional formula tree. N-ary connectives hold at least two children.
class Formula {
 public:
  static Formula variable(std::string name);
  static Formula constant(bool value);
  static Formula negation(Formula child);
  static Formula conjunction(std::vector<Formula> children);
  static Formula disjunction(std::vector<Formula> children);
  static Formula exclusive_or(std::vector<Formula> children);

  FormulaKind kind() const noexcept { return kind_; }
  /// Variable name; empty for other kinds.
  const std::string& name() const noexcept { return name_; }
  /// Constant value; false for other kinds.
  bool value() const noexcept { return value_; }
  const std::vector<Formula>& children() const noexcept { return children_; }

  friend bool operator==(const Formula&, const Formula&) = default;

 private:
  Formula(FormulaKind kind, std::string name, bool value, std::vector<Formula> children);
  static Formula nary(FormulaKind kind, std::vector<Formula> children);

  FormulaKind kind_;
  std::string name_;
  bool value_;
  std::vector<Formula> children_;
};

/// Parses the grammar
///   formula := or_expr
///   or_expr := xor_expr { "|" xor_expr }
///   xor_expr := and_expr { "^" and_expr }
///   and_expr := unary { "&" unary }
///   unary := "!" unary | atom
///   atom := ident | "0" | "1" | "(" formula ")"
/// with the Unicode aliases ¬ ∧ ∨ ⊕. Chains of one connective become a single
/// n-ary node; parenthesized subterms stay nested. Throws ParseError.
Formula parse(std::string_view text);

/// Minimal-parenthesis rendering that re-parses to an identical tree.
std::string render(const Formula& f);

/// Variable names in order of first appearance.
std::vector<std::string> variables(const Formula& f);

/// Classical evaluation; variable order[i] takes bit i of `assignment`.
bool evaluate(const Formula& f, std::span<const std::string> order, std::uint32_t assignment);

/// Lowers to a multilinear polynomial where order[i] becomes x_{i+1}.
MultilinearPoly ast_to_poly(const Formula& f, std::span<const std::string> order);
/// Lowers using first-appearance variable order.
MultilinearPoly ast_to_poly(const Formula& f);

struct EquivalenceResult {
  bool equivalent = false;
  /// Shared variable order (sorted by name) used for both lowerings.
  std::vector<std::string> order;
  /// On inequivalence, a 0/1 assignment over `order` where the formulas differ.
  std::optional<std::vector<int>> witness;
};

EquivalenceResult equivalence(const Formula& f, const Formula& g);

}  // namespace slitlogic
