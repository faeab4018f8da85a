#pragma once

// Expression language for structural equations and agent policies.
//
//   expr   := or
//   or     := and { "or" and }
//   and    := not { "and" not }
//   not    := [ "not" ] cmp
//   cmp    := sum [ ("<"|"<="|">"|">="|"=="|"!=") sum ]
//   sum    := term { ("+"|"-") term }
//   term   := factor { ("*"|"/") factor }
//   factor := NUMBER | IDENT | "-" factor | "(" expr ")"
//           | "if" "(" expr "," expr "," expr ")"
//
// Values are reals. Comparisons and logical operators yield 1.0 or 0.0 and
// any nonzero value counts as true.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace teleo {

enum class NodeKind : std::uint8_t {
  Number,
  Variable,
  Negate,
  Add,
  Subtract,
  Multiply,
  Divide,
  Less,
  LessEqual,
  Greater,
  GreaterEqual,
  Equal,
  NotEqual,
  And,
  Or,
  Not,
  If,
};

struct ExprNode {
  NodeKind kind;
  double value = 0.0;  // Number
  std::string name;    // Variable
  std::vector<std::shared_ptr<const ExprNode>> children;
};

/// Immutable parsed expression. Copies share the underlying tree.
class Expression {
 public:
  Expression();  // the literal 0
  explicit Expression(std::shared_ptr<const ExprNode> root);

  static Expression number(double value);
  static Expression variable(std::string name);

  const ExprNode& root() const noexcept { return *root_; }
  const std::shared_ptr<const ExprNode>& node() const noexcept { return root_; }

  friend bool operator==(const Expression& a, const Expression& b);

 private:
  std::shared_ptr<const ExprNode> root_;
};

/// Parses `source`. Throws ParseError on malformed input or unknown functions.
Expression parse_expression(std::string_view source);

/// Canonical text form; parse(to_string(e)) prints back identically.
std::string to_string(const Expression& expr);

std::set<std::string> free_variables(const Expression& expr);

/// Returns a copy with every variable reference passed through `rename`.
Expression rename_variables(const Expression& expr,
                            const std::function<std::string(const std::string&)>& rename);

/// Variable resolver: returns nullopt for names it does not know.
using Lookup = std::function<std::optional<double>(std::string_view)>;

double evaluate(const Expression& expr, const Lookup& lookup);
double evaluate(const Expression& expr, const std::map<std::string, double, std::less<>>& env);

bool is_valid_identifier(std::string_view name);

/// Expression compiled against a fixed slot layout for tight sampling loops.
class CompiledExpression {
 public:
  /// `slot_of` maps every free variable to an index into the value span.
  CompiledExpression(const Expression& expr,
                     const std::unordered_map<std::string, std::size_t>& slot_of);

  double operator()(std::span<const double> values) const;

 private:
  struct Instr {
    NodeKind kind;
    double value;
    std::uint32_t slot;
    std::uint32_t a, b, c;  // child instruction indices
  };

  std::uint32_t emit(const ExprNode& node,
                     const std::unordered_map<std::string, std::size_t>& slot_of);
  double run(std::uint32_t at, std::span<const double> values) const;

  std::vector<Instr> code_;
  std::uint32_t root_ = 0;
};

}  // namespace teleo
