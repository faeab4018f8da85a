#include "teleo/expr.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <limits>
#include <utility>

#include "teleo/error.hpp"

namespace teleo {

namespace {

using NodePtr = std::shared_ptr<const ExprNode>;

NodePtr make_node(NodeKind kind, std::vector<NodePtr> children = {}) {
  auto node = std::make_shared<ExprNode>();
  node->kind = kind;
  node->children = std::move(children);
  return node;
}

NodePtr make_number(double value) {
  auto node = std::make_shared<ExprNode>();
  node->kind = NodeKind::Number;
  node->value = value;
  return node;
}

NodePtr make_variable(std::string name) {
  auto node = std::make_shared<ExprNode>();
  node->kind = NodeKind::Variable;
  node->name = std::move(name);
  return node;
}

constexpr std::array<std::string_view, 4> kKeywords = {"and", "or", "not", "if"};

bool is_keyword(std::string_view word) {
  for (auto k : kKeywords) {
    if (k == word) return true;
  }
  return false;
}

bool is_ident_start(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
}
bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
bool is_digit(char c) { return c >= '0' && c <= '9'; }

// ---------------------------------------------------------------------------
// Lexer

enum class Tok { Number, Ident, Plus, Minus, Star, Slash, Lt, Le, Gt, Ge, EqEq, NotEq, LParen, RParen, Comma, End };

struct Token {
  Tok type;
  std::size_t offset;
  std::string_view text;
  double number = 0.0;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    while (pos_ < src_.size() && (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\n' || src_[pos_] == '\r')) {
      ++pos_;
    }
    const std::size_t start = pos_;
    if (pos_ >= src_.size()) return {Tok::End, start, {}};

    const char c = src_[pos_];
    if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
      return lex_number();
    }
    if (is_ident_start(c)) {
      while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
      return {Tok::Ident, start, src_.substr(start, pos_ - start)};
    }

    auto two = [&](char second) { return pos_ + 1 < src_.size() && src_[pos_ + 1] == second; };
    auto tok = [&](Tok t, std::size_t len) {
      pos_ += len;
      return Token{t, start, src_.substr(start, len)};
    };
    switch (c) {
      case '+': return tok(Tok::Plus, 1);
      case '-': return tok(Tok::Minus, 1);
      case '*': return tok(Tok::Star, 1);
      case '/': return tok(Tok::Slash, 1);
      case '(': return tok(Tok::LParen, 1);
      case ')': return tok(Tok::RParen, 1);
      case ',': return tok(Tok::Comma, 1);
      case '<': return two('=') ? tok(Tok::Le, 2) : tok(Tok::Lt, 1);
      case '>': return two('=') ? tok(Tok::Ge, 2) : tok(Tok::Gt, 1);
      case '=':
        if (two('=')) return tok(Tok::EqEq, 2);
        break;
      case '!':
        if (two('=')) return tok(Tok::NotEq, 2);
        break;
      default:
        break;
    }
    throw ParseError("unexpected character '" + std::string(1, c) + "' at offset " + std::to_string(start),
                     start);
  }

 private:
  Token lex_number() {
    const std::size_t start = pos_;
    while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    if (pos_ < src_.size() && src_[pos_] == '.') {
      ++pos_;
      while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
    }
    if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
      std::size_t p = pos_ + 1;
      if (p < src_.size() && (src_[p] == '+' || src_[p] == '-')) ++p;
      if (p < src_.size() && is_digit(src_[p])) {
        while (p < src_.size() && is_digit(src_[p])) ++p;
        pos_ = p;
      }
    }
    const std::string_view text = src_.substr(start, pos_ - start);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size() || !std::isfinite(value)) {
      throw ParseError("invalid number '" + std::string(text) + "' at offset " + std::to_string(start), start);
    }
    return {Tok::Number, start, text, value};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Parser

const std::vector<std::string> kFactorStart = {"number", "identifier", "'-'", "'('", "'if'"};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src) { advance(); }

  NodePtr parse() {
    NodePtr root = parse_or();
    if (cur_.type != Tok::End) {
      fail({"end of input", "operator"});
    }
    return root;
  }

 private:
  void advance() { cur_ = lexer_.next(); }

  bool at_keyword(std::string_view kw) const { return cur_.type == Tok::Ident && cur_.text == kw; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    std::string what = cur_.type == Tok::End ? std::string("end of input") : "'" + std::string(cur_.text) + "'";
    std::string msg = "syntax error at offset " + std::to_string(cur_.offset) + ": unexpected " + what + ", expected ";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (i) msg += i + 1 == expected.size() ? " or " : ", ";
      msg += expected[i];
    }
    throw ParseError(msg, cur_.offset, std::move(expected));
  }

  void expect(Tok type, std::string_view spelling) {
    if (cur_.type != type) fail({"'" + std::string(spelling) + "'"});
    advance();
  }

  NodePtr parse_or() {
    NodePtr lhs = parse_and();
    while (at_keyword("or")) {
      advance();
      lhs = make_node(NodeKind::Or, {lhs, parse_and()});
    }
    return lhs;
  }

  NodePtr parse_and() {
    NodePtr lhs = parse_not();
    while (at_keyword("and")) {
      advance();
      lhs = make_node(NodeKind::And, {lhs, parse_not()});
    }
    return lhs;
  }

  NodePtr parse_not() {
    if (at_keyword("not")) {
      advance();
      return make_node(NodeKind::Not, {parse_cmp()});
    }
    return parse_cmp();
  }

  NodePtr parse_cmp() {
    NodePtr lhs = parse_sum();
    NodeKind kind;
    switch (cur_.type) {
      case Tok::Lt: kind = NodeKind::Less; break;
      case Tok::Le: kind = NodeKind::LessEqual; break;
      case Tok::Gt: kind = NodeKind::Greater; break;
      case Tok::Ge: kind = NodeKind::GreaterEqual; break;
      case Tok::EqEq: kind = NodeKind::Equal; break;
      case Tok::NotEq: kind = NodeKind::NotEqual; break;
      default: return lhs;
    }
    advance();
    return make_node(kind, {lhs, parse_sum()});
  }

  NodePtr parse_sum() {
    NodePtr lhs = parse_term();
    while (cur_.type == Tok::Plus || cur_.type == Tok::Minus) {
      const NodeKind kind = cur_.type == Tok::Plus ? NodeKind::Add : NodeKind::Subtract;
      advance();
      lhs = make_node(kind, {lhs, parse_term()});
    }
    return lhs;
  }

  NodePtr parse_term() {
    NodePtr lhs = parse_factor();
    while (cur_.type == Tok::Star || cur_.type == Tok::Slash) {
      const NodeKind kind = cur_.type == Tok::Star ? NodeKind::Multiply : NodeKind::Divide;
      advance();
      lhs = make_node(kind, {lhs, parse_factor()});
    }
    return lhs;
  }

  NodePtr parse_factor() {
    switch (cur_.type) {
      case Tok::Number: {
        const double v = cur_.number;
        advance();
        return make_number(v);
      }
      case Tok::Minus: {
        advance();
        NodePtr operand = parse_factor();
        // "-" NUMBER folds into a negative literal so printed constants reparse identically.
        if (operand->kind == NodeKind::Number) return make_number(-operand->value);
        return make_node(NodeKind::Negate, {operand});
      }
      case Tok::LParen: {
        advance();
        NodePtr inner = parse_or();
        expect(Tok::RParen, ")");
        return inner;
      }
      case Tok::Ident: {
        const Token ident = cur_;
        if (ident.text == "if") {
          advance();
          expect(Tok::LParen, "(");
          NodePtr cond = parse_or();
          expect(Tok::Comma, ",");
          NodePtr then_branch = parse_or();
          expect(Tok::Comma, ",");
          NodePtr else_branch = parse_or();
          expect(Tok::RParen, ")");
          return make_node(NodeKind::If, {cond, then_branch, else_branch});
        }
        if (is_keyword(ident.text)) fail(kFactorStart);
        advance();
        if (cur_.type == Tok::LParen) {
          throw ParseError("unknown function '" + std::string(ident.text) + "' at offset " +
                               std::to_string(ident.offset),
                           ident.offset, {"if"});
        }
        return make_variable(std::string(ident.text));
      }
      default:
        fail(kFactorStart);
    }
  }

  Lexer lexer_;
  Token cur_{Tok::End, 0, {}};
};

// ---------------------------------------------------------------------------
// Printing

int precedence(const ExprNode& n) {
  switch (n.kind) {
    case NodeKind::Or: return 1;
    case NodeKind::And: return 2;
    case NodeKind::Not: return 3;
    case NodeKind::Less:
    case NodeKind::LessEqual:
    case NodeKind::Greater:
    case NodeKind::GreaterEqual:
    case NodeKind::Equal:
    case NodeKind::NotEqual: return 4;
    case NodeKind::Add:
    case NodeKind::Subtract: return 5;
    case NodeKind::Multiply:
    case NodeKind::Divide: return 6;
    case NodeKind::Negate: return 7;
    case NodeKind::Number: return std::signbit(n.value) ? 7 : 8;
    case NodeKind::Variable:
    case NodeKind::If: return 8;
  }
  return 8;
}

std::string_view symbol(NodeKind kind) {
  switch (kind) {
    case NodeKind::Add: return "+";
    case NodeKind::Subtract: return "-";
    case NodeKind::Multiply: return "*";
    case NodeKind::Divide: return "/";
    case NodeKind::Less: return "<";
    case NodeKind::LessEqual: return "<=";
    case NodeKind::Greater: return ">";
    case NodeKind::GreaterEqual: return ">=";
    case NodeKind::Equal: return "==";
    case NodeKind::NotEqual: return "!=";
    case NodeKind::And: return "and";
    case NodeKind::Or: return "or";
    default: return "?";
  }
}

std::string format_number(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

void print(const ExprNode& n, int min_prec, std::string& out) {
  const int prec = precedence(n);
  const bool paren = prec < min_prec;
  if (paren) out += '(';
  switch (n.kind) {
    case NodeKind::Number: out += format_number(n.value); break;
    case NodeKind::Variable: out += n.name; break;
    case NodeKind::Negate:
      out += '-';
      print(*n.children[0], 7, out);
      break;
    case NodeKind::Not:
      out += "not ";
      print(*n.children[0], 4, out);
      break;
    case NodeKind::If:
      out += "if(";
      print(*n.children[0], 1, out);
      out += ", ";
      print(*n.children[1], 1, out);
      out += ", ";
      print(*n.children[2], 1, out);
      out += ')';
      break;
    default: {
      // Binary: left-associative levels take the same precedence on the left
      // and one higher on the right; comparisons do not chain.
      const bool chains = prec != 4;
      print(*n.children[0], chains ? prec : prec + 1, out);
      out += ' ';
      out += symbol(n.kind);
      out += ' ';
      print(*n.children[1], prec + 1, out);
      break;
    }
  }
  if (paren) out += ')';
}

bool same_tree(const ExprNode& a, const ExprNode& b) {
  if (&a == &b) return true;
  if (a.kind != b.kind || a.children.size() != b.children.size()) return false;
  if (a.kind == NodeKind::Number && !(a.value == b.value && std::signbit(a.value) == std::signbit(b.value))) return false;
  if (a.kind == NodeKind::Variable && a.name != b.name) return false;
  for (std::size_t i = 0; i < a.children.size(); ++i) {
    if (!same_tree(*a.children[i], *b.children[i])) return false;
  }
  return true;
}

void collect(const ExprNode& n, std::set<std::string>& out) {
  if (n.kind == NodeKind::Variable) out.insert(n.name);
  for (const auto& c : n.children) collect(*c, out);
}

NodePtr rename(const NodePtr& n, const std::function<std::string(const std::string&)>& fn) {
  if (n->kind == NodeKind::Variable) return make_variable(fn(n->name));
  if (n->children.empty()) return n;
  std::vector<NodePtr> kids;
  kids.reserve(n->children.size());
  for (const auto& c : n->children) kids.push_back(rename(c, fn));
  return make_node(n->kind, std::move(kids));
}

// ---------------------------------------------------------------------------
// Evaluation

double checked(double v, const char* what) {
  if (!std::isfinite(v)) throw EvalError(std::string("non-finite result in ") + what);
  return v;
}

double truth(bool b) { return b ? 1.0 : 0.0; }

double apply_binary(NodeKind kind, double a, double b) {
  switch (kind) {
    case NodeKind::Add: return checked(a + b, "addition");
    case NodeKind::Subtract: return checked(a - b, "subtraction");
    case NodeKind::Multiply: return checked(a * b, "multiplication");
    case NodeKind::Divide:
      if (b == 0.0) throw EvalError("division by zero");
      return checked(a / b, "division");
    case NodeKind::Less: return truth(a < b);
    case NodeKind::LessEqual: return truth(a <= b);
    case NodeKind::Greater: return truth(a > b);
    case NodeKind::GreaterEqual: return truth(a >= b);
    case NodeKind::Equal: return truth(a == b);
    case NodeKind::NotEqual: return truth(a != b);
    default: break;
  }
  throw EvalError("internal: not a binary operator");
}

template <class Resolve>
double eval_tree(const ExprNode& n, Resolve& resolve) {
  switch (n.kind) {
    case NodeKind::Number: return n.value;
    case NodeKind::Variable: return resolve(n.name);
    case NodeKind::Negate: return -eval_tree(*n.children[0], resolve);
    case NodeKind::Not: return truth(eval_tree(*n.children[0], resolve) == 0.0);
    case NodeKind::And:
      return truth(eval_tree(*n.children[0], resolve) != 0.0 && eval_tree(*n.children[1], resolve) != 0.0);
    case NodeKind::Or:
      return truth(eval_tree(*n.children[0], resolve) != 0.0 || eval_tree(*n.children[1], resolve) != 0.0);
    case NodeKind::If:
      return eval_tree(*n.children[0], resolve) != 0.0 ? eval_tree(*n.children[1], resolve)
                                                       : eval_tree(*n.children[2], resolve);
    default:
      return apply_binary(n.kind, eval_tree(*n.children[0], resolve), eval_tree(*n.children[1], resolve));
  }
}

}  // namespace

// ---------------------------------------------------------------------------

Expression::Expression() : root_(make_number(0.0)) {}
Expression::Expression(std::shared_ptr<const ExprNode> root) : root_(std::move(root)) {}

Expression Expression::number(double value) { return Expression(make_number(value)); }
Expression Expression::variable(std::string name) { return Expression(make_variable(std::move(name))); }

bool operator==(const Expression& a, const Expression& b) { return same_tree(*a.root_, *b.root_); }

Expression parse_expression(std::string_view source) {
  bool blank = true;
  for (char c : source) {
    if (c != ' ' && c != '\t' && c != '\n' && c != '\r') blank = false;
  }
  if (blank) throw ParseError("empty expression", 0, kFactorStart);
  return Expression(Parser(source).parse());
}

std::string to_string(const Expression& expr) {
  std::string out;
  print(expr.root(), 0, out);
  return out;
}

std::set<std::string> free_variables(const Expression& expr) {
  std::set<std::string> out;
  collect(expr.root(), out);
  return out;
}

Expression rename_variables(const Expression& expr,
                            const std::function<std::string(const std::string&)>& fn) {
  return Expression(rename(expr.node(), fn));
}

double evaluate(const Expression& expr, const Lookup& lookup) {
  auto resolve = [&](const std::string& name) {
    const std::optional<double> v = lookup(name);
    if (!v) throw EvalError("missing value for variable '" + name + "'");
    if (!std::isfinite(*v)) throw EvalError("non-finite value for variable '" + name + "'");
    return *v;
  };
  return eval_tree(expr.root(), resolve);
}

double evaluate(const Expression& expr, const std::map<std::string, double, std::less<>>& env) {
  return evaluate(expr, [&](std::string_view name) -> std::optional<double> {
    const auto it = env.find(name);
    if (it == env.end()) return std::nullopt;
    return it->second;
  });
}

bool is_valid_identifier(std::string_view name) {
  if (name.empty() || !is_ident_start(name.front())) return false;
  for (char c : name) {
    if (!is_ident_char(c)) return false;
  }
  return !is_keyword(name);
}

// ---------------------------------------------------------------------------

CompiledExpression::CompiledExpression(const Expression& expr,
                                       const std::unordered_map<std::string, std::size_t>& slot_of) {
  root_ = emit(expr.root(), slot_of);
}

std::uint32_t CompiledExpression::emit(const ExprNode& n,
                                       const std::unordered_map<std::string, std::size_t>& slot_of) {
  Instr ins{n.kind, n.value, 0, 0, 0, 0};
  if (n.kind == NodeKind::Variable) {
    const auto it = slot_of.find(n.name);
    if (it == slot_of.end()) throw EvalError("missing value for variable '" + n.name + "'");
    ins.slot = static_cast<std::uint32_t>(it->second);
  }
  std::array<std::uint32_t, 3> kids{};
  for (std::size_t i = 0; i < n.children.size(); ++i) kids[i] = emit(*n.children[i], slot_of);
  ins.a = kids[0];
  ins.b = kids[1];
  ins.c = kids[2];
  code_.push_back(ins);
  return static_cast<std::uint32_t>(code_.size() - 1);
}

double CompiledExpression::operator()(std::span<const double> values) const { return run(root_, values); }

double CompiledExpression::run(std::uint32_t at, std::span<const double> values) const {
  const Instr& i = code_[at];
  switch (i.kind) {
    case NodeKind::Number: return i.value;
    case NodeKind::Variable: return values[i.slot];
    case NodeKind::Negate: return -run(i.a, values);
    case NodeKind::Not: return truth(run(i.a, values) == 0.0);
    case NodeKind::And: return truth(run(i.a, values) != 0.0 && run(i.b, values) != 0.0);
    case NodeKind::Or: return truth(run(i.a, values) != 0.0 || run(i.b, values) != 0.0);
    case NodeKind::If: return run(i.a, values) != 0.0 ? run(i.b, values) : run(i.c, values);
    default: return apply_binary(i.kind, run(i.a, values), run(i.b, values));
  }
}

}  // namespace teleo
