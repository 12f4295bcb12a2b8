// Small arithmetic expression language over named variables, evaluated on
// jets. This is the user-facing way to define the arbitrary functions F, G
// and wave-speed profiles.
//
// Grammar (ASCII '-' only; '^' is right-associative and binds tighter than
// unary minus, so -x^2 parses as -(x^2)):
//
//   expr   := term (('+'|'-') term)*
//   term   := unary (('*'|'/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' unary)?
//   atom   := number | ident | ident '(' expr ')' | '(' expr ')'
//
// Functions: sin cos exp log sqrt tanh atan.

#ifndef VARWAVE_EXPR_HPP
#define VARWAVE_EXPR_HPP

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "varwave/jet.hpp"

namespace varwave {

class parse_error : public std::runtime_error {
public:
  parse_error(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " (at byte " + std::to_string(offset) + ")"),
        offset_(offset) {}
  std::size_t offset() const { return offset_; }

private:
  std::size_t offset_;
};

enum class NodeKind { Number, Variable, Negate, Binary, Call };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };
enum class FuncName { Sin, Cos, Exp, Log, Sqrt, Tanh, Atan };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  NodeKind kind;
  std::size_t offset = 0;  // byte offset in the source, for error reports

  double number = 0;       // Number
  std::string name;        // Variable
  BinaryOp op{};           // Binary
  FuncName func{};         // Call
  ExprPtr a, b;            // Negate/Call use a; Binary uses a,b
};

// Immutable parsed expression plus its declared variable set.
class Expression {
public:
  Expression() = default;
  Expression(ExprPtr root, std::vector<std::string> vars)
      : root_(std::move(root)), vars_(std::move(vars)) {}

  const ExprPtr& root() const { return root_; }
  const std::vector<std::string>& variables() const { return vars_; }
  bool uses(const std::string& var) const;
  bool empty() const { return root_ == nullptr; }

private:
  ExprPtr root_;
  std::vector<std::string> vars_;
};

Expression parse(const std::string& source, const std::vector<std::string>& allowed_vars);

// Renders to text such that parse(render(e)) reproduces the tree exactly.
std::string render(const Expression& e);
std::string render(const ExprPtr& node);

// Evaluate on a univariate jet; the expression's single variable is bound to
// `at`. Throws eval_error on domain violations, naming the offending node.
Jet1 eval_jet1(const Expression& e, const Jet1& at);

// Evaluate on bivariate jets; variables "x" and "t" bind to the seeds.
Jet2 eval_jet2(const Expression& e, const Jet2& x_seed, const Jet2& t_seed);

// Replace every occurrence of `var` with the given subtree (no simplification).
Expression substitute(const Expression& e, const std::string& var, const ExprPtr& replacement);

// Convenience tree builders (used when constructing transformed speeds).
ExprPtr make_number(double v);
ExprPtr make_var(const std::string& name);
ExprPtr make_neg(ExprPtr a);
ExprPtr make_binary(BinaryOp op, ExprPtr a, ExprPtr b);
ExprPtr make_call(FuncName f, ExprPtr a);

// Structural equality of trees (numeric literals compared exactly).
bool tree_equal(const ExprPtr& a, const ExprPtr& b);

}  // namespace varwave

#endif
