#include "varwave/expr.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstring>
#include <map>

namespace varwave {

namespace {

const std::map<std::string, FuncName, std::less<>> kFunctions = {
    {"sin", FuncName::Sin},   {"cos", FuncName::Cos},  {"exp", FuncName::Exp},
    {"log", FuncName::Log},   {"sqrt", FuncName::Sqrt}, {"tanh", FuncName::Tanh},
    {"atan", FuncName::Atan},
};

const char* func_name(FuncName f) {
  switch (f) {
    case FuncName::Sin: return "sin";
    case FuncName::Cos: return "cos";
    case FuncName::Exp: return "exp";
    case FuncName::Log: return "log";
    case FuncName::Sqrt: return "sqrt";
    case FuncName::Tanh: return "tanh";
    case FuncName::Atan: return "atan";
  }
  return "?";
}

class Parser {
public:
  Parser(const std::string& src, const std::vector<std::string>& vars)
      : src_(src), vars_(vars) {}

  ExprPtr run() {
    ExprPtr e = expr();
    skip_ws();
    if (pos_ != src_.size())
      throw parse_error("unexpected trailing input", pos_);
    return e;
  }

private:
  const std::string& src_;
  const std::vector<std::string>& vars_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < src_.size() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    for (;;) {
      skip_ws();
      std::size_t at = pos_;
      if (eat('+')) {
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::Binary;
        n->op = BinaryOp::Add;
        n->offset = at;
        n->a = lhs;
        n->b = term();
        lhs = n;
      } else if (eat('-')) {
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::Binary;
        n->op = BinaryOp::Sub;
        n->offset = at;
        n->a = lhs;
        n->b = term();
        lhs = n;
      } else {
        return lhs;
      }
    }
  }

  ExprPtr term() {
    ExprPtr lhs = unary();
    for (;;) {
      skip_ws();
      std::size_t at = pos_;
      if (eat('*')) {
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::Binary;
        n->op = BinaryOp::Mul;
        n->offset = at;
        n->a = lhs;
        n->b = unary();
        lhs = n;
      } else if (eat('/')) {
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::Binary;
        n->op = BinaryOp::Div;
        n->offset = at;
        n->a = lhs;
        n->b = unary();
        lhs = n;
      } else {
        return lhs;
      }
    }
  }

  ExprPtr unary() {
    skip_ws();
    std::size_t at = pos_;
    if (eat('-')) {
      auto n = std::make_shared<ExprNode>();
      n->kind = NodeKind::Negate;
      n->offset = at;
      n->a = unary();
      return n;
    }
    return power();
  }

  ExprPtr power() {
    ExprPtr base = atom();
    skip_ws();
    std::size_t at = pos_;
    if (eat('^')) {
      auto n = std::make_shared<ExprNode>();
      n->kind = NodeKind::Binary;
      n->op = BinaryOp::Pow;
      n->offset = at;
      n->a = base;
      n->b = unary();  // right-associative, allows x^-2 and x^2^3
      return n;
    }
    return base;
  }

  ExprPtr atom() {
    skip_ws();
    if (pos_ >= src_.size()) throw parse_error("unexpected end of input", pos_);
    std::size_t at = pos_;
    char c = src_[pos_];

    if (c == '(') {
      ++pos_;
      ExprPtr e = expr();
      if (!eat(')')) throw parse_error("expected ')'", pos_);
      return e;
    }

    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number(at);

    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      std::string ident = src_.substr(start, pos_ - start);

      if (peek() == '(') {
        auto it = kFunctions.find(ident);
        if (it == kFunctions.end())
          throw parse_error("unknown function `" + ident + "`", start);
        eat('(');
        auto n = std::make_shared<ExprNode>();
        n->kind = NodeKind::Call;
        n->func = it->second;
        n->offset = start;
        n->a = expr();
        if (!eat(')')) throw parse_error("expected ')' closing call", pos_);
        return n;
      }

      if (std::find(vars_.begin(), vars_.end(), ident) == vars_.end())
        throw parse_error("variable `" + ident + "` not allowed here", start);
      auto n = std::make_shared<ExprNode>();
      n->kind = NodeKind::Variable;
      n->name = ident;
      n->offset = start;
      return n;
    }

    throw parse_error(std::string("unexpected character `") + c + "`", at);
  }

  ExprPtr number(std::size_t at) {
    std::size_t end = pos_;
    auto digits = [&] {
      while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
    };
    digits();
    if (end < src_.size() && src_[end] == '.') {
      ++end;
      digits();
    }
    if (end < src_.size() && (src_[end] == 'e' || src_[end] == 'E')) {
      std::size_t mark = end;
      ++end;
      if (end < src_.size() && (src_[end] == '+' || src_[end] == '-')) ++end;
      std::size_t exp_start = end;
      digits();
      if (end == exp_start) end = mark;  // "2e" is the literal 2 followed by junk
    }
    double value = 0;
    auto [p, ec] = std::from_chars(src_.data() + at, src_.data() + end, value);
    if (ec != std::errc() || p != src_.data() + end)
      throw parse_error("malformed number", at);
    pos_ = end;
    auto n = std::make_shared<ExprNode>();
    n->kind = NodeKind::Number;
    n->number = value;
    n->offset = at;
    return n;
  }
};

// Integer exponents (possibly under a leading minus) use repeated
// multiplication, which is valid for negative bases; anything else goes
// through exp(p*log(base)) and needs base > 0.
std::optional<long> as_integer_exponent(const ExprPtr& e) {
  if (e->kind == NodeKind::Negate) {
    auto inner = as_integer_exponent(e->a);
    if (inner) return -*inner;
    return std::nullopt;
  }
  if (e->kind != NodeKind::Number) return std::nullopt;
  double v = e->number;
  if (std::floor(v) != v || std::abs(v) > 64) return std::nullopt;
  return static_cast<long>(v);
}

std::string describe(const ExprPtr& node) {
  std::string s = render(node);
  if (s.size() > 40) s = s.substr(0, 37) + "...";
  return s;
}

template <typename Jet, typename Env>
Jet eval_node(const ExprPtr& e, const Env& env) {
  switch (e->kind) {
    case NodeKind::Number:
      return Jet::constant(e->number);
    case NodeKind::Variable:
      return env(e->name);
    case NodeKind::Negate:
      return -eval_node<Jet>(e->a, env);
    case NodeKind::Binary: {
      if (e->op == BinaryOp::Pow) {
        Jet base = eval_node<Jet>(e->a, env);
        if (auto n = as_integer_exponent(e->b)) {
          if (*n < 0 && base.f == 0.0)
            throw eval_error("zero base with negative exponent in `" + describe(e) + "`");
          return powi(base, *n);
        }
        Jet p = eval_node<Jet>(e->b, env);
        try {
          // base^p = exp(p*log(base)); exact when p is jet-constant.
          return exp(p * log(base));
        } catch (const eval_error&) {
          throw eval_error("power with non-positive base in `" + describe(e) + "`");
        }
      }
      Jet a = eval_node<Jet>(e->a, env);
      Jet b = eval_node<Jet>(e->b, env);
      try {
        switch (e->op) {
          case BinaryOp::Add: return a + b;
          case BinaryOp::Sub: return a - b;
          case BinaryOp::Mul: return a * b;
          case BinaryOp::Div: return a / b;
          default: break;
        }
      } catch (const eval_error& err) {
        throw eval_error(std::string(err.what()) + " in `" + describe(e) + "`");
      }
      break;
    }
    case NodeKind::Call: {
      Jet a = eval_node<Jet>(e->a, env);
      try {
        switch (e->func) {
          case FuncName::Sin: return sin(a);
          case FuncName::Cos: return cos(a);
          case FuncName::Exp: return exp(a);
          case FuncName::Log: return log(a);
          case FuncName::Sqrt: return sqrt(a);
          case FuncName::Tanh: return tanh(a);
          case FuncName::Atan: return atan(a);
        }
      } catch (const eval_error& err) {
        throw eval_error(std::string(err.what()) + " in `" + describe(e) + "`");
      }
      break;
    }
  }
  throw eval_error("malformed expression node");
}

int precedence(const ExprPtr& e) {
  switch (e->kind) {
    case NodeKind::Binary:
      switch (e->op) {
        case BinaryOp::Add:
        case BinaryOp::Sub: return 1;
        case BinaryOp::Mul:
        case BinaryOp::Div: return 2;
        case BinaryOp::Pow: return 4;
      }
      return 0;
    case NodeKind::Negate: return 3;
    default: return 5;  // atoms
  }
}

void render_to(const ExprPtr& e, std::string& out);

void render_child(const ExprPtr& child, int min_prec, std::string& out) {
  bool parens = precedence(child) < min_prec;
  if (parens) out += '(';
  render_to(child, out);
  if (parens) out += ')';
}

void render_to(const ExprPtr& e, std::string& out) {
  switch (e->kind) {
    case NodeKind::Number: {
      char buf[32];
      auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), e->number);
      out.append(buf, p);
      return;
    }
    case NodeKind::Variable:
      out += e->name;
      return;
    case NodeKind::Negate:
      out += '-';
      // '^' binds tighter than unary minus, so a power child needs no parens;
      // +/-/*// children do.
      render_child(e->a, 3, out);
      return;
    case NodeKind::Binary: {
      switch (e->op) {
        case BinaryOp::Add:
          render_child(e->a, 1, out);
          out += '+';
          render_child(e->b, 2, out);
          return;
        case BinaryOp::Sub:
          render_child(e->a, 1, out);
          out += '-';
          render_child(e->b, 2, out);
          return;
        case BinaryOp::Mul:
          render_child(e->a, 2, out);
          out += '*';
          render_child(e->b, 3, out);
          return;
        case BinaryOp::Div:
          render_child(e->a, 2, out);
          out += '/';
          render_child(e->b, 3, out);
          return;
        case BinaryOp::Pow:
          // base must be an atom (power binds tightest on the left);
          // exponent is a unary production, so negation needs no parens.
          render_child(e->a, 5, out);
          out += '^';
          render_child(e->b, 3, out);
          return;
      }
      return;
    }
    case NodeKind::Call:
      out += func_name(e->func);
      out += '(';
      render_to(e->a, out);
      out += ')';
      return;
  }
}

bool uses_var(const ExprPtr& e, const std::string& var) {
  if (!e) return false;
  if (e->kind == NodeKind::Variable) return e->name == var;
  return uses_var(e->a, var) || uses_var(e->b, var);
}

ExprPtr subst_node(const ExprPtr& e, const std::string& var, const ExprPtr& rep) {
  if (!e) return e;
  if (e->kind == NodeKind::Variable) return e->name == var ? rep : e;
  if (!e->a && !e->b) return e;
  auto n = std::make_shared<ExprNode>(*e);
  n->a = subst_node(e->a, var, rep);
  n->b = subst_node(e->b, var, rep);
  return n;
}

}  // namespace

bool Expression::uses(const std::string& var) const { return uses_var(root_, var); }

Expression parse(const std::string& source, const std::vector<std::string>& allowed_vars) {
  Parser p(source, allowed_vars);
  return Expression(p.run(), allowed_vars);
}

std::string render(const ExprPtr& node) {
  std::string out;
  render_to(node, out);
  return out;
}

std::string render(const Expression& e) { return render(e.root()); }

Jet1 eval_jet1(const Expression& e, const Jet1& at) {
  return eval_node<Jet1>(e.root(), [&](const std::string&) { return at; });
}

Jet2 eval_jet2(const Expression& e, const Jet2& x_seed, const Jet2& t_seed) {
  return eval_node<Jet2>(e.root(), [&](const std::string& name) {
    if (name == "x") return x_seed;
    if (name == "t") return t_seed;
    throw eval_error("variable `" + name + "` has no bivariate binding");
    return Jet2{};
  });
}

Expression substitute(const Expression& e, const std::string& var, const ExprPtr& replacement) {
  return Expression(subst_node(e.root(), var, replacement), e.variables());
}

ExprPtr make_number(double v) {
  // Negative literals would not survive a render/parse round trip (unary
  // minus is a node); wrap them explicitly.
  if (v < 0) return make_neg(make_number(-v));
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Number;
  n->number = v;
  return n;
}

ExprPtr make_var(const std::string& name) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Variable;
  n->name = name;
  return n;
}

ExprPtr make_neg(ExprPtr a) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Negate;
  n->a = std::move(a);
  return n;
}

ExprPtr make_binary(BinaryOp op, ExprPtr a, ExprPtr b) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Binary;
  n->op = op;
  n->a = std::move(a);
  n->b = std::move(b);
  return n;
}

ExprPtr make_call(FuncName f, ExprPtr a) {
  auto n = std::make_shared<ExprNode>();
  n->kind = NodeKind::Call;
  n->func = f;
  n->a = std::move(a);
  return n;
}

bool tree_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case NodeKind::Number: return a->number == b->number;
    case NodeKind::Variable: return a->name == b->name;
    case NodeKind::Negate: return tree_equal(a->a, b->a);
    case NodeKind::Binary: return a->op == b->op && tree_equal(a->a, b->a) && tree_equal(a->b, b->b);
    case NodeKind::Call: return a->func == b->func && tree_equal(a->a, b->a);
  }
  return false;
}

}  // namespace varwave
