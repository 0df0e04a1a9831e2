#include "droplet/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "droplet/errors.hpp"
#include "droplet/geometry.hpp"

namespace droplet {

enum class NodeKind { kConst, kVar, kAdd, kSub, kMul, kDiv, kNeg, kFunc };
enum class Func { kSin, kCos, kExp, kAbs, kSqrt, kStep };

struct Expr::Node {
  NodeKind kind;
  double value = 0.0;
  Func func = Func::kSin;
  std::shared_ptr<const Node> a, b;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

double eval_node(const Expr::Node& n, double x) {
  switch (n.kind) {
    case NodeKind::kConst:
      return n.value;
    case NodeKind::kVar:
      return x;
    case NodeKind::kAdd:
      return eval_node(*n.a, x) + eval_node(*n.b, x);
    case NodeKind::kSub:
      return eval_node(*n.a, x) - eval_node(*n.b, x);
    case NodeKind::kMul:
      return eval_node(*n.a, x) * eval_node(*n.b, x);
    case NodeKind::kDiv:
      return eval_node(*n.a, x) / eval_node(*n.b, x);
    case NodeKind::kNeg:
      return -eval_node(*n.a, x);
    case NodeKind::kFunc: {
      const double v = eval_node(*n.a, x);
      switch (n.func) {
        case Func::kSin:
          return std::sin(v);
        case Func::kCos:
          return std::cos(v);
        case Func::kExp:
          return std::exp(v);
        case Func::kAbs:
          return std::abs(v);
        case Func::kSqrt:
          return std::sqrt(v);
        case Func::kStep:
          return v >= 0.0 ? 1.0 : 0.0;
      }
    }
  }
  return 0.0;
}

bool depends_on_x(const Expr::Node& n) {
  if (n.kind == NodeKind::kVar) return true;
  if (n.a && depends_on_x(*n.a)) return true;
  if (n.b && depends_on_x(*n.b)) return true;
  return false;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : text_(text) {}

  NodePtr parse() {
    NodePtr e = parse_sum();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected trailing input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw InvalidParameterError("expression error at position " + std::to_string(pos_ + 1) +
                                " in \"" + text_ + "\": " + what);
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::shared_ptr<Expr::Node> make(NodeKind k, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Expr::Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
  }

  NodePtr parse_sum() {
    NodePtr left = parse_product();
    for (;;) {
      if (consume('+'))
        left = make(NodeKind::kAdd, left, parse_product());
      else if (consume('-'))
        left = make(NodeKind::kSub, left, parse_product());
      else
        return left;
    }
  }

  NodePtr parse_product() {
    NodePtr left = parse_unary();
    for (;;) {
      if (consume('*'))
        left = make(NodeKind::kMul, left, parse_unary());
      else if (consume('/'))
        left = make(NodeKind::kDiv, left, parse_unary());
      else
        return left;
    }
  }

  NodePtr parse_unary() {
    if (consume('-')) return make(NodeKind::kNeg, parse_unary());
    if (consume('+')) return parse_unary();
    return parse_primary();
  }

  NodePtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of expression");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      NodePtr e = parse_sum();
      if (!consume(')')) fail("missing ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c))) return parse_name();
    fail(std::string("unexpected character '") + c + "'");
  }

  NodePtr parse_number() {
    const char* begin = text_.c_str() + pos_;
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin) fail("bad number");
    pos_ += static_cast<std::size_t>(end - begin);
    auto n = make(NodeKind::kConst);
    n->value = v;
    return n;
  }

  NodePtr parse_name() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    const std::string name = text_.substr(start, pos_ - start);
    if (name == "x") return make(NodeKind::kVar);
    if (name == "pi") {
      auto n = make(NodeKind::kConst);
      n->value = kPi;
      return n;
    }
    Func f;
    if (name == "sin")
      f = Func::kSin;
    else if (name == "cos")
      f = Func::kCos;
    else if (name == "exp")
      f = Func::kExp;
    else if (name == "abs")
      f = Func::kAbs;
    else if (name == "sqrt")
      f = Func::kSqrt;
    else if (name == "step")
      f = Func::kStep;
    else
      fail("unknown name '" + name + "'");
    if (!consume('(')) fail("expected '(' after '" + name + "'");
    NodePtr arg = parse_sum();
    if (!consume(')')) fail("missing ')'");
    auto n = make(NodeKind::kFunc, arg);
    n->func = f;
    return n;
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

Expr Expr::parse(const std::string& text) {
  Expr e;
  e.root_ = Parser(text).parse();
  e.text_ = text;
  return e;
}

double Expr::operator()(double x) const {
  if (!root_) throw InvalidParameterError("evaluating empty expression");
  return eval_node(*root_, x);
}

bool Expr::is_constant() const { return root_ && !depends_on_x(*root_); }

}  // namespace droplet
