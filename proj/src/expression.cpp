#include "nlmc/expression.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>

#include "nlmc/errors.hpp"

namespace nlmc {

class ExprParser {
 public:
  explicit ExprParser(const std::string& text) : s_(text) {}

  Expression run() {
    Expression e;
    e.text_ = s_;
    parse_expr(e.code_);
    skip_ws();
    if (pos_ != s_.size()) fail("trailing characters");
    // Validate the stack program: final height one, never above the fixed limit.
    int height = 0, peak = 0;
    for (const auto& in : e.code_) {
      switch (in.op) {
        case Expression::Op::push_const:
        case Expression::Op::push_t:
        case Expression::Op::push_x: ++height; break;
        case Expression::Op::add:
        case Expression::Op::sub:
        case Expression::Op::mul:
        case Expression::Op::div:
        case Expression::Op::pow: --height; break;
        default: break;
      }
      peak = std::max(peak, height);
    }
    if (height != 1) fail("malformed expression");
    if (peak > 63) fail("expression too deeply nested");
    return e;
  }

 private:
  using Code = std::vector<Expression::Instr>;

  void fail(const std::string& why) const {
    throw config_error("expression error at position " + std::to_string(pos_) + " in '" + s_ +
                       "': " + why);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void parse_expr(Code& out) {
    parse_term(out);
    for (;;) {
      if (eat('+'))
        parse_term(out), out.push_back({Expression::Op::add, 0});
      else if (eat('-'))
        parse_term(out), out.push_back({Expression::Op::sub, 0});
      else
        return;
    }
  }

  void parse_term(Code& out) {
    parse_factor(out);
    for (;;) {
      if (eat('*'))
        parse_factor(out), out.push_back({Expression::Op::mul, 0});
      else if (eat('/'))
        parse_factor(out), out.push_back({Expression::Op::div, 0});
      else
        return;
    }
  }

  // '^' binds tighter than unary minus: -t^2 == -(t^2), 2^-3 == 2^(-3).
  void parse_factor(Code& out) {
    if (eat('-')) {
      parse_factor(out);
      out.push_back({Expression::Op::neg, 0});
      return;
    }
    parse_primary(out);
    if (eat('^')) {
      parse_factor(out);  // right associative
      out.push_back({Expression::Op::pow, 0});
    }
  }

  void parse_primary(Code& out) {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      parse_expr(out);
      if (!eat(')')) fail("missing ')'");
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      const double v = std::strtod(begin, &end);
      if (end == begin) fail("bad numeric literal");
      pos_ += static_cast<std::size_t>(end - begin);
      out.push_back({Expression::Op::push_const, v});
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      const std::string name = s_.substr(start, pos_ - start);
      if (name == "t") {
        out.push_back({Expression::Op::push_t, 0});
        return;
      }
      if (name == "x") {
        out.push_back({Expression::Op::push_x, 0});
        return;
      }
      Expression::Op fn;
      if (name == "sin")
        fn = Expression::Op::sin;
      else if (name == "cos")
        fn = Expression::Op::cos;
      else if (name == "exp")
        fn = Expression::Op::exp;
      else {
        fail("unknown identifier '" + name + "'");
        return;
      }
      if (!eat('(')) fail("function '" + name + "' needs '('");
      parse_expr(out);
      if (!eat(')')) fail("missing ')' after function argument");
      out.push_back({fn, 0});
      return;
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

Expression Expression::parse(const std::string& text) { return ExprParser(text).run(); }

double Expression::eval(double t, double x) const {
  double stack[64];
  int top = -1;
  for (const Instr& in : code_) {
    switch (in.op) {
      case Op::push_const: stack[++top] = in.value; break;
      case Op::push_t: stack[++top] = t; break;
      case Op::push_x: stack[++top] = x; break;
      case Op::add: --top; stack[top] += stack[top + 1]; break;
      case Op::sub: --top; stack[top] -= stack[top + 1]; break;
      case Op::mul: --top; stack[top] *= stack[top + 1]; break;
      case Op::div: --top; stack[top] /= stack[top + 1]; break;
      case Op::pow: --top; stack[top] = std::pow(stack[top], stack[top + 1]); break;
      case Op::neg: stack[top] = -stack[top]; break;
      case Op::sin: stack[top] = std::sin(stack[top]); break;
      case Op::cos: stack[top] = std::cos(stack[top]); break;
      case Op::exp: stack[top] = std::exp(stack[top]); break;
    }
  }
  return top == 0 ? stack[0] : 0.0;
}

}  // namespace nlmc
