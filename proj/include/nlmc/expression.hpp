#ifndef NLMC_EXPRESSION_HPP
#define NLMC_EXPRESSION_HPP

#include <memory>
#include <string>
#include <vector>

namespace nlmc {

// Small arithmetic expression over the identifiers t and x:
// operators + - * / ^ (right-assoc), unary minus, parentheses, numeric
// literals and the functions sin, cos, exp. Parsed once into a postfix
// program; evaluation is a flat stack machine.
class Expression {
 public:
  static Expression parse(const std::string& text);  // throws config_error

  double eval(double t, double x) const;
  const std::string& text() const { return text_; }
  bool empty() const { return code_.empty(); }

 private:
  enum class Op : unsigned char { push_const, push_t, push_x, add, sub, mul, div, pow, neg, sin, cos, exp };
  struct Instr {
    Op op;
    double value;
  };
  std::string text_;
  std::vector<Instr> code_;

  friend class ExprParser;
};

}  // namespace nlmc

#endif  // NLMC_EXPRESSION_HPP
