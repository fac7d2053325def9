#pragma once

// Expression language for the analytic function f (or g in f = exp g).
//
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := '-' factor | atom ('^' ['-'] INT)?
//   atom   := NUMBER | 'i' | 'z' | NAME '(' expr ')' | '(' expr ')'
//
// '^' binds tighter than unary minus and only takes an integer literal.

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "levelpath/complex_jet.hpp"

namespace levelpath {

enum class TokenKind { Number, Ident, Plus, Minus, Star, Slash, Caret, LParen, RParen };

struct Token {
  TokenKind kind;
  std::string text;
  std::size_t position;

  bool operator==(const Token&) const = default;
};

std::vector<Token> tokenize(std::string_view source);

/// Length of the longest decimal literal (digits, optional fraction, optional
/// exponent) starting at the front of text; 0 if none.
std::size_t scan_decimal(std::string_view text) noexcept;

enum class BinaryOp { Add, Sub, Mul, Div };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

namespace node {
struct Const {
  Complex value;
};
struct Var {};
struct Neg {
  ExprPtr arg;
};
struct Binary {
  BinaryOp op;
  ExprPtr lhs;
  ExprPtr rhs;
};
struct PowInt {
  ExprPtr base;
  int exponent;
};
struct Call {
  Elementary fn;
  ExprPtr arg;
};
}  // namespace node

struct ExprNode {
  std::variant<node::Const, node::Var, node::Neg, node::Binary, node::PowInt, node::Call> data;
};

/// Structural equality.
bool operator==(const ExprNode& a, const ExprNode& b);

ExprPtr make_const(Complex value);
ExprPtr make_var();
ExprPtr make_neg(ExprPtr arg);
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs);
ExprPtr make_powi(ExprPtr base, int exponent);
ExprPtr make_call(Elementary fn, ExprPtr arg);

ExprPtr parse(const std::vector<Token>& tokens);
/// tokenize + parse.
ExprPtr parse(std::string_view source);

/// Fully parenthesized canonical rendering; parse(format(e)) == e for any
/// tree the parser can produce.
std::string format(const ExprNode& e);

namespace detail {

template <typename T>
T evaluate(const ExprNode& e, const T& var) {
  return std::visit(
      [&](const auto& n) -> T {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, node::Const>) {
          if constexpr (std::is_same_v<T, Complex>) {
            return n.value;
          } else {
            return T::constant(n.value);
          }
        } else if constexpr (std::is_same_v<N, node::Var>) {
          return var;
        } else if constexpr (std::is_same_v<N, node::Neg>) {
          return levelpath::negate(evaluate(*n.arg, var));
        } else if constexpr (std::is_same_v<N, node::Binary>) {
          const T l = evaluate(*n.lhs, var);
          const T r = evaluate(*n.rhs, var);
          switch (n.op) {
            case BinaryOp::Add: return levelpath::add(l, r);
            case BinaryOp::Sub: return levelpath::sub(l, r);
            case BinaryOp::Mul: return levelpath::mul(l, r);
            case BinaryOp::Div: return levelpath::divide(l, r);
          }
          return l;
        } else if constexpr (std::is_same_v<N, node::PowInt>) {
          return levelpath::powi(evaluate(*n.base, var), n.exponent);
        } else {
          return levelpath::apply(n.fn, evaluate(*n.arg, var));
        }
      },
      e.data);
}

}  // namespace detail

Complex eval_complex(const ExprNode& e, Complex z);
Jet2<double> eval_jet(const ExprNode& e, Complex z);

using ComplexEvaluator = std::function<Complex(Complex)>;
using JetEvaluator = std::function<Jet2<double>(Complex)>;

ComplexEvaluator complex_evaluator(ExprPtr e);
JetEvaluator jet_evaluator(ExprPtr e);

}  // namespace levelpath
