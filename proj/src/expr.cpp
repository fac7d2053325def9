#include "levelpath/expr.hpp"

#include <cctype>
#include <charconv>
#include <limits>
#include <system_error>

namespace levelpath {

namespace {

bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0 || c == '_'; }
bool is_ident_char(char c) { return is_ident_start(c) || is_digit(c); }

}  // namespace

std::size_t scan_decimal(std::string_view text) noexcept {
  std::size_t k = 0;
  while (k < text.size() && is_digit(text[k])) ++k;
  const std::size_t int_digits = k;
  std::size_t frac_digits = 0;
  if (k < text.size() && text[k] == '.') {
    std::size_t j = k + 1;
    while (j < text.size() && is_digit(text[j])) ++j;
    frac_digits = j - k - 1;
    if (int_digits + frac_digits > 0) k = j;
  }
  if (int_digits + frac_digits == 0) return 0;
  if (k < text.size() && (text[k] == 'e' || text[k] == 'E')) {
    std::size_t j = k + 1;
    if (j < text.size() && (text[j] == '+' || text[j] == '-')) ++j;
    const std::size_t exp_start = j;
    while (j < text.size() && is_digit(text[j])) ++j;
    if (j > exp_start) k = j;
  }
  return k;
}

std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> tokens;
  std::size_t pos = 0;
  while (pos < source.size()) {
    const char c = source[pos];
    if (std::isspace(static_cast<unsigned char>(c)) != 0) {
      ++pos;
      continue;
    }
    if (const std::size_t n = scan_decimal(source.substr(pos)); n > 0) {
      tokens.push_back({TokenKind::Number, std::string(source.substr(pos, n)), pos});
      pos += n;
      continue;
    }
    if (is_ident_start(c)) {
      std::size_t end = pos + 1;
      while (end < source.size() && is_ident_char(source[end])) ++end;
      tokens.push_back({TokenKind::Ident, std::string(source.substr(pos, end - pos)), pos});
      pos = end;
      continue;
    }
    TokenKind kind;
    switch (c) {
      case '+': kind = TokenKind::Plus; break;
      case '-': kind = TokenKind::Minus; break;
      case '*': kind = TokenKind::Star; break;
      case '/': kind = TokenKind::Slash; break;
      case '^': kind = TokenKind::Caret; break;
      case '(': kind = TokenKind::LParen; break;
      case ')': kind = TokenKind::RParen; break;
      default:
        throw Error(ErrorKind::Lex,
                    "unexpected character '" + std::string(1, c) + "' at offset " + std::to_string(pos),
                    pos);
    }
    tokens.push_back({kind, std::string(1, c), pos});
    ++pos;
  }
  return tokens;
}

// ---------------------------------------------------------------------------

bool operator==(const ExprNode& a, const ExprNode& b) {
  if (a.data.index() != b.data.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using N = std::decay_t<decltype(x)>;
        const auto& y = std::get<N>(b.data);
        if constexpr (std::is_same_v<N, node::Const>) {
          return x.value == y.value;
        } else if constexpr (std::is_same_v<N, node::Var>) {
          return true;
        } else if constexpr (std::is_same_v<N, node::Neg>) {
          return *x.arg == *y.arg;
        } else if constexpr (std::is_same_v<N, node::Binary>) {
          return x.op == y.op && *x.lhs == *y.lhs && *x.rhs == *y.rhs;
        } else if constexpr (std::is_same_v<N, node::PowInt>) {
          return x.exponent == y.exponent && *x.base == *y.base;
        } else {
          return x.fn == y.fn && *x.arg == *y.arg;
        }
      },
      a.data);
}

ExprPtr make_const(Complex value) { return std::make_shared<const ExprNode>(ExprNode{node::Const{value}}); }
ExprPtr make_var() { return std::make_shared<const ExprNode>(ExprNode{node::Var{}}); }
ExprPtr make_neg(ExprPtr arg) {
  return std::make_shared<const ExprNode>(ExprNode{node::Neg{std::move(arg)}});
}
ExprPtr make_binary(BinaryOp op, ExprPtr lhs, ExprPtr rhs) {
  return std::make_shared<const ExprNode>(ExprNode{node::Binary{op, std::move(lhs), std::move(rhs)}});
}
ExprPtr make_powi(ExprPtr base, int exponent) {
  return std::make_shared<const ExprNode>(ExprNode{node::PowInt{std::move(base), exponent}});
}
ExprPtr make_call(Elementary fn, ExprPtr arg) {
  return std::make_shared<const ExprNode>(ExprNode{node::Call{fn, std::move(arg)}});
}

// ---------------------------------------------------------------------------

namespace {

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {}

  ExprPtr parse_all() {
    ExprPtr e = expr();
    if (!at_end()) fail("operator or end of input");
    return e;
  }

 private:
  const std::vector<Token>& tokens_;
  std::size_t next_ = 0;

  bool at_end() const { return next_ >= tokens_.size(); }
  const Token* peek() const { return at_end() ? nullptr : &tokens_[next_]; }
  bool check(TokenKind kind) const { return !at_end() && tokens_[next_].kind == kind; }

  std::size_t current_position() const {
    if (!at_end()) return tokens_[next_].position;
    if (tokens_.empty()) return 0;
    const Token& last = tokens_.back();
    return last.position + last.text.size();
  }

  [[noreturn]] void fail(const std::string& expected) const {
    const std::size_t pos = current_position();
    const std::string found = at_end() ? "end of input" : "'" + tokens_[next_].text + "'";
    throw Error(ErrorKind::Parse,
                "at offset " + std::to_string(pos) + ": expected " + expected + ", found " + found, pos);
  }

  ExprPtr expr() {
    ExprPtr lhs = term();
    while (check(TokenKind::Plus) || check(TokenKind::Minus)) {
      const BinaryOp op = tokens_[next_++].kind == TokenKind::Plus ? BinaryOp::Add : BinaryOp::Sub;
      lhs = make_binary(op, std::move(lhs), term());
    }
    return lhs;
  }

  ExprPtr term() {
    ExprPtr lhs = factor();
    while (check(TokenKind::Star) || check(TokenKind::Slash)) {
      const BinaryOp op = tokens_[next_++].kind == TokenKind::Star ? BinaryOp::Mul : BinaryOp::Div;
      lhs = make_binary(op, std::move(lhs), factor());
    }
    return lhs;
  }

  ExprPtr factor() {
    if (check(TokenKind::Minus)) {
      ++next_;
      return make_neg(factor());
    }
    ExprPtr base = atom();
    if (check(TokenKind::Caret)) {
      ++next_;
      return make_powi(std::move(base), integer_exponent());
    }
    return base;
  }

  int integer_exponent() {
    bool negative = false;
    if (check(TokenKind::Minus)) {
      ++next_;
      negative = true;
    }
    const Token* tok = peek();
    const auto digits_only = [](const std::string& s) {
      for (char c : s) {
        if (!is_digit(c)) return false;
      }
      return true;
    };
    if (tok == nullptr || tok->kind != TokenKind::Number || !digits_only(tok->text)) {
      fail("integer literal exponent");
    }
    int value = 0;
    const auto [ptr, ec] = std::from_chars(tok->text.data(), tok->text.data() + tok->text.size(), value);
    if (ec != std::errc{}) fail("integer exponent within range");
    ++next_;
    return negative ? -value : value;
  }

  ExprPtr atom() {
    const Token* tok = peek();
    if (tok == nullptr) fail("number, 'i', 'z', function call or '('");
    switch (tok->kind) {
      case TokenKind::Number: {
        double value = 0.0;
        const auto [ptr, ec] =
            std::from_chars(tok->text.data(), tok->text.data() + tok->text.size(), value);
        if (ec != std::errc{} || !std::isfinite(value)) fail("finite number literal");
        ++next_;
        return make_const(Complex(value, 0.0));
      }
      case TokenKind::LParen: {
        ++next_;
        ExprPtr inner = expr();
        if (!check(TokenKind::RParen)) fail("')'");
        ++next_;
        return inner;
      }
      case TokenKind::Ident: {
        if (tok->text == "z") {
          ++next_;
          return make_var();
        }
        if (tok->text == "i") {
          ++next_;
          return make_const(Complex(0.0, 1.0));
        }
        const auto fn = elementary_from_name(tok->text);
        if (!fn) fail("'z', 'i' or one of exp, log, sin, cos, tan, sinh, cosh, tanh");
        ++next_;
        if (!check(TokenKind::LParen)) fail("'(' after function name");
        ++next_;
        ExprPtr arg = expr();
        if (!check(TokenKind::RParen)) fail("')'");
        ++next_;
        return make_call(*fn, std::move(arg));
      }
      default:
        fail("number, 'i', 'z', function call or '('");
    }
  }
};

std::string format_real(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, ptr);
}

void format_into(const ExprNode& e, std::string& out) {
  std::visit(
      [&](const auto& n) {
        using N = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<N, node::Const>) {
          const Complex v = n.value;
          if (v == Complex(0.0, 1.0)) {
            out += 'i';
          } else if (v.imag() == 0.0 && !std::signbit(v.real())) {
            out += format_real(v.real());
          } else {
            out += '(' + format_real(v.real()) + '+' + format_real(v.imag()) + "*i)";
          }
        } else if constexpr (std::is_same_v<N, node::Var>) {
          out += 'z';
        } else if constexpr (std::is_same_v<N, node::Neg>) {
          out += "(-";
          format_into(*n.arg, out);
          out += ')';
        } else if constexpr (std::is_same_v<N, node::Binary>) {
          static constexpr char kOps[] = {'+', '-', '*', '/'};
          out += '(';
          format_into(*n.lhs, out);
          out += kOps[static_cast<int>(n.op)];
          format_into(*n.rhs, out);
          out += ')';
        } else if constexpr (std::is_same_v<N, node::PowInt>) {
          out += '(';
          format_into(*n.base, out);
          out += '^';
          out += std::to_string(n.exponent);
          out += ')';
        } else {
          out += name_of(n.fn);
          out += '(';
          format_into(*n.arg, out);
          out += ')';
        }
      },
      e.data);
}

}  // namespace

ExprPtr parse(const std::vector<Token>& tokens) { return Parser(tokens).parse_all(); }

ExprPtr parse(std::string_view source) { return parse(tokenize(source)); }

std::string format(const ExprNode& e) {
  std::string out;
  format_into(e, out);
  return out;
}

Complex eval_complex(const ExprNode& e, Complex z) { return detail::evaluate<Complex>(e, z); }

Jet2<double> eval_jet(const ExprNode& e, Complex z) {
  return detail::evaluate<Jet2<double>>(e, Jet2<double>::variable(z));
}

ComplexEvaluator complex_evaluator(ExprPtr e) {
  return [e = std::move(e)](Complex z) { return eval_complex(*e, z); };
}

JetEvaluator jet_evaluator(ExprPtr e) {
  return [e = std::move(e)](Complex z) { return eval_jet(*e, z); };
}

}  // namespace levelpath
