#include <gtest/gtest.h>

#include "levelpath/expr.hpp"
#include "levelpath/reference.hpp"
#include "test_support.hpp"

namespace {

using namespace levelpath;

constexpr Complex kI(0.0, 1.0);

std::vector<TokenKind> kinds(const std::vector<Token>& tokens) {
  std::vector<TokenKind> out;
  for (const Token& t : tokens) out.push_back(t.kind);
  return out;
}

template <typename Fn>
Error capture(Fn&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e;
  }
  ADD_FAILURE() << "expected an error";
  return Error(ErrorKind::Format, "none");
}

TEST(Tokenize, SimpleExpression) {
  const auto tokens = tokenize("z^2+1");
  EXPECT_EQ(kinds(tokens), (std::vector{TokenKind::Ident, TokenKind::Caret, TokenKind::Number, TokenKind::Plus,
                                        TokenKind::Number}));
  EXPECT_EQ(tokens[0].text, "z");
  EXPECT_EQ(tokens[2].text, "2");
  EXPECT_EQ(tokens[4].position, 4u);
}

TEST(Tokenize, FunctionCall) {
  const auto tokens = tokenize("exp(z)");
  EXPECT_EQ(kinds(tokens), (std::vector{TokenKind::Ident, TokenKind::LParen, TokenKind::Ident, TokenKind::RParen}));
  EXPECT_EQ(tokens[0].text, "exp");
}

TEST(Tokenize, DecimalLiterals) {
  const auto tokens = tokenize("1.5e-3 .25 7. 2E+4");
  ASSERT_EQ(tokens.size(), 4u);
  EXPECT_EQ(tokens[0].text, "1.5e-3");
  EXPECT_EQ(tokens[1].text, ".25");
  EXPECT_EQ(tokens[2].text, "7.");
  EXPECT_EQ(tokens[3].text, "2E+4");
}

TEST(Tokenize, IllegalCharacter) {
  const Error e = capture([] { tokenize("z $ 2"); });
  EXPECT_EQ(e.kind(), ErrorKind::Lex);
  EXPECT_EQ(e.position(), 2u);
}

TEST(Parse, GoldenTrees) {
  EXPECT_EQ(*parse("z^3 - 1"), *make_binary(BinaryOp::Sub, make_powi(make_var(), 3), make_const(1.0)));
  EXPECT_EQ(*parse("2*i*z"),
            *make_binary(BinaryOp::Mul, make_binary(BinaryOp::Mul, make_const(2.0), make_const(kI)), make_var()));
  EXPECT_EQ(*parse("-z^2"), *make_neg(make_powi(make_var(), 2)));
  EXPECT_EQ(*parse("z^-2"), *make_powi(make_var(), -2));
  EXPECT_EQ(*parse("exp(z)/(z+1)"),
            *make_binary(BinaryOp::Div, make_call(Elementary::Exp, make_var()),
                         make_binary(BinaryOp::Add, make_var(), make_const(1.0))));
  EXPECT_EQ(*parse("1-z-z"), *make_binary(BinaryOp::Sub, make_binary(BinaryOp::Sub, make_const(1.0), make_var()),
                                          make_var()));
}

TEST(Parse, Errors) {
  struct Case {
    const char* source;
    std::size_t position;
  };
  for (const Case& c : {Case{"z^z", 2}, Case{"z +", 3}, Case{"z^2.5", 2}, Case{"2z", 1}, Case{"(z", 2},
                        Case{"foo(z)", 0}, Case{"Exp(z)", 0}, Case{"exp z", 4}, Case{"", 0}, Case{"z^2^3", 3}}) {
    const Error e = capture([&] { parse(c.source); });
    EXPECT_EQ(e.kind(), ErrorKind::Parse) << c.source;
    EXPECT_EQ(e.position(), c.position) << c.source;
  }
}

TEST(Parse, ErrorMessageNamesExpectation) {
  const Error e = capture([] { parse("z^z"); });
  EXPECT_NE(std::string(e.what()).find("integer literal exponent"), std::string::npos);
}

TEST(Format, Canonical) {
  EXPECT_EQ(format(*make_binary(BinaryOp::Sub, make_powi(make_var(), 3), make_const(1.0))), "((z^3)-1)");
  EXPECT_EQ(format(*make_var()), "z");
  EXPECT_EQ(format(*make_call(Elementary::Exp, make_var())), "exp(z)");
  EXPECT_EQ(format(*parse("-z*i")), "((-z)*i)");
  EXPECT_EQ(format(*parse("z^-2")), "(z^-2)");
}

TEST(Eval, ComplexValues) {
  EXPECT_EQ(eval_complex(*parse("z^2+1"), kI), Complex(0.0));
  EXPECT_EQ(eval_complex(*parse("exp(z)"), 0.0), Complex(1.0));
  EXPECT_EQ(capture([] { eval_complex(*parse("1/z"), 0.0); }).kind(), ErrorKind::DivisionByZero);
  EXPECT_EQ(capture([] { eval_complex(*parse("log(z)"), 0.0); }).kind(), ErrorKind::Domain);
}

TEST(Eval, Jets) {
  const Jet2<double> j = eval_jet(*parse("z^2+1"), kI);
  EXPECT_EQ(j.v, Complex(0.0));
  EXPECT_NEAR(std::abs(j.d1 - 2.0 * kI), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(j.d2 - 2.0), 0.0, 1e-15);
  EXPECT_EQ(eval_jet(*parse("exp(z)"), 0.0), (Jet2<double>{1.0, 1.0, 1.0}));
  EXPECT_EQ(eval_jet(*parse("3"), Complex(0.7, -2.0)), (Jet2<double>{3.0, 0.0, 0.0}));
}

// ---------------------------------------------------------------------------
// Properties

ExprPtr random_tree(fixtures::Sampler& rng, int depth) {
  const int choice = depth <= 1 ? rng.integer(0, 2) : rng.integer(0, 8);
  switch (choice) {
    case 0: return make_var();
    case 1: return make_const(kI);
    case 2: {
      const double values[] = {0.0, 1.0, 2.0, 0.5, 1e-7, 123456.789, 0.1, 6.02214076e23};
      return make_const(values[rng.integer(0, 7)]);
    }
    case 3: return make_neg(random_tree(rng, depth - 1));
    case 4:
    case 5:
      return make_binary(static_cast<BinaryOp>(rng.integer(0, 3)), random_tree(rng, depth - 1),
                         random_tree(rng, depth - 1));
    case 6: return make_powi(random_tree(rng, depth - 1), rng.integer(-6, 6));
    default: return make_call(static_cast<Elementary>(rng.integer(0, 7)), random_tree(rng, depth - 1));
  }
}

TEST(ExprProperty, FormatParseRoundTrip) {
  fixtures::Sampler rng(201);
  for (int k = 0; k < 200; ++k) {
    const ExprPtr e = random_tree(rng, 6);
    const std::string text = format(*e);
    EXPECT_EQ(*parse(text), *e) << text;
  }
}

TEST(ExprProperty, JetValueIsBitIdenticalToComplexEvaluation) {
  fixtures::Sampler rng(202);
  for (const auto& entry : fixtures::function_pool()) {
    const ExprPtr e = parse(entry.source);
    for (int k = 0; k < 100; ++k) {
      const Complex z = rng.in_disk(2.0);
      if (entry.pole && std::abs(z - *entry.pole) < 0.1) continue;
      EXPECT_EQ(eval_jet(*e, z).v, eval_complex(*e, z)) << entry.name << " at " << z;
    }
  }
}

TEST(ExprProperty, JetDerivativesMatchFiniteDifferences) {
  fixtures::Sampler rng(203);
  for (const auto& entry : fixtures::function_pool()) {
    const ExprPtr e = parse(entry.source);
    const ComplexEvaluator f = complex_evaluator(e);
    for (int k = 0; k < 100; ++k) {
      const Complex z = rng.in_disk(2.0);
      if (entry.pole && std::abs(z - *entry.pole) < 0.1) continue;
      const Jet2<double> jet = eval_jet(*e, z);
      const Complex fd1 = finite_diff_derivs(f, z, 1e-5).first;
      const Complex fd2 = finite_diff_derivs(f, z, 1e-4).second;
      EXPECT_LE(fixtures::relative_error(fd1, jet.d1), 1e-6) << entry.name << " at " << z;
      if (jet.d2 == Complex(0.0)) {
        EXPECT_LE(std::abs(fd2), 1e-4) << entry.name;
      } else {
        EXPECT_LE(fixtures::relative_error(fd2, jet.d2), 1e-4) << entry.name << " at " << z;
      }
    }
  }
}

}  // namespace
