#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "levelpath/complex_jet.hpp"
#include "levelpath/reference.hpp"
#include "test_support.hpp"

namespace {

using levelpath::Complex;
using levelpath::Elementary;
using levelpath::Error;
using levelpath::ErrorKind;
using J = levelpath::Jet2<double>;

constexpr Complex kI(0.0, 1.0);
constexpr double tol = 1e-14;

void expect_jet_near(const J& actual, Complex v, Complex d1, Complex d2, double eps = tol) {
  EXPECT_NEAR(std::abs(actual.v - v), 0.0, eps) << "value " << actual.v << " vs " << v;
  EXPECT_NEAR(std::abs(actual.d1 - d1), 0.0, eps) << "d1 " << actual.d1 << " vs " << d1;
  EXPECT_NEAR(std::abs(actual.d2 - d2), 0.0, eps) << "d2 " << actual.d2 << " vs " << d2;
}

ErrorKind kind_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::Format;
}

TEST(Jet2, SeedsAreVariableAndConstant) {
  EXPECT_EQ(J::variable(2.0), (J{2.0, 1.0, 0.0}));
  EXPECT_EQ(J::constant(kI), (J{kI, 0.0, 0.0}));
}

TEST(Jet2, Addition) {
  expect_jet_near(J::constant(1.0) + J::variable(2.0), 3.0, 1.0, 0.0);
  const J j{Complex(1, 2), Complex(3, 4), Complex(5, 6)};
  EXPECT_EQ(J::constant(0.0) + j, j);
  // z^2 + z at 1: (1 + 1, 2*1 + 1, 2)
  const J z = J::variable(1.0);
  expect_jet_near(z * z + z, 2.0, 3.0, 2.0);
}

TEST(Jet2, Subtraction) { expect_jet_near(J::variable(2.0) - J::constant(5.0), -3.0, 1.0, 0.0); }

TEST(Jet2, Multiplication) {
  const J z3 = J::variable(3.0);
  expect_jet_near(z3 * z3, 9.0, 6.0, 2.0);
  expect_jet_near(J::constant(5.0) * J::variable(kI), 5.0 * kI, 5.0, 0.0);
  // z^2 * z at i: z^3 = -i, 3z^2 = -3, 6z = 6i
  const J zi = J::variable(kI);
  expect_jet_near((zi * zi) * zi, -kI, -3.0, 6.0 * kI);
}

TEST(Jet2, Division) {
  const J two = J::constant(2.0);
  expect_jet_near(two / two, 1.0, 0.0, 0.0);
  // 1/z at 2: 1/2, -1/4, 2/8
  expect_jet_near(J::constant(1.0) / J::variable(2.0), 0.5, -0.25, 0.25);
  EXPECT_EQ(kind_of([] { return J::constant(1.0) / J::variable(0.0); }), ErrorKind::DivisionByZero);
}

TEST(Jet2, ElementaryAtKnownPoints) {
  expect_jet_near(exp(J::variable(0.0)), 1.0, 1.0, 1.0);
  expect_jet_near(log(J::variable(1.0)), 0.0, 1.0, -1.0);
  expect_jet_near(sin(J::variable(0.0)), 0.0, 1.0, 0.0);
  expect_jet_near(cos(J::variable(0.0)), 1.0, 0.0, -1.0);
  expect_jet_near(tan(J::variable(0.0)), 0.0, 1.0, 0.0);
  expect_jet_near(sinh(J::variable(0.0)), 0.0, 1.0, 0.0);
  expect_jet_near(cosh(J::variable(0.0)), 1.0, 0.0, 1.0);
  expect_jet_near(tanh(J::variable(0.0)), 0.0, 1.0, 0.0);
}

TEST(Jet2, ChainRuleThroughInnerJet) {
  // exp(2z) at 0: (1, 2, 4)
  const J inner = J::constant(2.0) * J::variable(0.0);
  expect_jet_near(exp(inner), 1.0, 2.0, 4.0);
}

TEST(Jet2, LogDomainAndBranch) {
  EXPECT_EQ(kind_of([] { return log(J::variable(0.0)); }), ErrorKind::Domain);
  // Principal branch: arg(-1) = +pi regardless of the sign of zero.
  EXPECT_DOUBLE_EQ(levelpath::principal_log(Complex(-1.0, -0.0)).imag(), M_PI);
  EXPECT_DOUBLE_EQ(levelpath::principal_log(Complex(-1.0, 0.0)).imag(), M_PI);
  EXPECT_LT(levelpath::principal_log(Complex(-1.0, -1e-300)).imag(), 0.0);
}

TEST(Jet2, OverflowIsFlagged) {
  const double big = std::numeric_limits<double>::max();
  EXPECT_EQ(kind_of([&] { return J::constant(big) + J::constant(big); }), ErrorKind::NonFiniteValue);
  EXPECT_EQ(kind_of([&] { return J::constant(big) * J::variable(big); }), ErrorKind::NonFiniteValue);
  EXPECT_EQ(kind_of([] { return exp(J::variable(1000.0)); }), ErrorKind::NonFiniteValue);
  EXPECT_EQ(kind_of([&] { return levelpath::add(Complex(big), Complex(big)); }), ErrorKind::NonFiniteValue);
}

TEST(Jet2, PowiSmallCases) {
  expect_jet_near(levelpath::powi(J::variable(2.0), 0), 1.0, 0.0, 0.0);
  expect_jet_near(levelpath::powi(J::variable(2.0), 3), 8.0, 12.0, 12.0);
  // z^-2 at 1: (1, -2, 6)
  expect_jet_near(levelpath::powi(J::variable(1.0), -2), 1.0, -2.0, 6.0);
  EXPECT_EQ(kind_of([] { return levelpath::powi(J::variable(0.0), -1); }), ErrorKind::DivisionByZero);
  EXPECT_EQ(levelpath::powi(Complex(0.0, 1.0), 2), Complex(-1.0, 0.0));
}

TEST(Jet2, ValueComponentMatchesPlainComplex) {
  const Complex z(0.3, -1.1);
  const J j = J::variable(z);
  for (std::size_t k = 0; k < levelpath::kElementaryNames.size(); ++k) {
    const auto fn = static_cast<Elementary>(k);
    EXPECT_EQ(levelpath::apply(fn, j).v, levelpath::apply(fn, z)) << levelpath::name_of(fn);
  }
  EXPECT_EQ(levelpath::powi(j, 7).v, levelpath::powi(z, 7));
  EXPECT_EQ(levelpath::powi(j, -3).v, levelpath::powi(z, -3));
}

// ---------------------------------------------------------------------------
// Properties

bool near_singularity(Elementary fn, Complex z) {
  switch (fn) {
    case Elementary::Log: return std::abs(z) < 0.1 || (z.real() < 0.0 && std::abs(z.imag()) < 0.1);
    case Elementary::Tan: return std::abs(std::cos(z)) < 0.1;
    case Elementary::Tanh: return std::abs(std::cosh(z)) < 0.1;
    default: return false;
  }
}

TEST(Jet2Property, DerivativesMatchFiniteDifferences) {
  levelpath::fixtures::Sampler rng(101);
  for (std::size_t k = 0; k < levelpath::kElementaryNames.size(); ++k) {
    const auto fn = static_cast<Elementary>(k);
    const levelpath::ComplexEvaluator f = [fn](Complex z) { return levelpath::apply(fn, z); };
    int count = 0;
    while (count < 100) {
      const Complex z = rng.in_disk(2.0);
      if (near_singularity(fn, z)) continue;
      const J jet = levelpath::apply(fn, J::variable(z));
      const Complex fd1 = levelpath::finite_diff_derivs(f, z, 1e-5).first;
      const Complex fd2 = levelpath::finite_diff_derivs(f, z, 1e-4).second;
      EXPECT_LE(levelpath::fixtures::relative_error(fd1, jet.d1), 1e-6) << levelpath::name_of(fn) << " at " << z;
      EXPECT_LE(levelpath::fixtures::relative_error(fd2, jet.d2), 1e-4) << levelpath::name_of(fn) << " at " << z;
      ++count;
    }
  }
}

J random_jet(levelpath::fixtures::Sampler& rng) { return {rng.in_disk(3.0), rng.in_disk(3.0), rng.in_disk(3.0)}; }

double jet_distance(const J& a, const J& b) {
  const double scale = std::max({std::abs(a.v), std::abs(a.d1), std::abs(a.d2), 1e-300});
  return std::max({std::abs(a.v - b.v), std::abs(a.d1 - b.d1), std::abs(a.d2 - b.d2)}) / scale;
}

TEST(Jet2Property, MultiplicationIsCommutativeAndAssociative) {
  levelpath::fixtures::Sampler rng(102);
  for (int k = 0; k < 500; ++k) {
    const J a = random_jet(rng);
    const J b = random_jet(rng);
    const J c = random_jet(rng);
    EXPECT_LE(jet_distance(a * b, b * a), 1e-14);
    EXPECT_LE(jet_distance((a * b) * c, a * (b * c)), 1e-14);
  }
}

TEST(Jet2Property, PowiEqualsRepeatedProduct) {
  levelpath::fixtures::Sampler rng(103);
  for (int k = 0; k < 100; ++k) {
    const J a = random_jet(rng);
    J product = J::constant(1.0);
    for (int n = 0; n <= 8; ++n) {
      EXPECT_LE(jet_distance(levelpath::powi(a, n), product), 1e-12) << "n = " << n;
      if (n > 0) EXPECT_LE(jet_distance(levelpath::powi(a, -n), J::constant(1.0) / product), 1e-12) << "n = -" << n;
      product = product * a;
    }
  }
}

}  // namespace
