#pragma once

// Complex arithmetic with finiteness checks and second-order forward-mode
// jets. A single evaluation over Jet2 yields f(z), f'(z) and f''(z).
//
// The same set of free functions (add, sub, mul, divide, negate, powi,
// apply) is overloaded for std::complex<S> and Jet2<S>, so an expression
// evaluator written once against them computes either plain values or jets.
// The value component of a jet is always produced by exactly the same
// floating-point operation as the plain complex path.

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <type_traits>

#include "levelpath/error.hpp"

namespace levelpath {

using Complex = std::complex<double>;

enum class Elementary { Exp, Log, Sin, Cos, Tan, Sinh, Cosh, Tanh };

inline constexpr std::array<std::string_view, 8> kElementaryNames = {
    "exp", "log", "sin", "cos", "tan", "sinh", "cosh", "tanh"};

constexpr std::string_view name_of(Elementary fn) noexcept {
  return kElementaryNames[static_cast<std::size_t>(fn)];
}

constexpr std::optional<Elementary> elementary_from_name(std::string_view name) noexcept {
  for (std::size_t k = 0; k < kElementaryNames.size(); ++k) {
    if (kElementaryNames[k] == name) return static_cast<Elementary>(k);
  }
  return std::nullopt;
}

template <typename Scalar>
bool is_finite(const std::complex<Scalar>& z) noexcept {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

template <typename Scalar>
const std::complex<Scalar>& ensure_finite(const std::complex<Scalar>& z, std::string_view what) {
  if (!is_finite(z)) {
    throw Error(ErrorKind::NonFiniteValue, "non-finite value in " + std::string(what));
  }
  return z;
}

/// Principal branch, argument in (-pi, pi]. A negative zero imaginary part
/// is treated as +0 so the negative real axis maps to +pi.
template <typename Scalar>
std::complex<Scalar> principal_log(const std::complex<Scalar>& z) {
  if (z == std::complex<Scalar>(0)) {
    throw Error(ErrorKind::Domain, "log of zero");
  }
  const Scalar im = z.imag() == Scalar(0) ? Scalar(0) : z.imag();
  return std::log(std::complex<Scalar>(z.real(), im));
}

/// Truncated Taylor data (f, f', f'') at a point.
template <typename Scalar>
struct Jet2 {
  using complex_type = std::complex<Scalar>;

  complex_type v{};
  complex_type d1{};
  complex_type d2{};

  /// Jet of the identity map at z: (z, 1, 0).
  static Jet2 variable(const complex_type& z) { return {z, complex_type(1), complex_type(0)}; }
  /// Jet of a constant: (c, 0, 0).
  static Jet2 constant(const complex_type& c) { return {c, complex_type(0), complex_type(0)}; }

  bool operator==(const Jet2&) const = default;
};

template <typename Scalar>
bool is_finite(const Jet2<Scalar>& a) noexcept {
  return is_finite(a.v) && is_finite(a.d1) && is_finite(a.d2);
}

template <typename Scalar>
const Jet2<Scalar>& ensure_finite(const Jet2<Scalar>& a, std::string_view what) {
  if (!is_finite(a)) {
    throw Error(ErrorKind::NonFiniteValue, "non-finite jet in " + std::string(what));
  }
  return a;
}

template <typename Scalar>
const std::complex<Scalar>& value_of(const std::complex<Scalar>& z) noexcept {
  return z;
}
template <typename Scalar>
const std::complex<Scalar>& value_of(const Jet2<Scalar>& a) noexcept {
  return a.v;
}

// ---------------------------------------------------------------------------
// Plain complex values

template <typename Scalar>
std::complex<Scalar> add(const std::complex<Scalar>& a, const std::complex<Scalar>& b) {
  return ensure_finite(a + b, "addition");
}

template <typename Scalar>
std::complex<Scalar> sub(const std::complex<Scalar>& a, const std::complex<Scalar>& b) {
  return ensure_finite(a - b, "subtraction");
}

template <typename Scalar>
std::complex<Scalar> mul(const std::complex<Scalar>& a, const std::complex<Scalar>& b) {
  return ensure_finite(a * b, "multiplication");
}

template <typename Scalar>
std::complex<Scalar> divide(const std::complex<Scalar>& a, const std::complex<Scalar>& b) {
  if (b == std::complex<Scalar>(0)) throw Error(ErrorKind::DivisionByZero, "division by zero");
  return ensure_finite(a / b, "division");
}

template <typename Scalar>
std::complex<Scalar> negate(const std::complex<Scalar>& a) {
  return -a;
}

template <typename Scalar>
std::complex<Scalar> apply(Elementary fn, const std::complex<Scalar>& a) {
  std::complex<Scalar> u;
  switch (fn) {
    case Elementary::Exp: u = std::exp(a); break;
    case Elementary::Log: u = principal_log(a); break;
    case Elementary::Sin: u = std::sin(a); break;
    case Elementary::Cos: u = std::cos(a); break;
    case Elementary::Tan:
      if (std::cos(a) == std::complex<Scalar>(0)) throw Error(ErrorKind::Domain, "tan at a pole");
      u = std::tan(a);
      break;
    case Elementary::Sinh: u = std::sinh(a); break;
    case Elementary::Cosh: u = std::cosh(a); break;
    case Elementary::Tanh:
      if (std::cosh(a) == std::complex<Scalar>(0)) throw Error(ErrorKind::Domain, "tanh at a pole");
      u = std::tanh(a);
      break;
  }
  return ensure_finite(u, name_of(fn));
}

// ---------------------------------------------------------------------------
// Jets

template <typename Scalar>
Jet2<Scalar> operator+(const Jet2<Scalar>& a, const Jet2<Scalar>& b) {
  return ensure_finite(Jet2<Scalar>{a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}, "jet addition");
}

template <typename Scalar>
Jet2<Scalar> operator-(const Jet2<Scalar>& a, const Jet2<Scalar>& b) {
  return ensure_finite(Jet2<Scalar>{a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}, "jet subtraction");
}

template <typename Scalar>
Jet2<Scalar> operator-(const Jet2<Scalar>& a) {
  return {-a.v, -a.d1, -a.d2};
}

// Leibniz rule to second order.
template <typename Scalar>
Jet2<Scalar> operator*(const Jet2<Scalar>& a, const Jet2<Scalar>& b) {
  const Scalar two(2);
  return ensure_finite(Jet2<Scalar>{a.v * b.v, a.v * b.d1 + a.d1 * b.v,
                                    a.v * b.d2 + two * a.d1 * b.d1 + a.d2 * b.v},
                       "jet multiplication");
}

template <typename Scalar>
Jet2<Scalar> operator/(const Jet2<Scalar>& a, const Jet2<Scalar>& b) {
  if (b.v == std::complex<Scalar>(0)) throw Error(ErrorKind::DivisionByZero, "division by zero");
  const Scalar two(2);
  Jet2<Scalar> q;
  q.v = a.v / b.v;
  q.d1 = (a.d1 - q.v * b.d1) / b.v;
  q.d2 = (a.d2 - two * q.d1 * b.d1 - q.v * b.d2) / b.v;
  return ensure_finite(q, "jet division");
}

template <typename Scalar>
Jet2<Scalar> add(const Jet2<Scalar>& a, const Jet2<Scalar>& b) { return a + b; }
template <typename Scalar>
Jet2<Scalar> sub(const Jet2<Scalar>& a, const Jet2<Scalar>& b) { return a - b; }
template <typename Scalar>
Jet2<Scalar> mul(const Jet2<Scalar>& a, const Jet2<Scalar>& b) { return a * b; }
template <typename Scalar>
Jet2<Scalar> divide(const Jet2<Scalar>& a, const Jet2<Scalar>& b) { return a / b; }
template <typename Scalar>
Jet2<Scalar> negate(const Jet2<Scalar>& a) { return -a; }

/// Chain rule: for u = fn(a.v) the result is (u, u'·d1, u''·d1² + u'·d2).
template <typename Scalar>
Jet2<Scalar> apply(Elementary fn, const Jet2<Scalar>& a) {
  using C = std::complex<Scalar>;
  const C u = levelpath::apply(fn, a.v);
  C du;
  C ddu;
  switch (fn) {
    case Elementary::Exp:
      du = u;
      ddu = u;
      break;
    case Elementary::Log: {
      const C inv = C(1) / a.v;
      du = inv;
      ddu = -inv * inv;
      break;
    }
    case Elementary::Sin:
      du = std::cos(a.v);
      ddu = -u;
      break;
    case Elementary::Cos:
      du = -std::sin(a.v);
      ddu = -u;
      break;
    case Elementary::Tan: {
      const C sec = C(1) / std::cos(a.v);
      du = sec * sec;
      ddu = Scalar(2) * u * du;
      break;
    }
    case Elementary::Sinh:
      du = std::cosh(a.v);
      ddu = u;
      break;
    case Elementary::Cosh:
      du = std::sinh(a.v);
      ddu = u;
      break;
    case Elementary::Tanh: {
      const C sech = C(1) / std::cosh(a.v);
      du = sech * sech;
      ddu = Scalar(-2) * u * du;
      break;
    }
  }
  return ensure_finite(Jet2<Scalar>{u, du * a.d1, ddu * a.d1 * a.d1 + du * a.d2}, name_of(fn));
}

template <typename Scalar>
Jet2<Scalar> exp(const Jet2<Scalar>& a) { return apply(Elementary::Exp, a); }
template <typename Scalar>
Jet2<Scalar> log(const Jet2<Scalar>& a) { return apply(Elementary::Log, a); }
template <typename Scalar>
Jet2<Scalar> sin(const Jet2<Scalar>& a) { return apply(Elementary::Sin, a); }
template <typename Scalar>
Jet2<Scalar> cos(const Jet2<Scalar>& a) { return apply(Elementary::Cos, a); }
template <typename Scalar>
Jet2<Scalar> tan(const Jet2<Scalar>& a) { return apply(Elementary::Tan, a); }
template <typename Scalar>
Jet2<Scalar> sinh(const Jet2<Scalar>& a) { return apply(Elementary::Sinh, a); }
template <typename Scalar>
Jet2<Scalar> cosh(const Jet2<Scalar>& a) { return apply(Elementary::Cosh, a); }
template <typename Scalar>
Jet2<Scalar> tanh(const Jet2<Scalar>& a) { return apply(Elementary::Tanh, a); }

// ---------------------------------------------------------------------------
// Integer powers, shared by both value types

template <typename T>
T unit_like(const T& a) {
  if constexpr (requires { a.d1; }) {
    return T::constant(typename T::complex_type(1));
  } else {
    return T(1);
  }
}

/// Square-and-multiply; negative exponents divide one by a^|n|.
template <typename T>
T powi(const T& a, int n) {
  const T one = unit_like(a);
  if (n < 0 && value_of(a) == std::remove_cvref_t<decltype(value_of(a))>(0)) {
    throw Error(ErrorKind::DivisionByZero, "negative power of zero");
  }
  auto m = static_cast<std::uint64_t>(n < 0 ? -static_cast<std::int64_t>(n) : n);
  T result = one;
  T base = a;
  while (m != 0) {
    if (m & 1U) result = levelpath::mul(result, base);
    m >>= 1U;
    if (m != 0) base = levelpath::mul(base, base);
  }
  return n < 0 ? levelpath::divide(one, result) : result;
}

}  // namespace levelpath
