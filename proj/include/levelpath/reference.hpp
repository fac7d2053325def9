#pragma once

// Independent oracles: the closed-form level path of a linear function and
// finite-difference derivatives. Nothing here calls into the tracer.

#include <utility>

#include "levelpath/complex_jet.hpp"
#include "levelpath/expr.hpp"
#include "levelpath/tracer.hpp"

namespace levelpath {

/// f(z) = a z + b traced from z0 at arc length s0.
struct LinearCase {
  Complex a{1.0, 0.0};
  Complex b{};
  Complex z0{1.0, 0.0};
  double s0 = 0.0;

  /// Throws ErrorKind::Configuration if a = 0 or z0 = -b/a.
  void validate() const;
  Complex center() const { return -b / a; }
  double radius() const { return std::abs(z0 + b / a); }
};

/// (z0 + b/a) exp(i (s - s0) / |z0 + b/a|) - b/a
Complex linear_level_path(const LinearCase& lc, double s);

/// Central differences along the real axis:
/// ((f(z+h) - f(z-h)) / 2h, (f(z+h) - 2 f(z) + f(z-h)) / h^2).
std::pair<Complex, Complex> finite_diff_derivs(const ComplexEvaluator& f, Complex z, double h);

/// max |drift| over the points of a trace.
double max_drift(const TraceResult& result);

}  // namespace levelpath
