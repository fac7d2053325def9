#pragma once

// Arc-length level paths |f(z)| = c of an analytic f.
//
// The unit tangent of the level path through z is
//
//     p'(s) = sigma * i * conj(w) / |w|,   w = f'(z) * conj(f(z)),
//
// and when f = exp(g) it reduces to sigma * i * conj(g'(z)) / |g'(z)|.
// Differentiating once more along the path gives the second derivative
// used by the order-2 series step (see curvature()).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "levelpath/complex_jet.hpp"
#include "levelpath/expr.hpp"

namespace levelpath {

inline constexpr double kDefaultSingularEps = 1e-8;

enum class Orientation : int { Positive = 1, Negative = -1 };
enum class Form { Direct, Log };
enum class Method { Euler, RK4, Taylor2 };
enum class Termination {
  ArcBudgetExhausted,
  ClosedLoop,
  SingularProximity,
  CorrectorFailure,
  MaxSteps,
  NonFiniteValue,
};

std::string_view to_string(Method m) noexcept;
std::string_view to_string(Termination t) noexcept;
std::string_view to_string(Form f) noexcept;

constexpr double sign_of(Orientation o) noexcept { return static_cast<double>(static_cast<int>(o)); }

/// ArcBudgetExhausted and ClosedLoop are the two clean endings.
constexpr bool is_success(Termination t) noexcept {
  return t == Termination::ArcBudgetExhausted || t == Termination::ClosedLoop;
}

// ---------------------------------------------------------------------------
// Pointwise formulas

/// Unit tangent of the level path through z. Throws SingularProximity when
/// |f(z)| or |f'(z)| is at or below singular_eps.
Complex tangent(const JetEvaluator& f, Complex z, Orientation sigma,
                double singular_eps = kDefaultSingularEps);

/// Unit tangent from the logarithmic form f = exp(g); needs only g'.
Complex tangent_log(const JetEvaluator& g, Complex z, Orientation sigma,
                    double singular_eps = kDefaultSingularEps);

/// Second arc-length derivative p'' at z given the unit tangent t and level c:
///
///   p'' = -c^2 conj(f'' t^2) / (2 f' conj(f)^2) - f'' t^2 / (2 f') - conj(f' / f)
Complex curvature(const JetEvaluator& f, Complex z, Complex t, double c,
                  double singular_eps = kDefaultSingularEps);

/// |f'(z) conj(f(z))^2 t^2 + c^2 conj(f'(z))|, which vanishes when t is the
/// level tangent and |f(z)| = c.
double squared_relation_residual(const JetEvaluator& f, Complex z, Complex t, double c);

/// Newton projection onto |f| = c along the modulus gradient direction.
Complex correct(const JetEvaluator& f, Complex z, double c, double tol, int max_iter,
                double singular_eps = kDefaultSingularEps);

// ---------------------------------------------------------------------------
// Tracing

struct TraceConfig {
  ExprPtr function;
  Form form = Form::Direct;
  Complex seed{};
  Orientation orientation = Orientation::Positive;
  double step = 0.01;
  double arc_budget = 10.0;
  Method method = Method::RK4;
  bool corrector_enabled = true;
  double corrector_tol = 1e-10;
  int corrector_max_iter = 5;
  double singular_eps = kDefaultSingularEps;
  std::optional<double> closure_tol;  // default step / 2
  std::optional<long> max_steps;      // default ceil(arc_budget / step) + 16

  double effective_closure_tol() const;
  long effective_max_steps() const;
};

struct LevelPoint {
  double s;
  Complex z;
  double modulus;
  double drift;
};

struct TraceResult {
  std::vector<LevelPoint> points;
  Termination termination = Termination::ArcBudgetExhausted;
  double c = 0.0;
  std::string message;  // error text for failure terminations
};

/// A validated trace configuration bound to its evaluators and level c.
/// Construction throws ErrorKind::Configuration when the config invariants
/// or the seed conditions fail.
class LevelProblem {
 public:
  explicit LevelProblem(TraceConfig config);

  const TraceConfig& config() const noexcept { return config_; }
  double level() const noexcept { return level_; }

  /// Jet of f (for the log form, of exp(g)).
  const JetEvaluator& f() const noexcept { return f_; }

  Complex tangent_at(Complex z) const;
  Complex curvature_at(Complex z, Complex t) const;
  Complex correct(Complex z) const;

 private:
  TraceConfig config_;
  JetEvaluator f_;
  JetEvaluator g_;
  double level_ = 0.0;
};

struct StepState {
  double s;
  Complex z;
};

StepState step_euler(const LevelProblem& problem, StepState state, double h);
StepState step_rk4(const LevelProblem& problem, StepState state, double h);
StepState step_taylor2(const LevelProblem& problem, StepState state, double h);
/// Dispatches on config().method.
StepState step(const LevelProblem& problem, StepState state, double h);

TraceResult trace(const TraceConfig& config);
TraceResult trace(const LevelProblem& problem);

}  // namespace levelpath
