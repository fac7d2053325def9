#include "levelpath/tracer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace levelpath {

namespace {

constexpr Complex kI(0.0, 1.0);

// Steps shorter than this fraction of h come from summation roundoff of s.
constexpr double kNegligibleStepFraction = 1e-9;

Jet2<double> checked_jet(const JetEvaluator& f, Complex z) {
  if (!is_finite(z)) throw Error(ErrorKind::NonFiniteValue, "non-finite position");
  return f(z);
}

void require_regular(const Jet2<double>& jet, double singular_eps, Complex z) {
  if (std::abs(jet.v) <= singular_eps || std::abs(jet.d1) <= singular_eps) {
    throw Error(ErrorKind::SingularProximity,
                "|f| or |f'| below threshold at " + std::to_string(z.real()) + (z.imag() < 0 ? "" : "+") +
                    std::to_string(z.imag()) + "i");
  }
}

}  // namespace

std::string_view to_string(Method m) noexcept {
  switch (m) {
    case Method::Euler: return "euler";
    case Method::RK4: return "rk4";
    case Method::Taylor2: return "taylor2";
  }
  return "";
}

std::string_view to_string(Termination t) noexcept {
  switch (t) {
    case Termination::ArcBudgetExhausted: return "ArcBudgetExhausted";
    case Termination::ClosedLoop: return "ClosedLoop";
    case Termination::SingularProximity: return "SingularProximity";
    case Termination::CorrectorFailure: return "CorrectorFailure";
    case Termination::MaxSteps: return "MaxSteps";
    case Termination::NonFiniteValue: return "NonFiniteValue";
  }
  return "";
}

std::string_view to_string(Form f) noexcept { return f == Form::Direct ? "direct" : "log"; }

// ---------------------------------------------------------------------------

Complex tangent(const JetEvaluator& f, Complex z, Orientation sigma, double singular_eps) {
  const Jet2<double> jet = checked_jet(f, z);
  require_regular(jet, singular_eps, z);
  const Complex w = jet.d1 * std::conj(jet.v);
  const Complex t = sign_of(sigma) * kI * std::conj(w) / std::abs(w);
  return ensure_finite(t, "tangent");
}

Complex tangent_log(const JetEvaluator& g, Complex z, Orientation sigma, double singular_eps) {
  const Jet2<double> jet = checked_jet(g, z);
  if (std::abs(jet.d1) <= singular_eps) {
    throw Error(ErrorKind::SingularProximity, "|g'| below threshold");
  }
  const Complex t = sign_of(sigma) * kI * std::conj(jet.d1) / std::abs(jet.d1);
  return ensure_finite(t, "log-form tangent");
}

Complex curvature(const JetEvaluator& f, Complex z, Complex t, double c, double singular_eps) {
  const Jet2<double> jet = checked_jet(f, z);
  require_regular(jet, singular_eps, z);
  const Complex ft2 = jet.d2 * t * t;
  const Complex conj_f = std::conj(jet.v);
  const Complex first = -c * c * std::conj(ft2) / (2.0 * jet.d1 * conj_f * conj_f);
  const Complex second = -ft2 / (2.0 * jet.d1);
  const Complex third = -std::conj(jet.d1 / jet.v);
  return ensure_finite(first + second + third, "curvature");
}

double squared_relation_residual(const JetEvaluator& f, Complex z, Complex t, double c) {
  const Jet2<double> jet = checked_jet(f, z);
  const Complex conj_f = std::conj(jet.v);
  const Complex lhs = jet.d1 * conj_f * conj_f * t * t;
  const double r = std::abs(lhs + c * c * std::conj(jet.d1));
  if (!std::isfinite(r)) throw Error(ErrorKind::NonFiniteValue, "non-finite residual");
  return r;
}

Complex correct(const JetEvaluator& f, Complex z, double c, double tol, int max_iter, double singular_eps) {
  for (int iter = 0;; ++iter) {
    const Jet2<double> jet = checked_jet(f, z);
    require_regular(jet, singular_eps, z);
    const double mod_f = std::abs(jet.v);
    if (std::abs(mod_f - c) <= tol) return z;
    if (iter == max_iter) {
      throw Error(ErrorKind::CorrectorFailure, "modulus error " + std::to_string(std::abs(mod_f - c)) +
                                                   " after " + std::to_string(max_iter) + " iterations");
    }
    const double mod_df = std::abs(jet.d1);
    const Complex normal = std::conj(jet.d1) * jet.v / (mod_df * mod_f);
    const double residual = mod_f * mod_f - c * c;
    z -= (residual / (2.0 * mod_df * mod_f)) * normal;
    ensure_finite(z, "corrector iterate");
  }
}

// ---------------------------------------------------------------------------

double TraceConfig::effective_closure_tol() const { return closure_tol.value_or(step / 2.0); }

long TraceConfig::effective_max_steps() const {
  return max_steps.value_or(static_cast<long>(std::ceil(arc_budget / step)) + 16);
}

LevelProblem::LevelProblem(TraceConfig config) : config_(std::move(config)) {
  const auto reject = [](const std::string& why) { throw Error(ErrorKind::Configuration, why); };
  if (!config_.function) reject("no function given");
  if (!(config_.step > 0.0) || !std::isfinite(config_.step)) reject("step must be positive");
  if (!(config_.arc_budget > 0.0) || !std::isfinite(config_.arc_budget)) reject("arc length must be positive");
  if (config_.orientation != Orientation::Positive && config_.orientation != Orientation::Negative) {
    reject("orientation must be +1 or -1");
  }
  if (!(config_.singular_eps > 0.0)) reject("singular_eps must be positive");
  if (!(config_.corrector_tol > 0.0)) reject("corrector tolerance must be positive");
  if (config_.corrector_max_iter < 0) reject("corrector iteration limit must be nonnegative");
  if (!is_finite(config_.seed)) reject("seed must be finite");

  if (config_.form == Form::Direct) {
    f_ = jet_evaluator(config_.function);
  } else {
    g_ = jet_evaluator(config_.function);
    f_ = [g = g_](Complex z) { return exp(g(z)); };
  }

  Jet2<double> seed_jet;
  try {
    seed_jet = f_(config_.seed);
    if (config_.form == Form::Log) {
      const Jet2<double> g_seed = g_(config_.seed);
      if (std::abs(g_seed.d1) <= config_.singular_eps) reject("seed violates singular_eps: |g'(z0)| too small");
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Configuration) throw;
    reject(std::string("cannot evaluate f at the seed: ") + e.what());
  }
  if (std::abs(seed_jet.v) <= config_.singular_eps) reject("seed violates singular_eps: |f(z0)| too small");
  if (std::abs(seed_jet.d1) <= config_.singular_eps) reject("seed violates singular_eps: |f'(z0)| too small");
  level_ = std::abs(seed_jet.v);
}

Complex LevelProblem::tangent_at(Complex z) const {
  if (config_.form == Form::Log) return tangent_log(g_, z, config_.orientation, config_.singular_eps);
  return tangent(f_, z, config_.orientation, config_.singular_eps);
}

Complex LevelProblem::curvature_at(Complex z, Complex t) const {
  return curvature(f_, z, t, level_, config_.singular_eps);
}

Complex LevelProblem::correct(Complex z) const {
  return levelpath::correct(f_, z, level_, config_.corrector_tol, config_.corrector_max_iter,
                            config_.singular_eps);
}

StepState step_euler(const LevelProblem& problem, StepState state, double h) {
  const Complex t = problem.tangent_at(state.z);
  return {state.s + h, state.z + h * t};
}

StepState step_rk4(const LevelProblem& problem, StepState state, double h) {
  const Complex z = state.z;
  const Complex k1 = problem.tangent_at(z);
  const Complex k2 = problem.tangent_at(z + 0.5 * h * k1);
  const Complex k3 = problem.tangent_at(z + 0.5 * h * k2);
  const Complex k4 = problem.tangent_at(z + h * k3);
  return {state.s + h, z + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)};
}

StepState step_taylor2(const LevelProblem& problem, StepState state, double h) {
  const Complex t = problem.tangent_at(state.z);
  const Complex p2 = problem.curvature_at(state.z, t);
  return {state.s + h, state.z + h * t + (0.5 * h * h) * p2};
}

StepState step(const LevelProblem& problem, StepState state, double h) {
  switch (problem.config().method) {
    case Method::Euler: return step_euler(problem, state, h);
    case Method::RK4: return step_rk4(problem, state, h);
    case Method::Taylor2: return step_taylor2(problem, state, h);
  }
  return state;
}

TraceResult trace(const TraceConfig& config) { return trace(LevelProblem(config)); }

TraceResult trace(const LevelProblem& problem) {
  const TraceConfig& cfg = problem.config();
  const double c = problem.level();
  const double h = cfg.step;
  const double closure_tol = cfg.effective_closure_tol();
  const long max_steps = cfg.effective_max_steps();

  TraceResult result;
  result.c = c;
  result.points.push_back({0.0, cfg.seed, c, 0.0});

  StepState state{0.0, cfg.seed};
  const auto advance = [&](double hh) {
    StepState next = step(problem, state, hh);
    if (cfg.corrector_enabled) next.z = problem.correct(next.z);
    ensure_finite(next.z, "trace point");
    const double modulus = std::abs(ensure_finite(problem.f()(next.z).v, "trace point value"));
    if (!std::isfinite(modulus)) throw Error(ErrorKind::NonFiniteValue, "modulus overflow");
    result.points.push_back({next.s, next.z, modulus, modulus - c});
    state = next;
  };

  try {
    const Complex t0 = problem.tangent_at(cfg.seed);
    for (long steps = 0;; ++steps) {
      const double remaining = cfg.arc_budget - state.s;
      if (remaining <= kNegligibleStepFraction * h) {
        result.termination = Termination::ArcBudgetExhausted;
        break;
      }
      if (steps >= max_steps) {
        result.termination = Termination::MaxSteps;
        break;
      }
      advance(std::min(h, remaining));

      if (state.s >= 10.0 * h && std::abs(state.z - cfg.seed) < closure_tol) {
        const Complex t = problem.tangent_at(state.z);
        if ((t * std::conj(t0)).real() > 0.0) {
          // Close the loop: a last short step covering the along-tangent gap
          // to the seed.
          const double gap = std::min(((cfg.seed - state.z) * std::conj(t)).real(), cfg.arc_budget - state.s);
          if (gap > kNegligibleStepFraction * h) advance(gap);
          result.termination = Termination::ClosedLoop;
          break;
        }
      }
    }
  } catch (const Error& e) {
    result.message = e.what();
    switch (e.kind()) {
      case ErrorKind::SingularProximity: result.termination = Termination::SingularProximity; break;
      case ErrorKind::CorrectorFailure: result.termination = Termination::CorrectorFailure; break;
      default: result.termination = Termination::NonFiniteValue; break;
    }
  }
  return result;
}

}  // namespace levelpath
