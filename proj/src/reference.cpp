#include "levelpath/reference.hpp"

#include <algorithm>
#include <cmath>

namespace levelpath {

void LinearCase::validate() const {
  if (a == Complex(0.0)) throw Error(ErrorKind::Configuration, "linear case needs a != 0");
  if (radius() == 0.0) throw Error(ErrorKind::Configuration, "linear case seed sits on the zero -b/a");
}

Complex linear_level_path(const LinearCase& lc, double s) {
  lc.validate();
  const Complex shift = lc.b / lc.a;
  const Complex offset = lc.z0 + shift;
  const double r = std::abs(offset);
  return offset * std::exp(Complex(0.0, (s - lc.s0) / r)) - shift;
}

std::pair<Complex, Complex> finite_diff_derivs(const ComplexEvaluator& f, Complex z, double h) {
  if (!(h > 0.0)) throw Error(ErrorKind::Configuration, "finite-difference step must be positive");
  const Complex fp = f(z + h);
  const Complex f0 = f(z);
  const Complex fm = f(z - h);
  return {(fp - fm) / (2.0 * h), (fp - 2.0 * f0 + fm) / (h * h)};
}

double max_drift(const TraceResult& result) {
  double worst = 0.0;
  for (const LevelPoint& p : result.points) worst = std::max(worst, std::abs(p.drift));
  return worst;
}

}  // namespace levelpath
