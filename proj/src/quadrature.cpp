#include "suppind/quadrature.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <string>

#include "suppind/errors.hpp"

namespace suppind {

double simpson(const std::function<double(double)>& f, double lo, double hi, int intervals) {
  if (intervals < 2) intervals = 2;
  if (intervals % 2 != 0) ++intervals;
  const double h = (hi - lo) / intervals;
  double odd = 0.0;
  double even = 0.0;
  for (int k = 1; k < intervals; ++k) {
    const double v = f(lo + k * h);
    (k % 2 != 0 ? odd : even) += v;
  }
  const double s = h / 3.0 * (f(lo) + 4.0 * odd + 2.0 * even + f(hi));
  if (!std::isfinite(s)) throw NumericError("Simpson quadrature produced a non-finite value");
  return s;
}

double integrate(const std::function<double(double)>& f, double lo, double hi, double tol) {
  if (lo == hi) return 0.0;
  thread_local boost::math::quadrature::tanh_sinh<double> rule;
  double err = 0.0;
  double value = 0.0;
  try {
    value = rule.integrate(f, lo, hi, tol, &err);
  } catch (const std::exception& e) {
    throw NumericError(std::string("quadrature failed: ") + e.what());
  }
  if (!std::isfinite(value)) throw NumericError("quadrature produced a non-finite value");
  return value;
}

double integrate_unit(const std::function<double(double, double)>& f, double tol) {
  thread_local boost::math::quadrature::tanh_sinh<double> rule;
  // Boost passes the signed distance to the nearer endpoint: a - x below the
  // midpoint, b - x above it.
  auto g = [&f](double x, double xc) {
    const double left = xc < 0 ? -xc : x;
    const double right = xc > 0 ? xc : 1.0 - x;
    return f(left, right);
  };
  double err = 0.0;
  double value = 0.0;
  try {
    value = rule.integrate(g, 0.0, 1.0, tol, &err);
  } catch (const std::exception& e) {
    throw NumericError(std::string("quadrature failed: ") + e.what());
  }
  if (!std::isfinite(value)) throw NumericError("quadrature produced a non-finite value");
  return value;
}

}  // namespace suppind
