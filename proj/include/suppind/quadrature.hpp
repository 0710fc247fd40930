#pragma once

#include <functional>

namespace suppind {

// Composite Simpson rule with `intervals` (rounded up to even) panels.
double simpson(const std::function<double(double)>& f, double lo, double hi, int intervals = 2048);

// Double-exponential quadrature; tolerates integrable endpoint
// singularities. Throws NumericError when the estimate is not finite.
double integrate(const std::function<double(double)>& f, double lo, double hi, double tol = 1e-13);

// Integral over [0, 1] of f(x, 1 - x), with both arguments accurate near
// their own endpoint (1 - x is not formed by subtraction close to 1).
double integrate_unit(const std::function<double(double, double)>& f, double tol = 1e-13);

}  // namespace suppind
