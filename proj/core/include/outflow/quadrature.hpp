#pragma once

#include <functional>

namespace outflow {

// Adaptive Gauss-Kronrod (G7,K15) quadrature to an absolute tolerance.
// Signed: integrate(f, a, b) = -integrate(f, b, a). Throws
// outflow::numerical_error if the interval budget is exhausted before the
// tolerance is met.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10);

} // namespace outflow
