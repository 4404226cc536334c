#pragma once

#include "outflow/params.hpp"

namespace outflow {

// Thermodynamic closure P(rho) = K rho^gamma / p(v) = K v^-gamma and the
// convex relative-energy machinery built on it:
//
//   G(v, vt) = int_{1/vt}^{1/v} (p(1/z) - p(vt)) / z^2 dz   (>= 0, zero iff v = vt)
//   G(v, vt) = vt p(vt) g(v/vt),  g(s) = s - 1 - int_1^s eta^-gamma deta
//   E        = (1/2)(u - ut)^2 + G(v, vt)
//   H(rho, sigma) = rho G(1/rho, 1/sigma)
//
// Closed forms branch on gamma == 1 (selected by exact comparison after
// config parsing); a quadrature mode backs every closed form as an oracle.

double pressure_eulerian(double rho, const Params& p);   // K rho^gamma
double pressure_lagrangian(double v, const Params& p);   // K v^-gamma

// d p(v) / dv = -gamma K v^-(gamma+1)
double dpressure_lagrangian(double v, const Params& p);

enum class EnergyMode { ClosedForm, Quadrature };

double energy_distance_G(double v, double vt, const Params& p,
                         EnergyMode mode = EnergyMode::ClosedForm,
                         double quad_tol = 1e-10);

double normalized_g(double s, double gamma,
                    EnergyMode mode = EnergyMode::ClosedForm,
                    double quad_tol = 1e-10);

double energy_density(double u, double ut, double v, double vt, const Params& p);

double relative_entropy_H(double rho, double sigma, const Params& p);

// Quadratic lower bound on G: (gamma K / 2)|v - vt|^2 <= vt^(1+gamma) G when
// v <= vt, and <= vt^gamma v G when v > vt (valid for 1 <= gamma <= 2).
struct PhiGRecord {
    const char* branch; // "v<=vt" or "v>vt"
    double lhs;
    double rhs;
    bool holds;
};
PhiGRecord check_phiG_bound(double v, double vt, const Params& p);

} // namespace outflow
