#pragma once

#include <vector>

#include "outflow/params.hpp"

namespace outflow {

// Lagrangian mass-coordinate machinery for the moving domain [B(t), M(t)]:
//   B(t) = |u_b| int_0^t rho(1,s) ds   (mass flown out through r = 1)
//   M(t) = M0 + rho1 |u_b| t           (exactly affine)
//   X(r,t) = B(t) + int_1^r rho y^{n-1} dy
//   R(x,t) = (1 + n int_{B(t)}^x v dy)^{1/n}
struct CoordinateMap {
    double M0 = 0.0;   // initial total tracked mass
    double rho1 = 0.0; // stationary boundary density rho~(1)
    double ub_abs = 0.0;

    double outer_mass_M(double t) const;
};

// Cumulative trapezoid of an Eulerian density field rho(y) y^{n-1} given on
// strictly increasing radii; evaluates X(r) - B_t at arbitrary r by partial
// cells. Throws std::domain_error on nonpositive density.
double mass_coordinate_X(const std::vector<double>& r_nodes,
                         const std::vector<double>& rho_nodes, int n, double r,
                         double B_t);

// Radius map on the mass grid: (1 + n * cumulative trapezoid of v)^{1/n},
// with R(B_t) = 1 exactly. x_nodes strictly increasing, x_nodes.front() = B_t.
double radius_R(const std::vector<double>& x_nodes, const std::vector<double>& v_nodes,
                int n, double x);

// All radii of a mass grid at once (shared cumulative pass).
std::vector<double> radius_R_all(const std::vector<double>& x_nodes,
                                 const std::vector<double>& v_nodes, int n);

// Exact discrete inverse of radius_R_all on the same grid: given the radius
// field r_i produced by the trapezoidal (3.12)-map and a radius r, returns
// the mass coordinate x with X(R(x)) = x to rounding error. This is the
// quadrature of rho y^{n-1} written per cell in mass form.
double state_mass_coordinate(const std::vector<double>& x_nodes,
                             const std::vector<double>& v_nodes,
                             const std::vector<double>& r_nodes, int n, double r);

} // namespace outflow
