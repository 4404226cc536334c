#pragma once

#include <string>
#include <vector>

#include "outflow/interp.hpp"
#include "outflow/params.hpp"

namespace outflow {

// Stationary outflow profile on the truncated ray [1, r_max].
//
// The time-independent radial system
//   (r^{n-1} rho u)_r = 0,
//   rho u u_r = mu ((r^{n-1} u)_r / r^{n-1})_r - P(rho)_r
// with u(1) = u_b and rho -> rho_plus integrates once to the flux identity
//   u(r) = b r^{1-n} / rho(r),  b = rho(1) u_b,
// and substituting that into the momentum balance leaves a scalar
// second-order ODE for rho:
//   rho'' + a1 |rho'|^2 + a2 rho' + a3 = 0,
//   a1 = -2/rho,
//   a2 = r^{n-1} rho^2 P'(rho) / (mu b) - b / (mu r^{n-1}) - (n-1)/r,
//   a3 = -(n-1) b rho / (mu r^n).
// The coefficient b = rho(1) u_b is nonlocal; it is resolved by an outer
// fixed point on rho(1), each inner problem being a standard two-point BVP
// solved by damped Newton on a trapezoidal collocation of the first-order
// system. The far-field condition is imposed at r_max as the pair
// rho(r_max) = rho_plus, rho'(r_max) = -a3/a2 |_(rho_plus, r_max).
struct StationaryProfile {
    Params params;
    std::vector<double> r_nodes; // geometric stretching toward r = 1
    std::vector<double> rho_t;   // stationary density
    std::vector<double> u_t;     // stationary velocity (from the flux identity)
    std::vector<double> drho;    // d rho / dr
    std::vector<double> du;      // d u / dr
    std::vector<double> ddrho;   // d^2 rho / dr^2 (from the ODE)
    double rho1 = 0.0;           // rho(1)
    double flux = 0.0;           // b = rho(1) u_b
    double ode_residual = 0.0;   // scaled sup-norm residual at the collocation solution

    // interpolants (monotone cubic) built at construction
    MonotoneCubic rho_interp, u_interp, drho_interp, du_interp, ddrho_interp;

    double r_max() const { return r_nodes.back(); }
};

struct StationarySample {
    double rho_t, u_t, drho, du, ddrho;
};

struct StationaryOptions {
    int node_count = 2000;
    double stretch = 4.0;    // exponent of the geometric clustering toward r = 1
    int max_outer = 60;      // fixed-point iterations on rho(1)
    int max_newton = 50;     // damped Newton iterations per inner solve
};

StationaryProfile solve_stationary(const Params& params, double r_max, double tol,
                                   const StationaryOptions& opt = {});

// Sample all stored fields at radius r in [1, r_max]; rho interpolation is
// monotone between nodes and nodal values are reproduced exactly.
StationarySample sample_profile(const StationaryProfile& profile, double r);

// Fitted tail behaviour over the window [r_max/5, 4 r_max/5]:
// log-log slopes of rho_plus - rho (target -(2n-2)), rho_r (-(2n-1)),
// u_r (-n), |rho_rr| (-2n), plus monotonicity verdicts and the worst
// relative flux deviation.
struct DecayReport {
    bool slopes_defined = false; // false for the constant (u_b = 0) profile
    double slope_rho_gap = 0.0;
    double slope_drho = 0.0;
    double slope_du = 0.0;
    double slope_ddrho = 0.0;
    bool rho_increasing = false;
    bool u_r_positive = false; // sign check: du/dr > 0 at interior nodes
    double flux_rel_deviation = 0.0;
    double max_udef_rel_deviation = 0.0; // u vs b r^{1-n}/rho consistency
};

DecayReport stationary_report(const StationaryProfile& profile);

// CSV export: header `r,rho_t,u_t,drho,du,ddrho`, one row per node,
// 17 significant digits.
void export_profile_csv(const StationaryProfile& profile, const std::string& path);

} // namespace outflow
