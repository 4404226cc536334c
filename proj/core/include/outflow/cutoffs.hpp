#pragma once

namespace outflow {

// Localizer family used by the diagnostics and the modified initial data.
// All of them take values in [0, 1].

// C^3 bump: 1 on [0, m/2], 0 on [m, inf), derivatives |d^i/dr^i| <= C m^-i.
double phi_m(double r, double m);
double phi_m_derivative(double r, double m);

// Piecewise-linear window anchored at the left boundary curve:
//   1 on [B+k-1, B+k], down-ramp on [B+k, B+k+1], 0 beyond.
// Its derivative is -1 exactly on the interior of [B+k, B+k+1] and 0 outside.
double zeta_cut(double y, int k, double B_t);
double zeta_cut_derivative(double y, int k, double B_t);

// Mirror window anchored at the right boundary curve:
//   0 on [0, M-k-1], up-ramp on [M-k-1, M-k], 1 beyond.
double xi_cut(double y, int k, double M_t);
double xi_cut_derivative(double y, int k, double M_t);

// C^1 cap: 1 for y <= -1, quadratic blend on [-1, 0], 0 for y >= 0.
// Satisfies |eta_tilde'(y)|^2 <= 8 eta_tilde(y).
double eta_tilde(double y);
double eta_tilde_derivative(double y);

// eta(x,t) = eta_tilde(R(x,t) - R(M0,t)) and chi_m(r,t) = eta_tilde(r - R_m(M0,t))
// share this shifted form; callers supply the reference radius.
inline double eta_shifted(double r, double r_ref) { return eta_tilde(r - r_ref); }
inline double eta_shifted_derivative(double r, double r_ref) {
    return eta_tilde_derivative(r - r_ref);
}

} // namespace outflow
