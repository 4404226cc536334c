#include "outflow/cutoffs.hpp"

#include <stdexcept>

namespace outflow {

namespace {
// 7th-order smoothstep on [0,1]: s(0)=1, s(1)=0 with three vanishing
// derivatives at both ends, so the glued bump is C^3.
double smooth_down(double t) {
    const double t4 = t * t * t * t;
    return 1.0 - t4 * (35.0 - 84.0 * t + 70.0 * t * t - 20.0 * t * t * t);
}
} // namespace

double phi_m(double r, double m) {
    if (!(m > 0.0)) throw std::invalid_argument("phi_m: m must be > 0");
    if (r <= 0.5 * m) return 1.0;
    if (r >= m) return 0.0;
    return smooth_down((r - 0.5 * m) / (0.5 * m));
}

double phi_m_derivative(double r, double m) {
    if (!(m > 0.0)) throw std::invalid_argument("phi_m: m must be > 0");
    if (r <= 0.5 * m || r >= m) return 0.0;
    const double t = (r - 0.5 * m) / (0.5 * m);
    const double t3 = t * t * t;
    // d/dt of smooth_down = -(140 t^3 - 420 t^4 + 420 t^5 - 140 t^6)
    const double ds = -(140.0 * t3 - 420.0 * t3 * t + 420.0 * t3 * t * t - 140.0 * t3 * t3);
    return ds / (0.5 * m);
}

double zeta_cut(double y, int k, double B_t) {
    if (k < 1) throw std::invalid_argument("zeta_cut: window index must be >= 1");
    if (y <= B_t + k) return 1.0;
    if (y >= B_t + k + 1) return 0.0;
    return 1.0 - y + B_t + k;
}

double zeta_cut_derivative(double y, int k, double B_t) {
    if (k < 1) throw std::invalid_argument("zeta_cut: window index must be >= 1");
    return (y > B_t + k && y < B_t + k + 1) ? -1.0 : 0.0;
}

double xi_cut(double y, int k, double M_t) {
    if (k < 1) throw std::invalid_argument("xi_cut: window index must be >= 1");
    if (y <= M_t - k - 1) return 0.0;
    if (y >= M_t - k) return 1.0;
    return y - M_t + k + 1;
}

double xi_cut_derivative(double y, int k, double M_t) {
    if (k < 1) throw std::invalid_argument("xi_cut: window index must be >= 1");
    return (y > M_t - k - 1 && y < M_t - k) ? 1.0 : 0.0;
}

double eta_tilde(double y) {
    if (y <= -1.0) return 1.0;
    if (y >= 0.0) return 0.0;
    if (y <= -0.5) {
        const double z = y + 1.0;
        return 1.0 - 2.0 * z * z;
    }
    return 2.0 * y * y;
}

double eta_tilde_derivative(double y) {
    if (y <= -1.0 || y >= 0.0) return 0.0;
    if (y <= -0.5) return -4.0 * (y + 1.0);
    return 4.0 * y;
}

} // namespace outflow
