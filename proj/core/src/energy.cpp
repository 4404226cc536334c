#include "outflow/energy.hpp"

#include <cmath>
#include <stdexcept>

#include "outflow/quadrature.hpp"

namespace outflow {

double pressure_eulerian(double rho, const Params& p) {
    if (!(rho > 0.0)) throw std::domain_error("pressure_eulerian: density must be > 0");
    return p.K * std::pow(rho, p.gamma);
}

double pressure_lagrangian(double v, const Params& p) {
    if (!(v > 0.0)) throw std::domain_error("pressure_lagrangian: specific volume must be > 0");
    return p.K * std::pow(v, -p.gamma);
}

double dpressure_lagrangian(double v, const Params& p) {
    if (!(v > 0.0)) throw std::domain_error("dpressure_lagrangian: specific volume must be > 0");
    return -p.gamma * p.K * std::pow(v, -p.gamma - 1.0);
}

namespace {
// Series of g(1+z) = sum_{j>=2} (-1)^j [gamma (gamma+1) ... (gamma+j-2)] z^j / j!
// for the near-diagonal band where the closed form cancels catastrophically.
// Truncation error is O(z^7), relative O(z^5).
double g_series(double z, double gamma) {
    const double c2 = gamma / 2.0;
    const double c3 = -c2 * (gamma + 1.0) / 3.0;
    const double c4 = -c3 * (gamma + 2.0) / 4.0;
    const double c5 = -c4 * (gamma + 3.0) / 5.0;
    const double c6 = -c5 * (gamma + 4.0) / 6.0;
    return z * z * (c2 + z * (c3 + z * (c4 + z * (c5 + z * c6))));
}
} // namespace

double energy_distance_G(double v, double vt, const Params& p, EnergyMode mode, double quad_tol) {
    if (!(v > 0.0) || !(vt > 0.0))
        throw std::domain_error("energy_distance_G: specific volumes must be > 0");
    // Hard zero on the numerical diagonal.
    if (std::abs(v - vt) < 1e-12 * vt) return 0.0;
    if (mode == EnergyMode::Quadrature) {
        // integrand (p(1/z) - p(vt)) / z^2 = (K z^gamma - K vt^-gamma) / z^2
        const double pvt = p.K * std::pow(vt, -p.gamma);
        auto f = [&](double z) { return (p.K * std::pow(z, p.gamma) - pvt) / (z * z); };
        return integrate(f, 1.0 / vt, 1.0 / v, quad_tol);
    }
    const double z = (v - vt) / vt;
    if (std::abs(z) < 1e-4)
        return p.K * std::pow(vt, 1.0 - p.gamma) * g_series(z, p.gamma);
    if (p.gamma == 1.0) {
        const double s = v / vt;
        return p.K * (s - 1.0 - std::log(s));
    }
    return p.K / (p.gamma - 1.0) * (std::pow(v, 1.0 - p.gamma) - std::pow(vt, 1.0 - p.gamma)) +
           p.K * std::pow(vt, -p.gamma) * (v - vt);
}

double normalized_g(double s, double gamma, EnergyMode mode, double quad_tol) {
    if (!(s > 0.0)) throw std::domain_error("normalized_g: volume ratio must be > 0");
    if (mode == EnergyMode::Quadrature) {
        auto f = [&](double eta) { return std::pow(eta, -gamma); };
        return s - 1.0 - integrate(f, 1.0, s, quad_tol);
    }
    if (std::abs(s - 1.0) < 1e-12) return 0.0;
    if (std::abs(s - 1.0) < 1e-4) return g_series(s - 1.0, gamma);
    if (gamma == 1.0) return s - 1.0 - std::log(s);
    return s - 1.0 - (1.0 - std::pow(s, 1.0 - gamma)) / (gamma - 1.0);
}

double energy_density(double u, double ut, double v, double vt, const Params& p) {
    const double dv = u - ut;
    return 0.5 * dv * dv + energy_distance_G(v, vt, p);
}

double relative_entropy_H(double rho, double sigma, const Params& p) {
    if (!(rho > 0.0) || !(sigma > 0.0))
        throw std::domain_error("relative_entropy_H: densities must be > 0");
    const double s = rho / sigma;
    if (std::abs(s - 1.0) < 1e-12) return 0.0;
    if (p.gamma == 1.0) {
        const double h = s * std::log(s) - s + 1.0;
        return p.K * sigma * h;
    }
    const double h = std::pow(s, p.gamma) - 1.0 - p.gamma * (s - 1.0);
    return p.K * std::pow(sigma, p.gamma) / (p.gamma - 1.0) * h;
}

PhiGRecord check_phiG_bound(double v, double vt, const Params& p) {
    if (!(v > 0.0) || !(vt > 0.0))
        throw std::domain_error("check_phiG_bound: specific volumes must be > 0");
    if (!(p.gamma >= 1.0 && p.gamma <= 2.0))
        throw std::invalid_argument("check_phiG_bound: requires 1 <= gamma <= 2");
    const double G = energy_distance_G(v, vt, p);
    const double lhs = 0.5 * p.gamma * p.K * (v - vt) * (v - vt);
    PhiGRecord rec{};
    if (v <= vt) {
        rec.branch = "v<=vt";
        rec.rhs = std::pow(vt, 1.0 + p.gamma) * G;
    } else {
        rec.branch = "v>vt";
        rec.rhs = std::pow(vt, p.gamma) * v * G;
    }
    rec.lhs = lhs;
    // The bound is an equality in the limit v -> vt; the absolute slack
    // covers the hard-zero diagonal band of G.
    const double guard = 1e-12 * std::max(v, vt);
    const double abs_slack = 0.5 * p.gamma * p.K * guard * guard;
    rec.holds = lhs <= rec.rhs * (1.0 + 1e-9) + abs_slack;
    return rec;
}

} // namespace outflow
