#include "outflow/initial_data.hpp"

#include <cmath>
#include <stdexcept>

#include "outflow/cutoffs.hpp"
#include "outflow/energy.hpp"

namespace outflow {

InitialData build_initial_data(const std::function<double(double)>& rho0,
                               const std::function<double(double)>& u0,
                               std::shared_ptr<const StationaryProfile> profile, double m) {
    if (!profile) throw std::invalid_argument("build_initial_data: missing stationary profile");
    if (!(m > 2.0) || m > profile->r_max())
        throw std::invalid_argument("build_initial_data: m must lie in (2, r_max]");
    // Positivity scan of the raw density on a dense grid.
    const int scan = 4096;
    for (int i = 0; i <= scan; ++i) {
        const double r = 1.0 + (m - 1.0) * i / scan;
        if (!(rho0(r) > 0.0))
            throw std::domain_error("build_initial_data: rho0 must be positive on [1, m]");
    }
    InitialData init;
    init.m = m;
    init.rho = [rho0, profile, m](double r) {
        const double rt = profile->rho_interp(r);
        return (rho0(r) - rt) * phi_m(r, m) + rt;
    };
    init.u = [u0, profile, m](double r) {
        const double ut = profile->u_interp(r);
        return (u0(r) - ut) * phi_m(r, m) + ut;
    };
    return init;
}

CompatibilityRecord check_compatibility(const InitialData& init, const Params& params,
                                        double tol, double h) {
    if (!(h > 0.0) || 1.0 + 4.0 * h > init.m)
        throw std::invalid_argument(
            "check_compatibility: stencil step leaves too few samples near r = 1");
    CompatibilityRecord rec;
    rec.value_residual = std::abs(init.u(1.0) - params.u_b);

    // One-sided second-order first derivative at r=1 and the flux form
    // w(r) = (r^{n-1} u)_r / r^{n-1} sampled at r, r+h, r+2h for the outer
    // derivative.
    auto d1 = [&](const std::function<double(double)>& f, double r) {
        return (-3.0 * f(r) + 4.0 * f(r + h) - f(r + 2.0 * h)) / (2.0 * h);
    };
    auto rn1u = [&](double r) { return std::pow(r, params.n - 1.0) * init.u(r); };
    auto w = [&](double r) { return d1(rn1u, r) / std::pow(r, params.n - 1.0); };
    auto P_of_r = [&](double r) { return pressure_eulerian(init.rho(r), params); };

    const double visc = params.mu * d1(w, 1.0);
    const double dP = d1(P_of_r, 1.0);
    const double du0 = d1(init.u, 1.0);
    rec.momentum_residual = visc - dP - init.rho(1.0) * init.u(1.0) * du0;
    rec.pass = rec.value_residual <= tol && std::abs(rec.momentum_residual) <= tol;
    return rec;
}

InitialData make_initial_data(const PerturbationRecipe& recipe,
                              std::shared_ptr<const StationaryProfile> profile, double m) {
    if (!profile) throw std::invalid_argument("make_initial_data: missing stationary profile");
    auto rho_stat = [profile](double r) { return profile->rho_interp(r); };
    auto u_stat = [profile](double r) { return profile->u_interp(r); };
    if (recipe.family == PerturbationRecipe::Family::Stationary)
        return build_initial_data(rho_stat, u_stat, profile, m);

    const double c = recipe.center, w = recipe.width, a = recipe.amplitude;
    if (!(w > 0.0)) throw std::invalid_argument("make_initial_data: bump width must be > 0");
    auto bump = [c, w, a](double r) {
        const double z = (r - c) / w;
        return a * std::exp(-z * z);
    };
    const bool on_rho = recipe.target != PerturbationRecipe::Target::U;
    const bool on_u = recipe.target != PerturbationRecipe::Target::Rho;
    auto rho0 = [rho_stat, bump, on_rho](double r) {
        return rho_stat(r) + (on_rho ? bump(r) : 0.0);
    };
    auto u0 = [u_stat, bump, on_u](double r) { return u_stat(r) + (on_u ? bump(r) : 0.0); };
    return build_initial_data(rho0, u0, profile, m);
}

} // namespace outflow
