#pragma once

#include <functional>
#include <memory>

#include "outflow/params.hpp"
#include "outflow/stationary.hpp"

namespace outflow {

// Eulerian initial fields on [1, m]. The modified data blends a supplied
// pair (rho0, u0) toward the stationary profile with the C^3 bump phi_m:
//   rho_m0 = (rho0 - rho~) phi_m + rho~,  u_m0 = (u0 - u~) phi_m + u~,
// so the data agrees with (rho0, u0) on [1, m/2] and with the profile at m.
struct InitialData {
    double m = 0.0;
    std::function<double(double)> rho; // blended density
    std::function<double(double)> u;   // blended velocity
};

InitialData build_initial_data(const std::function<double(double)>& rho0,
                               const std::function<double(double)>& u0,
                               std::shared_ptr<const StationaryProfile> profile, double m);

// Boundary-compatibility residuals at r = 1:
//   value:    |u0(1) - u_b|
//   momentum: mu ((r^{n-1} u0)_r / r^{n-1})_r - P(rho0)_r - rho0 u0 (u0)_r
// evaluated with one-sided second-order differences of step h near r = 1.
// The momentum residual uses the sign convention under which stationary data
// is compatible.
struct CompatibilityRecord {
    double value_residual = 0.0;
    double momentum_residual = 0.0;
    bool pass = false;
};

CompatibilityRecord check_compatibility(const InitialData& init, const Params& params,
                                        double tol, double h = 1e-3);

// Named perturbation families for experiment recipes.
struct PerturbationRecipe {
    enum class Family { Stationary, GaussianBump };
    enum class Target { Rho, U, Both };
    Family family = Family::Stationary;
    Target target = Target::Rho;
    double center = 8.0;
    double width = 2.0;
    double amplitude = 0.3; // absolute, in units of rho_plus for the density
};

InitialData make_initial_data(const PerturbationRecipe& recipe,
                              std::shared_ptr<const StationaryProfile> profile, double m);

} // namespace outflow
