#pragma once

#include <stdexcept>
#include <string>

namespace outflow {

// Physical constants of the outflow problem on the exterior of the unit
// sphere. Pressure law P(rho) = K rho^gamma, viscosity mu = 2*mu1 + mu2,
// far-field density rho_plus, boundary velocity u_b (outflow: u_b < 0;
// u_b = 0 is admitted as the degenerate no-flow case).
struct Params {
    int n = 2;             // spatial dimension, n >= 2
    double gamma = 1.4;    // adiabatic exponent, 1 <= gamma <= 2
    double K = 1.0;        // pressure constant, K > 0
    double mu = 1.0;       // viscosity constant, mu > 0
    double rho_plus = 1.0; // far-field density, > 0
    double u_b = -0.05;    // boundary velocity, <= 0

    void validate() const {
        if (n < 2) throw std::invalid_argument("params.n: spatial dimension must be >= 2");
        if (!(gamma >= 1.0 && gamma <= 2.0))
            throw std::invalid_argument("params.gamma: adiabatic exponent must lie in [1, 2]");
        if (!(K > 0.0)) throw std::invalid_argument("params.K: pressure constant must be > 0");
        if (!(mu > 0.0)) throw std::invalid_argument("params.mu: viscosity constant must be > 0");
        if (!(rho_plus > 0.0))
            throw std::invalid_argument("params.rho_plus: far-field density must be > 0");
        if (!(u_b <= 0.0))
            throw std::invalid_argument(
                "params.u_b: outflow requires u_b < 0 (u_b = 0 allowed as the no-flow case)");
    }
};

} // namespace outflow
