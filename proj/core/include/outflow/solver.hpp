#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "outflow/coordinates.hpp"
#include "outflow/initial_data.hpp"
#include "outflow/params.hpp"
#include "outflow/stationary.hpp"

namespace outflow {

// Time integration of the Lagrangian system
//   v_t = (r^{n-1} u)_x,
//   u_t = mu r^{n-1} ((r^{n-1} u)_x / v)_x - r^{n-1} p(v)_x,   r = R(x,t)
// on the moving mass interval [B(t), M(t)], mapped to the fixed reference
// grid s in [0,1] by x = B + s (M - B). Node motion adds the mesh-advection
// term xdot u_x (xdot = (1-s)B' + sM'), discretized upwind; the viscous
// operator is theta-implicit (tridiagonal solve); pressure and geometry are
// explicit. Boundary data: u = u_b at x=B(t); (v,u) = (v~(m), u~(m)) at M(t).
struct SolverConfig {
    double m = 40.0;          // outer radius of the annulus
    int N = 512;              // number of cells (N+1 nodes)
    double cfl = 0.8;         // explicit-term safety factor, in (0,1)
    double theta = 1.0;       // implicitness of the viscous solve, [0.5, 1]
    double t_end = 50.0;
    int snapshot_stride = 0;  // if > 0, snapshot every k-th step
    int snapshots = 201;      // else: this many evenly spaced snapshot times

    void validate() const {
        if (N < 16) throw std::invalid_argument("solver.N: need at least 16 cells");
        if (!(theta >= 0.5 && theta <= 1.0))
            throw std::invalid_argument("solver.theta: must lie in [0.5, 1]");
        if (!(cfl > 0.0 && cfl < 1.0))
            throw std::invalid_argument("solver.cfl: must lie in (0, 1)");
        if (!(m > 2.0)) throw std::invalid_argument("solver.m: outer radius must exceed 2");
        if (!(t_end >= 0.0)) throw std::invalid_argument("solver.t_end: must be >= 0");
        if (snapshot_stride < 0)
            throw std::invalid_argument("solver.snapshot_stride: must be >= 0");
        if (snapshot_stride == 0 && snapshots < 2)
            throw std::invalid_argument("solver.snapshots: need at least 2");
    }
};

struct LagrangianState {
    double t = 0.0;
    double B = 0.0; // left boundary (accumulated outflow mass)
    double M = 0.0; // right boundary (closed form)
    std::vector<double> s; // fixed reference nodes in [0,1]
    std::vector<double> v; // specific volume
    std::vector<double> u; // velocity
    std::vector<double> r; // radius, maintained via the cumulative volume map

    std::size_t size() const { return s.size(); }
    double x_of(std::size_t i) const { return B + s[i] * (M - B); }
    std::vector<double> x_nodes() const {
        std::vector<double> x(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) x[i] = x_of(i);
        return x;
    }
};

// Perturbation fields against the stationary profile evaluated along the
// current radii: phi = v - v~(r), psi = u - u~(r).
struct PerturbationFields {
    std::vector<double> phi, psi;
};
PerturbationFields perturbations(const LagrangianState& state,
                                 const StationaryProfile& profile);

class Simulation {
  public:
    Simulation(const Params& params, std::shared_ptr<const StationaryProfile> profile,
               const InitialData& init, const SolverConfig& cfg);

    const LagrangianState& state() const { return state_; }
    const CoordinateMap& map() const { return map_; }
    const Params& params() const { return params_; }
    const SolverConfig& config() const { return cfg_; }
    const StationaryProfile& profile() const { return *profile_; }
    std::shared_ptr<const StationaryProfile> profile_ptr() const { return profile_; }
    double utilde_m() const { return u_right_; }
    double vtilde_m() const { return v_right_; }

    // One step; dt chosen by the CFL rule, clamped to t_limit. Returns the
    // dt taken. Throws outflow::numerical_error on positivity loss after
    // bounded dt-halving retries.
    double step(double t_limit);

    // Measures running dissipation integrals at step resolution between
    // snapshots (handed to the diagnostics ledger).
    struct StepAccumulators {
        double visc = 0.0;      // int mu {r^{2n-2} psi_x^2 / v + (n-1)/2 v psi^2/r^2} dt
        double visc_full = 0.0; // same with the full (n-1) weight
        double bdry = 0.0;      // int |u_b| G(v,v~)/v |_B dt
        double sink_psi = 0.0;  // int |u_b| int psi^2/r^n dx dt
        double sink_G = 0.0;    // int |u_b|^3 int G/r^{3n-2} dx dt
        double gamma_term = 0.0; // int (gamma-1) rho1 |u_b| drho/(r^{n-1}rho^2) G dx dt
        double du_term = 0.0;    // int du~ psi^2 dx dt
        double cross = 0.0;      // int L~ phi psi dx dt
    };
    const StepAccumulators& accumulated() const { return acc_; }
    void reset_accumulators() { acc_ = {}; }

  private:
    void compute_dissipation_rates(StepAccumulators& rates) const;

    Params params_;
    std::shared_ptr<const StationaryProfile> profile_;
    SolverConfig cfg_;
    CoordinateMap map_;
    LagrangianState state_;
    StepAccumulators acc_;
    double u_right_ = 0.0, v_right_ = 0.0;
};

// Builds the Lagrangian state at t = 0: M0 by quadrature of rho_m0 r^{n-1},
// uniform mass grid on [0, M0], per-node monotone root finding of
// x = int_1^{R0} rho_m0 r^{n-1} dr, and sampling of (v,u).
LagrangianState initialize_lagrangian(const InitialData& init, const SolverConfig& cfg,
                                      const Params& params);

struct Trajectory {
    std::vector<LagrangianState> snapshots;
    std::vector<Simulation::StepAccumulators> interval_integrals; // one per gap
};

using SnapshotHook = std::function<void(const LagrangianState&)>;

// Runs until t_end, snapshotting per cfg (exact snapshot times if
// snapshot_stride == 0). The initial and final states are always included.
Trajectory evolve(Simulation& sim, double t_end, const SnapshotHook& hook = nullptr);

} // namespace outflow
