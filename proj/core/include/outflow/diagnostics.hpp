#pragma once

#include <optional>
#include <string>
#include <vector>

#include "outflow/solver.hpp"

namespace outflow {

// Numerical certification of the a-priori estimates along a trajectory:
// energy ledger, pointwise bounds, representation formulas, the effective
// viscous flux F = mu phi_x / v - psi / r^{n-1}, eta-weighted norms, and the
// decay functionals driving the large-time statement.

// ---- energy ledger -------------------------------------------------------

struct LedgerEntry {
    double t = 0.0;               // time of the right snapshot
    double energy = 0.0;          // int E dx at the right snapshot
    double dissipation_visc = 0.0; // interval integral, weak (n-1)/2 weighting
    double dissipation_bdry = 0.0; // interval integral of |u_b| G/v |_B
    double sink_psi = 0.0;         // interval integral of |u_b| int psi^2/r^n
    double sink_G = 0.0;           // interval integral of |u_b|^3 int G/r^{3n-2}
    double sup_psi_w = 0.0;        // sup_x r^{n-2} psi^2
    double v_min = 0.0, v_max = 0.0;
    double F_norm = 0.0;           // int_{B}^{M0} r^{2n-2} F^2 dx
    double I1 = 0.0, J1 = 0.0, J2 = 0.0;
    double conv_metric = 0.0;
    double ineq_violation = 0.0;   // signed excess of the discrete (weak) balance
    double balance_residual = 0.0; // discrete residual of the exact balance identity
};

// Discrete balance over one snapshot gap:
//   [int E]_next - [int E]_prev + (interval dissipation + boundary term) <= eps_disc
// with the weak (n-1)/2 weighting. `violation` is the signed left side;
// `exact_residual` is the defect of the full identity including the
// gamma- and du~-weighted terms and the L~ phi psi source, which measures
// pure discretization error and shrinks under refinement.
struct EnergyBalance {
    double energy_prev = 0.0, energy_next = 0.0;
    double violation = 0.0;
    double exact_residual = 0.0;
};

double total_energy(const LagrangianState& snap, const StationaryProfile& profile,
                    const Params& params);

EnergyBalance energy_ledger(const LagrangianState& prev, const LagrangianState& next,
                            const Simulation::StepAccumulators& interval,
                            const StationaryProfile& profile, const Params& params);

// ---- pointwise monitors ---------------------------------------------------

struct MonitorRecord {
    double sup_psi_w = 0.0;     // sup_x r^{n-2} psi^2
    double sobolev_rhs = 0.0;   // int {(n-1) v psi^2/r^2 + r^{2n-2} psi_x^2/v} dx
    bool sobolev_holds = false;
    double window_min = 0.0;    // min over unit-mass windows of int v dx
    double window_max = 0.0;
    bool window_checked = false; // false when the domain is shorter than 1
    double B_t = 0.0;
    double v_min = 0.0, v_max = 0.0;
};

MonitorRecord pointwise_monitors(const LagrangianState& snap,
                                 const StationaryProfile& profile, const Params& params);

// ---- representation formulas ---------------------------------------------

enum class RepresentationVariant { Interior, Outer, NearM0 }; // L1, L2, L3

struct RepresentationResult {
    double v_reconstructed = 0.0;
    double v_solver = 0.0;
    double rel_error = 0.0;
    int window_index = 0; // k actually used (Interior/Outer only)
};

// Reconstructs v(x, t)^gamma from the exponential-weight representation and
// compares with the solver field. traj must hold snapshots covering [0, t].
RepresentationResult representation_check(const Trajectory& traj, double x, double t,
                                          const StationaryProfile& profile,
                                          const Params& params,
                                          RepresentationVariant variant);

// f(r) = rho~(1) |u_b| int_1^r vt'(s) / s^{2(n-1)} ds  (vt = 1/rho~);
// nonincreasing with f(1) = 0 since vt' <= 0.
class FWeight {
  public:
    FWeight(const StationaryProfile& profile);
    double operator()(double r) const;

  private:
    MonotoneCubic interp_;
};

// ---- F-quantity ------------------------------------------------------------

struct FRecord {
    std::vector<double> F;     // per node of `next`
    double norm_sq_2n2 = 0.0;  // int_B^{M0} r^{2n-2} F^2 dx
    double norm_sq_2n4 = 0.0;  // int_B^{M0} r^{2n-4} F^2 dx
    double evolution_residual_l2 = 0.0; // discrete residual of the F evolution law
    bool domain_restricted = false;     // true when B(t) > M0 - 2
};

FRecord F_diagnostics(const LagrangianState& prev, const LagrangianState& next,
                      const StationaryProfile& profile, const Params& params,
                      double M0);

// ---- eta-weighted norms ----------------------------------------------------

struct EtaRecord {
    double norm_2n4 = 0.0;      // int eta r^{2n-4} psi_x^2 dx
    double norm_2n2 = 0.0;      // int eta r^{2n-2} psi_x^2 dx
    double sup_eta_psi = 0.0;   // sup eta r^{n-1} psi^2
    double interp_a_lhs = 0.0, interp_a_rhs = 0.0; // sup eta r^{3n-4} psi_x^2 vs bound
    double interp_b_lhs = 0.0, interp_b_rhs = 0.0; // sup eta r^{3n-3} psi_x^2 vs bound
    bool interp_a_holds = false, interp_b_holds = false;
};

EtaRecord eta_weighted_norms(const LagrangianState& snap, const StationaryProfile& profile,
                             const Params& params, double M0, double delta);

// ---- decay functionals and the convergence metric --------------------------

struct DecayFunctionals {
    double I1 = 0.0; // int (u - u~)^2 / r^{n-1} dr
    double J1 = 0.0; // |rho(1,t) - rho~(1)|^2
    double J2 = 0.0; // int (rho - rho~)_r^2 / r^{n-1} dr
    double dI1 = 0.0, dJ1 = 0.0, dJ2 = 0.0; // finite-difference time derivatives
};

DecayFunctionals decay_functionals(const LagrangianState& prev, const LagrangianState& next,
                                   const StationaryProfile& profile, const Params& params);

double convergence_metric(const LagrangianState& snap, const StationaryProfile& profile);

// ---- whole-trajectory ledger ------------------------------------------------

std::vector<LedgerEntry> build_ledger(const Trajectory& traj,
                                      const StationaryProfile& profile,
                                      const Params& params);

// ---- chi_m refinement study (bounded-domain surrogate) ----------------------

struct ChiStudyRun {
    double m = 0.0;
    const Trajectory* traj = nullptr;
    std::shared_ptr<const StationaryProfile> profile;
};

struct ChiStudyResult {
    std::vector<std::pair<double, double>> pair_m; // (m_i, m_{i+1})
    std::vector<double> sup_difference;            // on the common window
    bool monotone_decreasing = false;
};

// Pairwise sup-differences of the phi_m-blended extensions on the common
// window [1, m_min/2] x [0, T_common]; snapshot times must align.
ChiStudyResult chi_refinement_study(const std::vector<ChiStudyRun>& runs,
                                    const Params& params);

} // namespace outflow
