#include "outflow/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "outflow/energy.hpp"
#include "outflow/errors.hpp"

namespace outflow {

namespace {

// Thomas elimination; diag/lower/upper are overwritten.
void solve_tridiagonal(std::vector<double>& lower, std::vector<double>& diag,
                       std::vector<double>& upper, std::vector<double>& rhs) {
    const std::size_t n = diag.size();
    for (std::size_t i = 1; i < n; ++i) {
        if (diag[i - 1] == 0.0 || !std::isfinite(diag[i - 1]))
            throw numerical_error("viscous solve: singular tridiagonal pivot");
        const double w = lower[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    if (diag[n - 1] == 0.0 || !std::isfinite(diag[n - 1]))
        throw numerical_error("viscous solve: singular tridiagonal pivot");
    rhs[n - 1] /= diag[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] = (rhs[i] - upper[i] * rhs[i + 1]) / diag[i];
}

double pow_int(double x, int e) {
    double out = 1.0;
    for (int k = 0; k < e; ++k) out *= x;
    return out;
}

} // namespace

PerturbationFields perturbations(const LagrangianState& state,
                                 const StationaryProfile& profile) {
    const std::size_t m = state.size();
    PerturbationFields f;
    f.phi.resize(m);
    f.psi.resize(m);
    const int n = profile.params.n;
    for (std::size_t i = 0; i < m; ++i) {
        const double rho_t = profile.rho_interp(state.r[i]);
        const double vt = 1.0 / rho_t;
        const double ut = profile.flux / (pow_int(state.r[i], n - 1) * rho_t);
        f.phi[i] = state.v[i] - vt;
        f.psi[i] = state.u[i] - ut;
    }
    return f;
}

LagrangianState initialize_lagrangian(const InitialData& init, const SolverConfig& cfg,
                                      const Params& params) {
    cfg.validate();
    const int n = params.n;
    const double m = init.m;

    // Cumulative mass C(r) = int_1^r rho_m0 y^{n-1} dy on a dense grid.
    const int J = std::max(8 * cfg.N, 4096);
    std::vector<double> rf(J + 1), ff(J + 1), C(J + 1);
    for (int j = 0; j <= J; ++j) {
        rf[j] = 1.0 + (m - 1.0) * static_cast<double>(j) / J;
        const double rho = init.rho(rf[j]);
        if (!(rho > 0.0))
            throw std::domain_error("initialize_lagrangian: nonpositive initial density");
        ff[j] = rho * pow_int(rf[j], n - 1);
    }
    C[0] = 0.0;
    for (int j = 0; j < J; ++j)
        C[j + 1] = C[j] + 0.5 * (ff[j] + ff[j + 1]) * (rf[j + 1] - rf[j]);
    const double M0 = C[J];

    LagrangianState st;
    st.t = 0.0;
    st.B = 0.0;
    st.M = M0;
    const std::size_t NN = static_cast<std::size_t>(cfg.N);
    st.s.resize(NN + 1);
    st.v.resize(NN + 1);
    st.u.resize(NN + 1);
    for (std::size_t i = 0; i <= NN; ++i) st.s[i] = static_cast<double>(i) / cfg.N;

    // Monotone inversion of C per node: locate the cell, then Newton on the
    // local quadratic C_j + f_j dr + (f_{j+1}-f_j) dr^2 / (2 h).
    std::size_t j = 0;
    for (std::size_t i = 0; i <= NN; ++i) {
        const double x = st.s[i] * M0;
        while (j + 1 < C.size() && C[j + 1] < x) ++j;
        double r0;
        if (i == 0) {
            r0 = 1.0;
        } else if (i == NN) {
            r0 = m;
        } else {
            const double h = rf[j + 1] - rf[j];
            const double a = 0.5 * (ff[j + 1] - ff[j]) / h;
            double dr = h * (x - C[j]) / std::max(C[j + 1] - C[j], 1e-300);
            for (int it = 0; it < 4; ++it) {
                const double g = C[j] + ff[j] * dr + a * dr * dr - x;
                const double gp = ff[j] + 2.0 * a * dr;
                dr -= g / gp;
            }
            dr = std::clamp(dr, 0.0, h);
            r0 = rf[j] + dr;
        }
        st.v[i] = 1.0 / init.rho(r0);
        st.u[i] = init.u(r0);
    }
    st.r = radius_R_all(st.x_nodes(), st.v, n);
    return st;
}

Simulation::Simulation(const Params& params, std::shared_ptr<const StationaryProfile> profile,
                       const InitialData& init, const SolverConfig& cfg)
    : params_(params), profile_(std::move(profile)), cfg_(cfg) {
    params_.validate();
    cfg_.validate();
    if (!profile_) throw std::invalid_argument("Simulation: missing stationary profile");
    if (cfg_.m > profile_->r_max())
        throw std::invalid_argument("Simulation: annulus radius m exceeds the profile's r_max");
    if (init.m != cfg_.m)
        throw std::invalid_argument("Simulation: initial data and config disagree on m");

    state_ = initialize_lagrangian(init, cfg_, params_);
    const double rho_m = profile_->rho_interp(cfg_.m);
    v_right_ = 1.0 / rho_m;
    u_right_ = profile_->flux / (std::pow(cfg_.m, params_.n - 1.0) * rho_m);
    // Dirichlet data holds exactly from the first state on.
    state_.u.front() = params_.u_b;
    state_.u.back() = u_right_;
    state_.v.back() = v_right_;
    state_.r = radius_R_all(state_.x_nodes(), state_.v, params_.n);

    map_.M0 = state_.M;
    map_.rho1 = profile_->rho1;
    map_.ub_abs = std::abs(params_.u_b);
}

void Simulation::compute_dissipation_rates(StepAccumulators& rates) const {
    const std::size_t m = state_.size();
    const int n = params_.n;
    const double h = (state_.M - state_.B) * (state_.s[1] - state_.s[0]);
    const PerturbationFields f = perturbations(state_, *profile_);

    std::vector<double> integrand_visc(m), integrand_visc_full(m), integrand_psi(m),
        integrand_G(m), integrand_gamma(m), integrand_du(m), integrand_cross(m);
    const double ub_abs = std::abs(params_.u_b);
    for (std::size_t i = 0; i < m; ++i) {
        double psix;
        if (i == 0)
            psix = (-3.0 * f.psi[0] + 4.0 * f.psi[1] - f.psi[2]) / (2.0 * h);
        else if (i + 1 == m)
            psix = (3.0 * f.psi[m - 1] - 4.0 * f.psi[m - 2] + f.psi[m - 3]) / (2.0 * h);
        else
            psix = (f.psi[i + 1] - f.psi[i - 1]) / (2.0 * h);
        const double r = state_.r[i], v = state_.v[i], psi = f.psi[i], phi = f.phi[i];
        const double rn1 = pow_int(r, n - 1);
        const double G = energy_distance_G(v, v - phi, params_);
        const double grad_part = rn1 * rn1 * psix * psix / v;
        const double psi_part = v * psi * psi / (r * r);
        integrand_visc[i] = params_.mu * (grad_part + 0.5 * (n - 1) * psi_part);
        integrand_visc_full[i] = params_.mu * (grad_part + (n - 1) * psi_part);
        integrand_psi[i] = ub_abs * psi * psi / (rn1 * r);
        integrand_G[i] = ub_abs * ub_abs * ub_abs * G / (pow_int(r, 3 * n - 2));
        const double drho = profile_->drho_interp(r);
        const double ddrho = profile_->ddrho_interp(r);
        const double rho_t = profile_->rho_interp(r);
        integrand_gamma[i] = (params_.gamma - 1.0) * profile_->rho1 * ub_abs * drho /
                             (rn1 * rho_t * rho_t) * G;
        integrand_du[i] = profile_->du_interp(r) * psi * psi;
        // L~ = mu b (r^{1-n} vt'' - (n-1) r^{-n} vt'), vt = 1/rho~
        const double vt_p = -drho / (rho_t * rho_t);
        const double vt_pp = -ddrho / (rho_t * rho_t) + 2.0 * drho * drho / (rho_t * rho_t * rho_t);
        const double Lt = params_.mu * profile_->flux * (vt_pp / rn1 - (n - 1) * vt_p / (rn1 * r));
        integrand_cross[i] = Lt * phi * psi;
    }
    auto trapz = [&](const std::vector<double>& g) {
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < m; ++i) acc += 0.5 * (g[i] + g[i + 1]) * h;
        return acc;
    };
    rates.visc = trapz(integrand_visc);
    rates.visc_full = trapz(integrand_visc_full);
    rates.sink_psi = trapz(integrand_psi);
    rates.sink_G = trapz(integrand_G);
    rates.gamma_term = trapz(integrand_gamma);
    rates.du_term = trapz(integrand_du);
    rates.cross = trapz(integrand_cross);
    const double G0 = energy_distance_G(state_.v[0], state_.v[0] - f.phi[0], params_);
    rates.bdry = ub_abs * G0 / state_.v[0];
}

double Simulation::step(double t_limit) {
    const std::size_t m = state_.size();
    const std::size_t N = m - 1;
    const int n = params_.n;
    const double ub_abs = std::abs(params_.u_b);
    const double ds = state_.s[1] - state_.s[0];

    const double Bp = ub_abs / state_.v[0];
    const double Mp = profile_->rho1 * ub_abs;
    const double L = state_.M - state_.B;
    const double h = ds * L;

    // CFL on the explicit terms (mesh advection + acoustics); the viscous
    // operator is theta-implicit. An extra cap keeps the explicit acoustic
    // update inside the damping range of the implicit viscosity.
    double dt_cfl = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < m; ++i) {
        const double xdot = (1.0 - state_.s[i]) * Bp + state_.s[i] * Mp;
        const double cmass = pow_int(state_.r[i], n - 1) *
                             std::sqrt(params_.gamma * params_.K) *
                             std::pow(state_.v[i], -0.5 * (params_.gamma + 1.0));
        dt_cfl = std::min(dt_cfl, h / (std::abs(xdot) + cmass + 1e-30));
    }
    double v_min_now = *std::min_element(state_.v.begin(), state_.v.end());
    const double dt_acoustic =
        params_.mu * std::pow(v_min_now, params_.gamma) / (params_.gamma * params_.K);
    double dt = std::min(cfg_.cfl * dt_cfl, dt_acoustic);
    if (!(t_limit > state_.t))
        throw std::invalid_argument("Simulation::step: t_limit must exceed current time");
    dt = std::min(dt, t_limit - state_.t);

    StepAccumulators rate_before;
    compute_dissipation_rates(rate_before);

    std::vector<double> u_new(m), v_new(m);
    const double theta = cfg_.theta;

    for (int attempt = 0;; ++attempt) {
        const double dth = dt;
        // ---- momentum: theta-implicit viscous tridiagonal solve ----
        std::vector<double> lower(m, 0.0), diag(m, 0.0), upper(m, 0.0), rhs(m, 0.0);
        // interface coefficients of w_{i+1/2} (flux of the viscous operator)
        auto alpha = [&](std::size_t i) {
            const double rmid = 0.5 * (state_.r[i] + state_.r[i + 1]);
            const double vmid = 0.5 * (state_.v[i] + state_.v[i + 1]);
            return pow_int(rmid, n - 1) / (h * vmid);
        };
        auto beta = [&](std::size_t i, std::size_t node) {
            const double vmid = 0.5 * (state_.v[i] + state_.v[i + 1]);
            return (n - 1) * state_.v[node] / (2.0 * state_.r[node] * vmid);
        };
        diag[0] = 1.0;
        rhs[0] = params_.u_b;
        diag[N] = 1.0;
        rhs[N] = u_right_;
        for (std::size_t i = 1; i < N; ++i) {
            const double ci = params_.mu * pow_int(state_.r[i], n - 1) / h;
            const double a_p = alpha(i), a_m = alpha(i - 1);
            const double bl_p = beta(i, i), br_p = beta(i, i + 1);
            const double bl_m = beta(i - 1, i - 1), br_m = beta(i - 1, i);
            const double A_im1 = ci * (a_m - bl_m);
            const double A_ii = ci * (-a_p + bl_p - a_m - br_m);
            const double A_ip1 = ci * (a_p + br_p);

            const double xdot = (1.0 - state_.s[i]) * Bp + state_.s[i] * Mp;
            double adv;
            if (i + 2 <= N)
                adv = xdot * (-3.0 * state_.u[i] + 4.0 * state_.u[i + 1] - state_.u[i + 2]) /
                      (2.0 * h);
            else
                adv = xdot * (state_.u[i + 1] - state_.u[i]) / h;
            const double pgrad =
                pow_int(state_.r[i], n - 1) *
                (pressure_lagrangian(state_.v[i + 1], params_) -
                 pressure_lagrangian(state_.v[i - 1], params_)) /
                (2.0 * h);
            const double visc_expl = A_im1 * state_.u[i - 1] + A_ii * state_.u[i] +
                                     A_ip1 * state_.u[i + 1];

            lower[i] = -dth * theta * A_im1;
            diag[i] = 1.0 - dth * theta * A_ii;
            upper[i] = -dth * theta * A_ip1;
            rhs[i] = state_.u[i] + dth * (adv + (1.0 - theta) * visc_expl - pgrad);
        }
        solve_tridiagonal(lower, diag, upper, rhs);
        u_new = rhs;

        // ---- continuity: explicit with the updated velocity ----
        auto Fu = [&](std::size_t i) { return pow_int(state_.r[i], n - 1) * u_new[i]; };
        bool positive = true;
        for (std::size_t i = 0; i < N; ++i) {
            const double xdot = (1.0 - state_.s[i]) * Bp + state_.s[i] * Mp;
            double adv, fluxdiv;
            if (i == 0) {
                adv = xdot * (-3.0 * state_.v[0] + 4.0 * state_.v[1] - state_.v[2]) / (2.0 * h);
                fluxdiv = (-3.0 * Fu(0) + 4.0 * Fu(1) - Fu(2)) / (2.0 * h);
            } else {
                if (i + 2 <= N)
                    adv = xdot *
                          (-3.0 * state_.v[i] + 4.0 * state_.v[i + 1] - state_.v[i + 2]) /
                          (2.0 * h);
                else
                    adv = xdot * (state_.v[i + 1] - state_.v[i]) / h;
                fluxdiv = (Fu(i + 1) - Fu(i - 1)) / (2.0 * h);
            }
            v_new[i] = state_.v[i] + dth * (adv + fluxdiv);
            if (!(v_new[i] > 0.0)) positive = false;
        }
        v_new[N] = v_right_;
        if (positive) break;
        dt *= 0.5;
        if (attempt >= 20)
            throw numerical_error("Simulation::step: positivity loss persisted through "
                                  "time-step halving",
                                  dt);
    }

    // ---- advance boundary curves, radii, and time ----
    const double v0_old = state_.v[0];
    state_.u = std::move(u_new);
    state_.v = std::move(v_new);
    state_.t += dt;
    state_.B += dt * ub_abs * 0.5 * (1.0 / v0_old + 1.0 / state_.v[0]);
    state_.M = map_.M0 + map_.rho1 * ub_abs * state_.t;
    state_.u.front() = params_.u_b;
    state_.u.back() = u_right_;
    state_.v.back() = v_right_;
    state_.r = radius_R_all(state_.x_nodes(), state_.v, n);

    StepAccumulators rate_after;
    compute_dissipation_rates(rate_after);
    acc_.visc += 0.5 * dt * (rate_before.visc + rate_after.visc);
    acc_.visc_full += 0.5 * dt * (rate_before.visc_full + rate_after.visc_full);
    acc_.bdry += 0.5 * dt * (rate_before.bdry + rate_after.bdry);
    acc_.sink_psi += 0.5 * dt * (rate_before.sink_psi + rate_after.sink_psi);
    acc_.sink_G += 0.5 * dt * (rate_before.sink_G + rate_after.sink_G);
    acc_.gamma_term += 0.5 * dt * (rate_before.gamma_term + rate_after.gamma_term);
    acc_.du_term += 0.5 * dt * (rate_before.du_term + rate_after.du_term);
    acc_.cross += 0.5 * dt * (rate_before.cross + rate_after.cross);
    return dt;
}

Trajectory evolve(Simulation& sim, double t_end, const SnapshotHook& hook) {
    if (t_end < sim.state().t)
        throw std::invalid_argument("evolve: t_end must be >= current time");
    Trajectory traj;
    traj.snapshots.push_back(sim.state());
    if (hook) hook(sim.state());
    if (t_end == sim.state().t) return traj;

    const SolverConfig& cfg = sim.config();
    const double t0 = sim.state().t;
    sim.reset_accumulators();

    auto reached = [](double t, double target) {
        return target - t <= 1e-13 * std::max(1.0, std::abs(target));
    };

    if (cfg.snapshot_stride > 0) {
        int k = 0;
        while (!reached(sim.state().t, t_end)) {
            sim.step(t_end);
            if (++k % cfg.snapshot_stride == 0 || reached(sim.state().t, t_end)) {
                traj.snapshots.push_back(sim.state());
                traj.interval_integrals.push_back(sim.accumulated());
                sim.reset_accumulators();
                if (hook) hook(sim.state());
            }
        }
        return traj;
    }

    const int count = cfg.snapshots;
    for (int k = 1; k < count; ++k) {
        const double target = t0 + (t_end - t0) * static_cast<double>(k) / (count - 1);
        while (!reached(sim.state().t, target)) sim.step(target);
        traj.snapshots.push_back(sim.state());
        traj.interval_integrals.push_back(sim.accumulated());
        sim.reset_accumulators();
        if (hook) hook(sim.state());
    }
    return traj;
}

} // namespace outflow
