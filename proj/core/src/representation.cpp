#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "outflow/cutoffs.hpp"
#include "outflow/diagnostics.hpp"
#include "outflow/energy.hpp"
#include "outflow/errors.hpp"

namespace outflow {

namespace {

double pow_int(double x, int e) {
    double out = 1.0;
    for (int k = 0; k < e; ++k) out *= x;
    return out;
}

// integral of g(y) * w(y) over [a, b] with g linear per cell and w any
// (piecewise) smooth weight; Simpson per subcell is exact once both are
// locally polynomial of degree <= 2
template <class W>
double weighted_partial_trapz(const std::vector<double>& x, const std::vector<double>& g,
                              double a, double b, W&& w) {
    if (b <= a) return 0.0;
    double acc = 0.0;
    for (std::size_t j = 0; j + 1 < x.size(); ++j) {
        const double lo = std::max(a, x[j]);
        const double hi = std::min(b, x[j + 1]);
        if (hi <= lo) continue;
        auto gv = [&](double y) {
            const double t = (y - x[j]) / (x[j + 1] - x[j]);
            return (1.0 - t) * g[j] + t * g[j + 1];
        };
        const double mid = 0.5 * (lo + hi);
        acc += (hi - lo) / 6.0 *
               (gv(lo) * w(lo) + 4.0 * gv(mid) * w(mid) + gv(hi) * w(hi));
    }
    return acc;
}

struct SnapshotFields {
    const LagrangianState* snap;
    std::vector<double> x;          // mass nodes
    std::vector<double> psi_over_r; // psi / r^{n-1} - f(r)
    std::vector<double> psi_sq_r;   // psi^2 / r^n
    std::vector<double> ut_sq_r;    // u~(r)^2 / r^n
    std::vector<double> v_neg_gamma;
    std::vector<double> log_v;
    MonotoneCubic v_interp;
};

// plain partial trapezoid of the v^-gamma field over a mass window
double trapzWindow(const SnapshotFields& f, double lo, double hi);

SnapshotFields make_fields(const LagrangianState& s, const StationaryProfile& profile,
                           const Params& params, const FWeight& fw) {
    SnapshotFields out;
    out.snap = &s;
    out.x = s.x_nodes();
    const std::size_t m = s.size();
    const int n = params.n;
    const PerturbationFields f = perturbations(s, profile);
    out.psi_over_r.resize(m);
    out.psi_sq_r.resize(m);
    out.ut_sq_r.resize(m);
    out.v_neg_gamma.resize(m);
    out.log_v.resize(m);
    for (std::size_t i = 0; i < m; ++i) {
        const double r = s.r[i];
        const double rn1 = pow_int(r, n - 1);
        const double rho_t = profile.rho_interp(r);
        const double ut = profile.flux / (rn1 * rho_t);
        out.psi_over_r[i] = f.psi[i] / rn1 - fw(r);
        out.psi_sq_r[i] = f.psi[i] * f.psi[i] / (rn1 * r);
        out.ut_sq_r[i] = ut * ut / (rn1 * r);
        out.v_neg_gamma[i] = std::pow(s.v[i], -params.gamma);
        out.log_v[i] = std::log(s.v[i]);
    }
    out.v_interp = MonotoneCubic(out.x, s.v);
    return out;
}

double trapzWindow(const SnapshotFields& f, double lo, double hi) {
    return weighted_partial_trapz(f.x, f.v_neg_gamma, lo, hi, [](double) { return 1.0; });
}

} // namespace

RepresentationResult representation_check(const Trajectory& traj, double x, double t,
                                          const StationaryProfile& profile,
                                          const Params& params,
                                          RepresentationVariant variant) {
    const std::vector<LagrangianState>& snaps = traj.snapshots;
    if (snaps.size() < 3)
        throw numerical_error("representation_check: too few snapshots for time quadrature");

    // locate the final snapshot
    std::size_t T = snaps.size();
    for (std::size_t k = 0; k < snaps.size(); ++k)
        if (std::abs(snaps[k].t - t) <= 1e-9 * std::max(1.0, t)) T = k;
    if (T == snaps.size())
        throw std::invalid_argument("representation_check: t is not a snapshot time");
    const LagrangianState& fin = snaps[T];
    if (T < 2)
        throw numerical_error("representation_check: too few snapshots before t");
    const double M0 = snaps.front().M;
    const double gamma = params.gamma;
    const double Kg_mu = params.K * gamma / params.mu;
    const double cW = (params.n - 1) * gamma / params.mu;

    RepresentationResult result;
    const FWeight fw(profile);

    // per-snapshot field caches up to T
    std::vector<SnapshotFields> fields;
    fields.reserve(T + 1);
    for (std::size_t k = 0; k <= T; ++k)
        fields.push_back(make_fields(snaps[k], profile, params, fw));

    auto v0_at = [&](double y) { return fields[0].v_interp(y); };

    if (variant == RepresentationVariant::Interior) {
        if (!(x >= fin.B && x <= M0 - 2.0))
            throw std::invalid_argument("representation_check: x outside the interior region");
        int k = static_cast<int>(std::ceil(x - fin.B));
        k = std::max(k, 1);
        if (!(x >= fin.B + k - 1 && x <= fin.B + k))
            throw std::invalid_argument("representation_check: no admissible window index");
        const double w_lo = fin.B + k, w_hi = fin.B + k + 1;
        auto zeta = [&](double y) { return zeta_cut(y, k, fin.B); };

        // time-cumulative exponents at each snapshot time
        std::vector<double> expV(T + 1, 0.0), expW(T + 1, 0.0), expPsiSq(T + 1, 0.0);
        std::vector<double> d_boundary(T + 1, 0.0), logvol(T + 1, 0.0);
        std::vector<double> rateV(T + 1), rateW(T + 1), ratePsi(T + 1);
        for (std::size_t j = 0; j <= T; ++j) {
            const SnapshotFields& f = fields[j];
            rateV[j] = trapzWindow(f, w_lo, w_hi);
            rateW[j] = weighted_partial_trapz(f.x, f.ut_sq_r, x, M0, zeta);
            ratePsi[j] = weighted_partial_trapz(f.x, f.psi_sq_r, x, M0, zeta);
            d_boundary[j] = weighted_partial_trapz(f.x, f.psi_over_r, x, M0, zeta);
            // log-volume window term: log(v(y,tau) / v0(y)) over the window
            std::vector<double> lg(f.x.size());
            for (std::size_t i = 0; i < f.x.size(); ++i) {
                const double y = f.x[i];
                const double inside = (y >= fields[0].x.front() && y <= fields[0].x.back())
                                          ? std::log(v0_at(y))
                                          : f.log_v[i];
                lg[i] = f.log_v[i] - inside;
            }
            logvol[j] = weighted_partial_trapz(f.x, lg, w_lo, w_hi, [](double) { return 1.0; });
        }
        for (std::size_t j = 1; j <= T; ++j) {
            const double dt = snaps[j].t - snaps[j - 1].t;
            expV[j] = expV[j - 1] + 0.5 * dt * (rateV[j] + rateV[j - 1]);
            expW[j] = expW[j - 1] + 0.5 * dt * (rateW[j] + rateW[j - 1]);
            expPsiSq[j] = expPsiSq[j - 1] + 0.5 * dt * (ratePsi[j] + ratePsi[j - 1]);
        }
        const double v0x = v0_at(x);
        std::vector<double> N(T + 1);
        for (std::size_t j = 0; j <= T; ++j) {
            const double V1 = std::exp(Kg_mu * expV[j]);
            const double W1 = std::exp(-cW * expW[j]);
            const double D1 = std::exp(gamma / params.mu * (d_boundary[j] - d_boundary[0]) +
                                       cW * expPsiSq[j] - gamma * logvol[j]);
            N[j] = std::pow(v0x, -gamma) * V1 * W1 * D1;
        }
        double intN = 0.0;
        for (std::size_t j = 1; j <= T; ++j)
            intN += 0.5 * (snaps[j].t - snaps[j - 1].t) * (N[j] + N[j - 1]);
        const double v_gamma = (1.0 + Kg_mu * intN) / N[T];
        result.v_reconstructed = std::pow(v_gamma, 1.0 / gamma);
        result.window_index = k;
    } else if (variant == RepresentationVariant::Outer) {
        if (!(x >= M0 && x <= fin.M))
            throw std::invalid_argument("representation_check: x outside the outer region");
        const double ub_abs = std::abs(params.u_b);
        if (!(ub_abs > 0.0))
            throw std::invalid_argument("representation_check: outer region empty at u_b = 0");
        const double t_x = (x - M0) / (profile.rho1 * ub_abs);
        if (!(t_x < t))
            throw std::invalid_argument("representation_check: entry time at or after t");
        int k = static_cast<int>(std::ceil(fin.M - x));
        k = std::max(k, 1);
        if (!(x >= fin.M - k && x <= fin.M - k + 1))
            throw std::invalid_argument("representation_check: no admissible window index");
        auto xi = [&](double y) { return xi_cut(y, k, fin.M); };
        const double w_lo = fin.M - k - 1, w_hi = fin.M - k;
        // first snapshot index at or after t_x
        std::size_t j0 = 0;
        while (j0 <= T && snaps[j0].t < t_x) ++j0;
        if (j0 + 1 >= T)
            throw numerical_error("representation_check: too few snapshots past the entry time");

        const double v_entry = 1.0 / profile.rho_interp(snaps.front().r.back());
        std::vector<double> expV(T + 1, 0.0), expW(T + 1, 0.0), expPsiSq(T + 1, 0.0);
        std::vector<double> d_boundary(T + 1, 0.0), logvol(T + 1, 0.0);
        std::vector<double> rateV(T + 1, 0.0), rateW(T + 1, 0.0), ratePsi(T + 1, 0.0);
        for (std::size_t j = j0; j <= T; ++j) {
            const SnapshotFields& f = fields[j];
            const double lo = std::max(w_lo, f.x.front());
            rateV[j] = trapzWindow(f, lo, w_hi);
            rateW[j] = weighted_partial_trapz(f.x, f.ut_sq_r, f.x.front(), x, xi);
            ratePsi[j] = weighted_partial_trapz(f.x, f.psi_sq_r, f.x.front(), x, xi);
            d_boundary[j] = weighted_partial_trapz(f.x, f.psi_over_r, f.x.front(), x, xi);
            std::vector<double> lg(f.x.size());
            // log(v(y,tau) / v(y,t_x)): approximate the entry field by the
            // first stored snapshot past t_x
            const SnapshotFields& fe = fields[j0];
            for (std::size_t i = 0; i < f.x.size(); ++i) {
                const double y = f.x[i];
                double lv_entry;
                if (y >= fe.x.front() && y <= fe.x.back())
                    lv_entry = std::log(fe.v_interp(y));
                else
                    lv_entry = std::log(v_entry);
                lg[i] = f.log_v[i] - lv_entry;
            }
            logvol[j] = weighted_partial_trapz(f.x, lg, lo, w_hi, [](double) { return 1.0; });
        }
        for (std::size_t j = std::max(j0 + 1, std::size_t(1)); j <= T; ++j) {
            const double dt = snaps[j].t - snaps[j - 1].t;
            expV[j] = expV[j - 1] + 0.5 * dt * (rateV[j] + rateV[j - 1]);
            expW[j] = expW[j - 1] + 0.5 * dt * (rateW[j] + rateW[j - 1]);
            expPsiSq[j] = expPsiSq[j - 1] + 0.5 * dt * (ratePsi[j] + ratePsi[j - 1]);
        }
        const double vtm = 1.0 / profile.rho_interp(snaps.front().r.back());
        std::vector<double> N(T + 1, 0.0);
        for (std::size_t j = j0; j <= T; ++j) {
            const double V2 = std::exp(Kg_mu * expV[j]);
            const double W2 = std::exp(cW * expW[j]);
            const double D2 = std::exp(gamma / params.mu * (d_boundary[j0] - d_boundary[j]) -
                                       cW * expPsiSq[j] - gamma * logvol[j]);
            N[j] = std::pow(vtm, -gamma) * V2 * W2 * D2;
        }
        double intN = 0.0;
        for (std::size_t j = j0 + 1; j <= T; ++j)
            intN += 0.5 * (snaps[j].t - snaps[j - 1].t) * (N[j] + N[j - 1]);
        const double v_gamma = (1.0 + Kg_mu * intN) / N[T];
        result.v_reconstructed = std::pow(v_gamma, 1.0 / gamma);
        result.window_index = k;
    } else {
        if (!(x > M0 - 2.0 && x < M0))
            throw std::invalid_argument("representation_check: x outside the near-M0 region");
        // N3 = v0(x)^-gamma v0(M0)^gamma v(M0,tau)^-gamma
        //      exp(Kg/mu int v(M0)^-gamma - cW int int ut^2/r^n) D3
        std::vector<double> expVM(T + 1, 0.0), expW(T + 1, 0.0), expPsiSq(T + 1, 0.0);
        std::vector<double> d_boundary(T + 1, 0.0), vM(T + 1, 0.0);
        std::vector<double> rateW(T + 1), ratePsi(T + 1);
        for (std::size_t j = 0; j <= T; ++j) {
            const SnapshotFields& f = fields[j];
            vM[j] = f.v_interp(std::min(M0, f.x.back()));
            rateW[j] = weighted_partial_trapz(f.x, f.ut_sq_r, x, M0, [](double) { return 1.0; });
            ratePsi[j] = weighted_partial_trapz(f.x, f.psi_sq_r, x, M0, [](double) { return 1.0; });
            d_boundary[j] =
                weighted_partial_trapz(f.x, f.psi_over_r, x, M0, [](double) { return 1.0; });
        }
        for (std::size_t j = 1; j <= T; ++j) {
            const double dt = snaps[j].t - snaps[j - 1].t;
            expVM[j] = expVM[j - 1] +
                       0.5 * dt * (std::pow(vM[j], -gamma) + std::pow(vM[j - 1], -gamma));
            expW[j] = expW[j - 1] + 0.5 * dt * (rateW[j] + rateW[j - 1]);
            expPsiSq[j] = expPsiSq[j - 1] + 0.5 * dt * (ratePsi[j] + ratePsi[j - 1]);
        }
        const double v0x = v0_at(x);
        const double v0M = fields[0].v_interp(M0);
        std::vector<double> N(T + 1);
        for (std::size_t j = 0; j <= T; ++j) {
            const double D3 = std::exp(gamma / params.mu * (d_boundary[j] - d_boundary[0]) +
                                       cW * expPsiSq[j]);
            const double A3 = std::exp(Kg_mu * expVM[j] - cW * expW[j]);
            N[j] = std::pow(v0x, -gamma) * std::pow(v0M, gamma) * std::pow(vM[j], -gamma) *
                   A3 * D3;
        }
        double intN = 0.0;
        for (std::size_t j = 1; j <= T; ++j)
            intN += 0.5 * (snaps[j].t - snaps[j - 1].t) * (N[j] + N[j - 1]);
        const double v_gamma = (1.0 + Kg_mu * intN) / N[T];
        result.v_reconstructed = std::pow(v_gamma, 1.0 / gamma);
        result.window_index = 0;
    }

    result.v_solver = fields[T].v_interp(x);
    result.rel_error =
        std::abs(result.v_reconstructed - result.v_solver) / std::abs(result.v_solver);
    return result;
}

} // namespace outflow
