#include "outflow/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "outflow/errors.hpp"

namespace outflow {

namespace {

struct OdeCoeffs {
    double a1, a2, a3;
    double da1_drho, da2_drho, da3_drho;
};

// Coefficients of rho'' + a1 rho'^2 + a2 rho' + a3 = 0 with the nonlocal
// boundary density frozen at rho1 (flux b = rho1 * u_b).
OdeCoeffs coeffs(double r, double rho, const Params& p, double rho1) {
    const double b = rho1 * p.u_b;
    const double rn1 = std::pow(r, p.n - 1.0);
    OdeCoeffs c{};
    c.a1 = -2.0 / rho;
    c.da1_drho = 2.0 / (rho * rho);
    const double gK = p.gamma * p.K;
    // rho^2 P'(rho) = gamma K rho^(gamma+1)
    c.a2 = gK * std::pow(rho, p.gamma + 1.0) * rn1 / (p.mu * b) - b / (p.mu * rn1) -
           (p.n - 1.0) / r;
    c.da2_drho = gK * (p.gamma + 1.0) * std::pow(rho, p.gamma) * rn1 / (p.mu * b);
    c.a3 = -(p.n - 1.0) * p.u_b * rho1 * rho / (p.mu * std::pow(r, static_cast<double>(p.n)));
    c.da3_drho = -(p.n - 1.0) * p.u_b * rho1 / (p.mu * std::pow(r, static_cast<double>(p.n)));
    return c;
}

// Phi(r, rho, q) = rho'' = -(a1 q^2 + a2 q + a3) and its partials.
struct PhiEval {
    double phi, dphi_drho, dphi_dq;
};
PhiEval phi_eval(double r, double rho, double q, const Params& p, double rho1) {
    const OdeCoeffs c = coeffs(r, rho, p, rho1);
    PhiEval e{};
    e.phi = -(c.a1 * q * q + c.a2 * q + c.a3);
    e.dphi_drho = -(c.da1_drho * q * q + c.da2_drho * q + c.da3_drho);
    e.dphi_dq = -(2.0 * c.a1 * q + c.a2);
    return e;
}

double far_field_slope(const Params& p, double rho1, double r_max) {
    const OdeCoeffs c = coeffs(r_max, p.rho_plus, p, rho1);
    return -c.a3 / c.a2;
}

// Leading-order far-field gap rho_plus - rho(r_max) from the dominant
// balance rho' = -a3/a2 integrated over [r_max, inf):
//   gap(R) = b^2 / (2 gamma K rho_plus^gamma) R^{2-2n}.
// Truncating with the plain Dirichlet value rho_plus would bend the tail
// and pollute the fitted decay exponents inside [r_max/5, 4 r_max/5].
double far_field_gap(const Params& p, double rho1, double r_max) {
    const double b = rho1 * p.u_b;
    return b * b / (2.0 * p.gamma * p.K * std::pow(p.rho_plus, p.gamma)) *
           std::pow(r_max, 2.0 - 2.0 * p.n);
}

std::vector<double> make_grid(double r_max, int N, double beta) {
    std::vector<double> r(N + 1);
    const double L = r_max - 1.0;
    const double denom = std::expm1(beta);
    for (int i = 0; i <= N; ++i) {
        const double s = static_cast<double>(i) / N;
        r[i] = 1.0 + L * std::expm1(beta * s) / denom;
    }
    r[0] = 1.0;
    r[N] = r_max;
    return r;
}

// Trapezoidal collocation of the first-order system (rho, q = rho') with
// both boundary conditions at the far end. Residual layout per interval i:
//   Fr_i = (rho_{i+1}-rho_i)/h - (q_i+q_{i+1})/2
//   Fq_i = (q_{i+1}-q_i)/h - (Phi_i+Phi_{i+1})/2
// plus rho_N = rho_plus and q_N = q_far. Because the boundary rows touch
// only node N, the Newton correction is obtained by one backward sweep of
// 2x2 solves; no global linear algebra is needed.
struct InnerResult {
    std::vector<double> rho, q;
    double residual;
};

double residual_norm(const std::vector<double>& r, const std::vector<double>& rho,
                     const std::vector<double>& q, const Params& p, double rho1,
                     double q_far, double rho_far) {
    const std::size_t N = r.size() - 1;
    double worst = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double h = r[i + 1] - r[i];
        const PhiEval e0 = phi_eval(r[i], rho[i], q[i], p, rho1);
        const PhiEval e1 = phi_eval(r[i + 1], rho[i + 1], q[i + 1], p, rho1);
        const double fr = (rho[i + 1] - rho[i]) / h - 0.5 * (q[i] + q[i + 1]);
        const double fq = (q[i + 1] - q[i]) / h - 0.5 * (e0.phi + e1.phi);
        worst = std::max(worst, std::abs(fr) / p.rho_plus);
        worst = std::max(worst, std::abs(fq) * h);
    }
    worst = std::max(worst, std::abs(rho[N] - p.rho_plus) / p.rho_plus);
    worst = std::max(worst, std::abs(q[N] - q_far));
    return worst;
}

InnerResult solve_inner(const std::vector<double>& r, const Params& p, double rho1,
                        std::vector<double> rho, std::vector<double> q, double tol,
                        int max_newton) {
    const std::size_t N = r.size() - 1;
    const double q_far = far_field_slope(p, rho1, r.back());

    double norm = residual_norm(r, rho, q, p, rho1, q_far);
    for (int it = 0; it < max_newton; ++it) {
        if (norm <= tol) break;
        // Backward sweep: delta y_N from the boundary rows, then each
        // interval pins delta y_i given delta y_{i+1}.
        std::vector<double> drho(N + 1), dq(N + 1);
        drho[N] = -(rho[N] - p.rho_plus);
        dq[N] = -(q[N] - q_far);
        for (std::size_t ii = N; ii-- > 0;) {
            const std::size_t i = ii;
            const double h = r[i + 1] - r[i];
            const PhiEval e0 = phi_eval(r[i], rho[i], q[i], p, rho1);
            const PhiEval e1 = phi_eval(r[i + 1], rho[i + 1], q[i + 1], p, rho1);
            const double fr = (rho[i + 1] - rho[i]) / h - 0.5 * (q[i] + q[i + 1]);
            const double fq = (q[i + 1] - q[i]) / h - 0.5 * (e0.phi + e1.phi);
            // A dyi = -F - B dy_{i+1}
            const double A00 = -1.0 / h, A01 = -0.5;
            const double A10 = -0.5 * e0.dphi_drho, A11 = -1.0 / h - 0.5 * e0.dphi_dq;
            const double B00 = 1.0 / h, B01 = -0.5;
            const double B10 = -0.5 * e1.dphi_drho, B11 = 1.0 / h - 0.5 * e1.dphi_dq;
            const double b0 = -fr - (B00 * drho[i + 1] + B01 * dq[i + 1]);
            const double b1 = -fq - (B10 * drho[i + 1] + B11 * dq[i + 1]);
            const double det = A00 * A11 - A01 * A10;
            if (det == 0.0 || !std::isfinite(det))
                throw numerical_error("stationary inner solve: singular 2x2 block", norm);
            drho[i] = (b0 * A11 - A01 * b1) / det;
            dq[i] = (A00 * b1 - b0 * A10) / det;
        }
        // Damped update: accept the largest step in {1, 1/2, ...} that both
        // keeps rho positive and reduces the residual.
        double lambda = 1.0;
        bool accepted = false;
        for (int ls = 0; ls < 30; ++ls) {
            std::vector<double> rho_try(N + 1), q_try(N + 1);
            bool positive = true;
            for (std::size_t i = 0; i <= N; ++i) {
                rho_try[i] = rho[i] + lambda * drho[i];
                q_try[i] = q[i] + lambda * dq[i];
                if (!(rho_try[i] > 0.0)) positive = false;
            }
            if (positive) {
                const double norm_try = residual_norm(r, rho_try, q_try, p, rho1, q_far);
                if (norm_try < norm * (1.0 - 0.25 * lambda) || norm_try < tol) {
                    rho.swap(rho_try);
                    q.swap(q_try);
                    norm = norm_try;
                    accepted = true;
                    break;
                }
            }
            lambda *= 0.5;
        }
        if (!accepted)
            throw numerical_error("stationary inner solve: damped Newton stalled", norm);
    }
    if (!(norm <= tol))
        throw numerical_error("stationary inner solve: Newton failed to reach tolerance", norm);
    return {std::move(rho), std::move(q), norm};
}

} // namespace

StationaryProfile solve_stationary(const Params& params, double r_max, double tol,
                                   const StationaryOptions& opt) {
    params.validate();
    if (!(r_max >= 10.0)) throw std::invalid_argument("solve_stationary: r_max must be >= 10");
    if (!(tol > 0.0)) throw std::invalid_argument("solve_stationary: tol must be > 0");
    if (opt.node_count < 32)
        throw std::invalid_argument("solve_stationary: need at least 32 nodes");

    StationaryProfile prof;
    prof.params = params;
    prof.r_nodes = make_grid(r_max, opt.node_count, opt.stretch);
    const std::size_t M = prof.r_nodes.size();

    if (params.u_b == 0.0) {
        // Zero flux: the system collapses to the constant solution.
        prof.rho_t.assign(M, params.rho_plus);
        prof.u_t.assign(M, 0.0);
        prof.drho.assign(M, 0.0);
        prof.du.assign(M, 0.0);
        prof.ddrho.assign(M, 0.0);
        prof.rho1 = params.rho_plus;
        prof.flux = 0.0;
        prof.ode_residual = 0.0;
    } else {
        std::vector<double> rho(M, params.rho_plus), q(M, 0.0);
        double rho1 = params.rho_plus;
        bool converged = false;
        double shift = 0.0;
        for (int outer = 0; outer < opt.max_outer; ++outer) {
            InnerResult inner =
                solve_inner(prof.r_nodes, params, rho1, rho, q, tol, opt.max_newton);
            rho = std::move(inner.rho);
            q = std::move(inner.q);
            shift = std::abs(rho[0] - rho1);
            rho1 = rho[0];
            if (shift <= 1e-14 * params.rho_plus) {
                converged = true;
                break;
            }
        }
        if (!converged)
            throw numerical_error(
                "solve_stationary: fixed point on the boundary density did not converge "
                "(|u_b| beyond the working regime)",
                shift);
        if (!(rho[0] > 0.0))
            throw numerical_error("solve_stationary: nonpositive boundary density", rho[0]);

        prof.rho1 = rho1;
        prof.flux = rho1 * params.u_b;
        prof.rho_t = std::move(rho);
        prof.drho = std::move(q);
        prof.u_t.resize(M);
        prof.du.resize(M);
        prof.ddrho.resize(M);
        const double b = prof.flux;
        for (std::size_t i = 0; i < M; ++i) {
            const double r = prof.r_nodes[i];
            const double rn1 = std::pow(r, params.n - 1.0);
            const double rho_i = prof.rho_t[i];
            prof.u_t[i] = b / (rn1 * rho_i);
            prof.du[i] = -b * ((params.n - 1.0) / (rn1 * r * rho_i) +
                               prof.drho[i] / (rn1 * rho_i * rho_i));
            const PhiEval e = phi_eval(r, rho_i, prof.drho[i], params, prof.rho1);
            prof.ddrho[i] = e.phi;
        }
        // Discretization-level residual: independent centered second
        // differences of the stored density plugged into the ODE.
        double worst = 0.0;
        for (std::size_t i = 1; i + 1 < M; ++i) {
            const double hm = prof.r_nodes[i] - prof.r_nodes[i - 1];
            const double hp = prof.r_nodes[i + 1] - prof.r_nodes[i];
            const double d1 = (hm * hm * prof.rho_t[i + 1] +
                               (hp * hp - hm * hm) * prof.rho_t[i] -
                               hp * hp * prof.rho_t[i - 1]) /
                              (hm * hp * (hm + hp));
            const double d2 = 2.0 * (hm * prof.rho_t[i + 1] - (hm + hp) * prof.rho_t[i] +
                                     hp * prof.rho_t[i - 1]) /
                              (hm * hp * (hm + hp));
            const OdeCoeffs c = coeffs(prof.r_nodes[i], prof.rho_t[i], params, prof.rho1);
            const double res = d2 + c.a1 * d1 * d1 + c.a2 * d1 + c.a3;
            worst = std::max(worst, std::abs(res) / (1.0 + std::abs(c.a3)));
        }
        prof.ode_residual = worst;
    }

    prof.rho_interp = MonotoneCubic(prof.r_nodes, prof.rho_t);
    prof.u_interp = MonotoneCubic(prof.r_nodes, prof.u_t);
    prof.drho_interp = MonotoneCubic(prof.r_nodes, prof.drho);
    prof.du_interp = MonotoneCubic(prof.r_nodes, prof.du);
    prof.ddrho_interp = MonotoneCubic(prof.r_nodes, prof.ddrho);
    return prof;
}

StationarySample sample_profile(const StationaryProfile& profile, double r) {
    if (!(r >= 1.0 && r <= profile.r_max()))
        throw std::out_of_range("sample_profile: radius outside [1, r_max]");
    return {profile.rho_interp(r), profile.u_interp(r), profile.drho_interp(r),
            profile.du_interp(r), profile.ddrho_interp(r)};
}

namespace {
// Least-squares slope of log(y) against log(r) over index range [lo, hi].
double loglog_slope(const std::vector<double>& r, const std::vector<double>& y,
                    std::size_t lo, std::size_t hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t count = 0;
    for (std::size_t i = lo; i <= hi; ++i) {
        if (!(y[i] > 0.0)) continue;
        const double lx = std::log(r[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++count;
    }
    if (count < 2) return std::numeric_limits<double>::quiet_NaN();
    return (count * sxy - sx * sy) / (count * sxx - sx * sx);
}
} // namespace

DecayReport stationary_report(const StationaryProfile& profile) {
    const Params& p = profile.params;
    const std::vector<double>& r = profile.r_nodes;
    const std::size_t M = r.size();
    const double r_max = profile.r_max();
    const double w_lo = r_max / 5.0, w_hi = 4.0 * r_max / 5.0;

    std::size_t lo = M, hi = 0;
    for (std::size_t i = 0; i < M; ++i) {
        if (r[i] >= w_lo && r[i] <= w_hi) {
            lo = std::min(lo, i);
            hi = std::max(hi, i);
        }
    }
    if (lo >= hi || hi - lo + 1 < 20)
        throw std::invalid_argument("stationary_report: fit window holds fewer than 20 nodes");

    DecayReport rep;
    rep.rho_increasing = true;
    rep.u_r_positive = true;
    for (std::size_t i = 0; i + 1 < M; ++i)
        if (!(profile.rho_t[i + 1] > profile.rho_t[i])) rep.rho_increasing = false;
    for (std::size_t i = 1; i + 1 < M; ++i)
        if (!(profile.du[i] > 0.0)) rep.u_r_positive = false;

    double flux_dev = 0.0, udef_dev = 0.0;
    if (profile.params.u_b != 0.0) {
        for (std::size_t i = 0; i < M; ++i) {
            const double rn1 = std::pow(r[i], p.n - 1.0);
            const double flux_i = rn1 * profile.rho_t[i] * profile.u_t[i];
            flux_dev = std::max(flux_dev, std::abs(flux_i - profile.flux) /
                                              std::abs(profile.flux));
            const double u_def = profile.flux / (rn1 * profile.rho_t[i]);
            udef_dev = std::max(udef_dev, std::abs(profile.u_t[i] - u_def) /
                                              std::max(std::abs(u_def), 1e-300));
        }
    }
    rep.flux_rel_deviation = flux_dev;
    rep.max_udef_rel_deviation = udef_dev;

    if (profile.params.u_b == 0.0) {
        rep.slopes_defined = false; // constant profile: all deviations are 0
        return rep;
    }

    std::vector<double> gap(M), ddabs(M);
    for (std::size_t i = 0; i < M; ++i) {
        gap[i] = p.rho_plus - profile.rho_t[i];
        ddabs[i] = std::abs(profile.ddrho[i]);
    }
    rep.slopes_defined = true;
    rep.slope_rho_gap = loglog_slope(r, gap, lo, hi);
    rep.slope_drho = loglog_slope(r, profile.drho, lo, hi);
    rep.slope_du = loglog_slope(r, profile.du, lo, hi);
    rep.slope_ddrho = loglog_slope(r, ddabs, lo, hi);
    return rep;
}

void export_profile_csv(const StationaryProfile& profile, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("export_profile_csv: cannot open " + path);
    out << "r,rho_t,u_t,drho,du,ddrho\n";
    char buf[512];
    for (std::size_t i = 0; i < profile.r_nodes.size(); ++i) {
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g\n",
                      profile.r_nodes[i], profile.rho_t[i], profile.u_t[i], profile.drho[i],
                      profile.du[i], profile.ddrho[i]);
        out << buf;
    }
    if (!out) throw std::runtime_error("export_profile_csv: write failure on " + path);
}

} // namespace outflow
