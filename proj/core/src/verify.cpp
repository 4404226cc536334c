#include "outflow/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "outflow/cutoffs.hpp"
#include "outflow/energy.hpp"
#include "outflow/rng.hpp"

namespace outflow {

namespace {

constexpr double kGammas[3] = {1.0, 1.5, 2.0};

VerifyCheck check_phiG(const RunSpec& spec) {
    VerifyCheck c{"prop_phiG_branches", 0, true, std::numeric_limits<double>::infinity()};
    Params p = spec.params;
    for (double gamma : kGammas) {
        p.gamma = gamma;
        CounterRng rng(spec.seed ^ 0x11100u ^ static_cast<std::uint64_t>(gamma * 4));
        for (int i = 0; i < spec.verify.samples_box; ++i) {
            const double v = rng.uniform(0.1, 10.0);
            const double vt = rng.uniform(0.1, 10.0);
            const PhiGRecord rec = check_phiG_bound(v, vt, p);
            const double margin = (rec.rhs - rec.lhs) / std::max(rec.rhs, 1e-300);
            c.worst = std::min(c.worst, margin);
            if (!rec.holds) c.pass = false;
            ++c.samples;
        }
    }
    return c;
}

VerifyCheck check_G_agreement(const RunSpec& spec) {
    VerifyCheck c{"G_closed_vs_quadrature", 0, true, 0.0};
    Params p = spec.params;
    for (double gamma : kGammas) {
        p.gamma = gamma;
        CounterRng rng(spec.seed ^ 0x22200u ^ static_cast<std::uint64_t>(gamma * 4));
        for (int i = 0; i < spec.verify.samples_box; ++i) {
            const double v = rng.uniform(0.1, 10.0);
            const double vt = rng.uniform(0.1, 10.0);
            const double closed = energy_distance_G(v, vt, p, EnergyMode::ClosedForm);
            const double quad = energy_distance_G(v, vt, p, EnergyMode::Quadrature, 1e-12);
            const double denom = std::max({std::abs(closed), std::abs(quad), 1e-12});
            const double rel = std::abs(closed - quad) / denom;
            c.worst = std::max(c.worst, rel);
            if (rel > 1e-8) c.pass = false;
            ++c.samples;
        }
    }
    return c;
}

VerifyCheck check_G_positivity(const RunSpec& spec) {
    VerifyCheck c{"G_nonnegative_diagonal", 0, true, 0.0};
    Params p = spec.params;
    for (double gamma : kGammas) {
        p.gamma = gamma;
        CounterRng rng(spec.seed ^ 0x33300u ^ static_cast<std::uint64_t>(gamma * 4));
        for (int i = 0; i < spec.verify.samples_box; ++i) {
            const double v = rng.uniform(0.1, 10.0);
            const double vt = rng.uniform(0.1, 10.0);
            const double G = energy_distance_G(v, vt, p);
            if (G < 0.0) c.pass = false;
            if (energy_distance_G(v, v, p) != 0.0) c.pass = false;
            if (std::abs(v - vt) > 1e-6 * vt && !(G > 0.0)) c.pass = false;
            ++c.samples;
        }
    }
    return c;
}

VerifyCheck check_g_bound(const RunSpec& spec) {
    VerifyCheck c{"g_log_lower_bound", 0, true, std::numeric_limits<double>::infinity()};
    for (double gamma : kGammas) {
        CounterRng rng(spec.seed ^ 0x44400u ^ static_cast<std::uint64_t>(gamma * 4));
        for (int i = 0; i < spec.verify.samples_g; ++i) {
            const double s = rng.uniform(0.0, 100.0) + 1e-6; // (0, 100]
            const double g = normalized_g(s, gamma);
            const double bound = s - 1.0 - std::log(s);
            c.worst = std::min(c.worst, g - bound);
            if (!(g >= bound)) c.pass = false;
            ++c.samples;
        }
    }
    return c;
}

VerifyCheck check_H(const RunSpec& spec) {
    VerifyCheck c{"H_matches_rho_G", 0, true, 0.0};
    Params p = spec.params;
    for (double gamma : kGammas) {
        p.gamma = gamma;
        CounterRng rng(spec.seed ^ 0x55500u ^ static_cast<std::uint64_t>(gamma * 4));
        for (int i = 0; i < spec.verify.samples_box; ++i) {
            const double rho = rng.uniform(0.1, 10.0);
            const double sigma = rng.uniform(0.1, 10.0);
            const double H = relative_entropy_H(rho, sigma, p);
            const double ref = rho * energy_distance_G(1.0 / rho, 1.0 / sigma, p);
            const double rel = std::abs(H - ref) / std::max({std::abs(ref), 1e-12});
            c.worst = std::max(c.worst, rel);
            if (rel > 1e-8) c.pass = false;
            ++c.samples;
        }
    }
    return c;
}

VerifyCheck check_convexity(const RunSpec& spec) {
    VerifyCheck c{"G_midpoint_convexity", 0, true, std::numeric_limits<double>::infinity()};
    Params p = spec.params;
    for (double gamma : kGammas) {
        p.gamma = gamma;
        CounterRng rng(spec.seed ^ 0x66600u ^ static_cast<std::uint64_t>(gamma * 4));
        for (int i = 0; i < spec.verify.samples_g; ++i) {
            const double vt = rng.uniform(0.1, 10.0);
            const double v = rng.uniform(0.2, 9.0);
            const double d = rng.uniform(0.0, std::min(v - 0.1, 10.0 - v));
            const double mid = energy_distance_G(v, vt, p);
            const double avg = 0.5 * (energy_distance_G(v - d, vt, p) +
                                      energy_distance_G(v + d, vt, p));
            const double slack = 1e-12 * (1.0 + std::abs(avg));
            c.worst = std::min(c.worst, avg - mid + slack);
            if (!(mid <= avg + slack)) c.pass = false;
            ++c.samples;
        }
    }
    return c;
}

VerifyCheck check_eta_tilde(const RunSpec& spec) {
    VerifyCheck c{"eta_tilde_properties", 0, true, std::numeric_limits<double>::infinity()};
    CounterRng rng(spec.seed ^ 0x77700u);
    for (int i = 0; i < spec.verify.samples_eta; ++i) {
        const double y = rng.uniform(-2.0, 1.0);
        const double e = eta_tilde(y);
        const double ep = eta_tilde_derivative(y);
        if (!(e >= 0.0 && e <= 1.0)) c.pass = false;
        const double margin = 8.0 * e - ep * ep;
        c.worst = std::min(c.worst, margin);
        if (margin < -1e-12) c.pass = false;
        if ((y < -1.0 || y > 0.0) && ep != 0.0) c.pass = false;
        ++c.samples;
    }
    return c;
}

VerifyCheck check_zeta_xi(const RunSpec& spec) {
    VerifyCheck c{"zeta_xi_range_support", 0, true, 0.0};
    CounterRng rng(spec.seed ^ 0x88800u);
    for (int i = 0; i < spec.verify.samples_eta; ++i) {
        const int k = 1 + static_cast<int>(rng.uniform(0.0, 5.0));
        const double B = rng.uniform(0.0, 10.0);
        const double M = rng.uniform(20.0, 100.0);
        const double y = rng.uniform(0.0, 110.0);
        const double z = zeta_cut(y, k, B);
        const double zp = zeta_cut_derivative(y, k, B);
        if (!(z >= 0.0 && z <= 1.0)) c.pass = false;
        if (!(zp >= -1.0 && zp <= 0.0)) c.pass = false;
        const bool in_window = y > B + k && y < B + k + 1;
        if (in_window && zp != -1.0) c.pass = false;
        if (!in_window && zp != 0.0) c.pass = false;
        const double xv = xi_cut(y, k, M);
        const double xp = xi_cut_derivative(y, k, M);
        if (!(xv >= 0.0 && xv <= 1.0)) c.pass = false;
        if (!(xp >= 0.0 && xp <= 1.0)) c.pass = false;
        const bool in_xi = y > M - k - 1 && y < M - k;
        if (in_xi && xp != 1.0) c.pass = false;
        if (!in_xi && xp != 0.0) c.pass = false;
        ++c.samples;
    }
    return c;
}

VerifyCheck check_chi(const RunSpec& spec) {
    VerifyCheck c{"chi_range_gradient", 0, true, std::numeric_limits<double>::infinity()};
    CounterRng rng(spec.seed ^ 0x99900u);
    const double sqrt8 = std::sqrt(8.0);
    for (int i = 0; i < spec.verify.samples_eta; ++i) {
        const double r_ref = rng.uniform(2.0, 100.0);
        const double r = rng.uniform(1.0, 110.0);
        const double chi = eta_shifted(r, r_ref);
        const double dchi = eta_shifted_derivative(r, r_ref);
        if (!(chi >= 0.0 && chi <= 1.0)) c.pass = false;
        c.worst = std::min(c.worst, sqrt8 - std::abs(dchi));
        if (std::abs(dchi) > sqrt8 + 1e-12) c.pass = false;
        if (r <= r_ref - 1.0 && chi != 1.0) c.pass = false;
        if (r >= r_ref && chi != 0.0) c.pass = false;
        ++c.samples;
    }
    return c;
}

} // namespace

std::string VerifyReport::render() const {
    std::string out;
    for (const VerifyCheck& c : checks) {
        char buf[256];
        std::snprintf(buf, sizeof(buf), "%s %s samples=%ld worst=%.17g\n",
                      c.pass ? "PASS" : "FAIL", c.name.c_str(), c.samples, c.worst);
        out += buf;
    }
    out += all_pass ? "VERIFY PASS\n" : "VERIFY FAIL\n";
    return out;
}

VerifyReport run_verification(const RunSpec& spec) {
    VerifyReport rep;
    rep.checks.push_back(check_phiG(spec));
    rep.checks.push_back(check_G_agreement(spec));
    rep.checks.push_back(check_G_positivity(spec));
    rep.checks.push_back(check_g_bound(spec));
    rep.checks.push_back(check_H(spec));
    rep.checks.push_back(check_convexity(spec));
    rep.checks.push_back(check_eta_tilde(spec));
    rep.checks.push_back(check_zeta_xi(spec));
    rep.checks.push_back(check_chi(spec));
    rep.all_pass = true;
    for (const VerifyCheck& c : rep.checks)
        if (!c.pass) rep.all_pass = false;
    return rep;
}

} // namespace outflow
