#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <functional>

#include "outflow/cutoffs.hpp"
#include "outflow/energy.hpp"
#include "outflow/quadrature.hpp"
#include "outflow/rng.hpp"

using namespace outflow;

namespace {

// Independent oracle for the defining integrals: adaptive Simpson, written
// without reference to the Gauss-Kronrod implementation path.
double simpson_rec(const std::function<double(double)>& f, double a, double b, double fa,
                   double fm, double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double simpson(const std::function<double(double)>& f, double a, double b,
               double tol = 1e-12) {
    if (a == b) return 0.0;
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

double oracle_G(double v, double vt, double K, double gamma) {
    const double pvt = K * std::pow(vt, -gamma);
    return simpson([&](double z) { return (K * std::pow(z, gamma) - pvt) / (z * z); },
                   1.0 / vt, 1.0 / v);
}

Params params_with(double gamma, double K = 1.0) {
    Params p;
    p.gamma = gamma;
    p.K = K;
    return p;
}

} // namespace

TEST_CASE("pressure laws") {
    CHECK(pressure_eulerian(1.0, params_with(1.4)) == doctest::Approx(1.0));
    CHECK(pressure_eulerian(3.0, params_with(1.0, 2.0)) == doctest::Approx(6.0));
    CHECK(pressure_eulerian(0.5, params_with(2.0)) == doctest::Approx(0.25));
    CHECK(pressure_lagrangian(1.0, params_with(1.4)) == doctest::Approx(1.0));
    CHECK(pressure_lagrangian(2.0, params_with(1.0)) == doctest::Approx(0.5));
    CHECK(pressure_lagrangian(0.5, params_with(2.0, 3.0)) == doctest::Approx(12.0));
    CHECK_THROWS_AS(pressure_eulerian(0.0, params_with(1.4)), std::domain_error);
    CHECK_THROWS_AS(pressure_lagrangian(-1.0, params_with(1.4)), std::domain_error);

    // duality p(v) = P(1/v)
    for (double v : {0.3, 1.0, 2.5}) {
        const Params p = params_with(1.7, 0.8);
        CHECK(pressure_lagrangian(v, p) ==
              doctest::Approx(pressure_eulerian(1.0 / v, p)).epsilon(1e-14));
    }
}

TEST_CASE("energy distance G: frozen oracle values and closed forms") {
    // oracle values computed from the defining integral (adaptive Simpson):
    // G(2,1; K=1, gamma=1)  = 1 - ln 2
    // G(2,1; K=1, gamma=2)  = 1/2
    CHECK(energy_distance_G(2.0, 1.0, params_with(1.0)) ==
          doctest::Approx(0.30685281944005469).epsilon(1e-12));
    CHECK(energy_distance_G(2.0, 1.0, params_with(2.0)) ==
          doctest::Approx(0.5).epsilon(1e-12));
    CHECK(energy_distance_G(5.0, 5.0, params_with(1.4)) == 0.0);
    CHECK_THROWS_AS(energy_distance_G(-1.0, 1.0, params_with(1.4)), std::domain_error);

    // closed form versus the independent Simpson oracle across the box
    CounterRng rng(7);
    for (int i = 0; i < 400; ++i) {
        const double gamma = (i % 3 == 0) ? 1.0 : (i % 3 == 1 ? 1.5 : 2.0);
        const double v = rng.uniform(0.1, 10.0);
        const double vt = rng.uniform(0.1, 10.0);
        const Params p = params_with(gamma);
        const double closed = energy_distance_G(v, vt, p);
        const double ref = oracle_G(v, vt, 1.0, gamma);
        CHECK(closed == doctest::Approx(ref).epsilon(1e-8));
        CHECK(closed >= 0.0);
    }
}

TEST_CASE("normalized g and the factorization G = vt p(vt) g(v/vt)") {
    CHECK(normalized_g(1.0, 1.7) == 0.0);
    CHECK(normalized_g(2.0, 1.0) == doctest::Approx(0.30685281944005469).epsilon(1e-12));
    CHECK(normalized_g(2.0, 2.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(normalized_g(0.0, 1.5), std::domain_error);

    CounterRng rng(11);
    for (int i = 0; i < 300; ++i) {
        const double gamma = (i % 3 == 0) ? 1.0 : (i % 3 == 1 ? 1.5 : 2.0);
        const double s = rng.uniform(0.01, 50.0);
        // quadrature oracle of s - 1 - int_1^s eta^-gamma
        const double ref =
            s - 1.0 - simpson([&](double e) { return std::pow(e, -gamma); }, 1.0, s);
        CHECK(normalized_g(s, gamma) == doctest::Approx(ref).epsilon(1e-9));
        // lower bound g(s) >= s - 1 - log s as a plain numeric comparison
        CHECK(normalized_g(s, gamma) >= s - 1.0 - std::log(s));

        const double vt = rng.uniform(0.1, 5.0);
        const double v = s * vt;
        const Params p = params_with(gamma, 1.3);
        const double lhs = energy_distance_G(v, vt, p);
        const double rhs = vt * pressure_lagrangian(vt, p) * normalized_g(s, gamma);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("energy density") {
    CHECK(energy_density(0.7, 0.7, 2.0, 2.0, params_with(1.4)) == 0.0);
    CHECK(energy_density(1.0, 0.0, 3.0, 3.0, params_with(1.4)) == doctest::Approx(0.5));
    CHECK(energy_density(0.0, 0.0, 2.0, 1.0, params_with(1.0)) ==
          doctest::Approx(0.30685281944005469).epsilon(1e-12));
}

TEST_CASE("relative entropy H") {
    CHECK(relative_entropy_H(4.0, 4.0, params_with(1.3)) == 0.0);
    // rho G(1/rho, 1/sigma) oracle values
    CHECK(relative_entropy_H(2.0, 1.0, params_with(1.0)) ==
          doctest::Approx(0.38629436111989062).epsilon(1e-12)); // 2 ln 2 - 1
    CHECK(relative_entropy_H(2.0, 1.0, params_with(2.0)) == doctest::Approx(1.0));
    CHECK_THROWS_AS(relative_entropy_H(0.0, 1.0, params_with(1.4)), std::domain_error);

    CounterRng rng(13);
    for (int i = 0; i < 300; ++i) {
        const double gamma = (i % 3 == 0) ? 1.0 : (i % 3 == 1 ? 1.5 : 2.0);
        const double rho = rng.uniform(0.1, 10.0);
        const double sigma = rng.uniform(0.1, 10.0);
        const Params p = params_with(gamma, 0.7);
        const double ref = rho * energy_distance_G(1.0 / rho, 1.0 / sigma, p);
        CHECK(relative_entropy_H(rho, sigma, p) ==
              doctest::Approx(ref).epsilon(1e-8));
    }
}

TEST_CASE("quadratic lower bound on G (two branches)") {
    {
        const PhiGRecord rec = check_phiG_bound(1.0, 1.0, params_with(1.5));
        CHECK(rec.lhs == 0.0);
        CHECK(rec.rhs == 0.0);
        CHECK(rec.holds);
    }
    {
        const PhiGRecord rec = check_phiG_bound(0.5, 1.0, params_with(1.5));
        CHECK(std::string(rec.branch) == "v<=vt");
        CHECK(rec.holds);
    }
    {
        const PhiGRecord rec = check_phiG_bound(4.0, 1.0, params_with(2.0));
        CHECK(std::string(rec.branch) == "v>vt");
        CHECK(rec.holds);
    }
    Params bad = params_with(1.5);
    bad.gamma = 2.5;
    CHECK_THROWS_AS(check_phiG_bound(1.0, 1.0, bad), std::invalid_argument);

    CounterRng rng(17);
    for (int i = 0; i < 2000; ++i) {
        const double gamma = (i % 3 == 0) ? 1.0 : (i % 3 == 1 ? 1.5 : 2.0);
        const double v = rng.uniform(0.1, 10.0);
        const double vt = rng.uniform(0.1, 10.0);
        CHECK(check_phiG_bound(v, vt, params_with(gamma)).holds);
    }
}

TEST_CASE("midpoint convexity of v -> G(v, vt)") {
    CounterRng rng(19);
    for (int i = 0; i < 500; ++i) {
        const double gamma = (i % 3 == 0) ? 1.0 : (i % 3 == 1 ? 1.5 : 2.0);
        const double vt = rng.uniform(0.1, 10.0);
        const double v = rng.uniform(0.3, 9.0);
        const double d = rng.uniform(0.0, std::min(v - 0.15, 10.0 - v));
        const Params p = params_with(gamma);
        const double mid = energy_distance_G(v, vt, p);
        const double avg =
            0.5 * (energy_distance_G(v - d, vt, p) + energy_distance_G(v + d, vt, p));
        CHECK(mid <= avg + 1e-12 * (1.0 + avg));
    }
}

TEST_CASE("adaptive quadrature basics") {
    CHECK(integrate([](double x) { return x * x; }, 0.0, 1.0) ==
          doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(integrate([](double x) { return std::sin(x); }, 0.0, M_PI) ==
          doctest::Approx(2.0).epsilon(1e-12));
    // signedness
    CHECK(integrate([](double x) { return x; }, 1.0, 0.0) ==
          doctest::Approx(-0.5).epsilon(1e-12));
    // moderately sharp feature
    CHECK(integrate([](double x) { return 1.0 / (1e-4 + x * x); }, -1.0, 1.0) ==
          doctest::Approx(2.0 / 1e-2 * std::atan(1.0 / 1e-2)).epsilon(1e-9));
}

TEST_CASE("cut-off functions") {
    // phi_m: plateau, support, scaled derivative bound
    CHECK(phi_m(1.0, 40.0) == 1.0);
    CHECK(phi_m(20.0, 40.0) == 1.0);
    CHECK(phi_m(40.0, 40.0) == 0.0);
    CHECK(phi_m(55.0, 40.0) == 0.0);
    for (int i = 0; i <= 200; ++i) {
        const double r = 20.0 + 20.0 * i / 200.0;
        const double val = phi_m(r, 40.0);
        CHECK(val >= 0.0);
        CHECK(val <= 1.0);
        // |phi_m'| <= C / m with C = 35/8 for this bump profile
        CHECK(std::abs(phi_m_derivative(r, 40.0)) <= (35.0 / 8.0) / 40.0 * 2.0 + 1e-12);
    }
    // C^3 joins: finite-difference derivatives continuous at the seams
    const double h = 1e-4;
    for (double seam : {20.0, 40.0}) {
        const double left3 = (phi_m(seam - 2 * h, 40.0) - 2 * phi_m(seam - h, 40.0) +
                              phi_m(seam, 40.0)) /
                             (h * h);
        const double right3 = (phi_m(seam, 40.0) - 2 * phi_m(seam + h, 40.0) +
                               phi_m(seam + 2 * h, 40.0)) /
                              (h * h);
        CHECK(std::abs(left3 - right3) < 1e-2);
    }

    // eta_tilde: C^1, range, derivative-square bound
    CHECK(eta_tilde(-1.5) == 1.0);
    CHECK(eta_tilde(0.5) == 0.0);
    CHECK(eta_tilde(-0.5) == doctest::Approx(0.5));
    CounterRng rng(23);
    for (int i = 0; i < 5000; ++i) {
        const double y = rng.uniform(-2.0, 1.0);
        const double e = eta_tilde(y);
        const double ep = eta_tilde_derivative(y);
        CHECK(e >= 0.0);
        CHECK(e <= 1.0);
        CHECK(ep * ep <= 8.0 * e + 1e-12);
    }

    // zeta / xi: ranges and exact ramp supports
    for (int i = 0; i < 2000; ++i) {
        const int k = 1 + i % 4;
        const double B = 0.01 * (i % 700);
        const double y = 12.0 * rng.next_double();
        const double z = zeta_cut(y, k, B);
        CHECK(z >= 0.0);
        CHECK(z <= 1.0);
        const double zp = zeta_cut_derivative(y, k, B);
        if (y > B + k && y < B + k + 1)
            CHECK(zp == -1.0);
        else
            CHECK(zp == 0.0);
        const double M = 30.0 + 0.01 * (i % 900);
        const double xp = xi_cut_derivative(y + 20.0, k, M);
        if (y + 20.0 > M - k - 1 && y + 20.0 < M - k)
            CHECK(xp == 1.0);
        else
            CHECK(xp == 0.0);
    }
}

TEST_CASE("counter rng determinism") {
    CounterRng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
    CounterRng c(43);
    bool any_diff = false;
    CounterRng a2(42);
    for (int i = 0; i < 10; ++i) any_diff |= (a2.next_u64() != c.next_u64());
    CHECK(any_diff);
}
