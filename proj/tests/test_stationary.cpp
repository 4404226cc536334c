#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "outflow/errors.hpp"
#include "outflow/stationary.hpp"

using namespace outflow;

namespace {

Params standard_params(int n) {
    Params p;
    p.n = n;
    p.gamma = 1.4;
    p.K = 1.0;
    p.mu = 1.0;
    p.rho_plus = 1.0;
    p.u_b = -0.05;
    return p;
}

} // namespace

TEST_CASE("zero flux collapses to the constant solution") {
    Params p = standard_params(2);
    p.u_b = 0.0;
    const StationaryProfile prof = solve_stationary(p, 50.0, 1e-10);
    for (std::size_t i = 0; i < prof.r_nodes.size(); ++i) {
        CHECK(prof.rho_t[i] == 1.0);
        CHECK(prof.u_t[i] == 0.0);
        CHECK(prof.drho[i] == 0.0);
        CHECK(prof.du[i] == 0.0);
    }
    const DecayReport rep = stationary_report(prof);
    CHECK_FALSE(rep.slopes_defined);
    CHECK(rep.flux_rel_deviation == 0.0);
}

TEST_CASE("standard run: flux identity, monotonicity, bounds") {
    for (int n : {2, 3}) {
        const Params p = standard_params(n);
        StationaryOptions opt;
        opt.node_count = 2000;
        const StationaryProfile prof = solve_stationary(p, 50.0, 1e-10, opt);

        CHECK(prof.rho1 > 0.0);
        CHECK(prof.flux == doctest::Approx(prof.rho1 * p.u_b));

        double worst_flux = 0.0, worst_udef = 0.0;
        bool increasing = true, du_positive = true;
        for (std::size_t i = 0; i < prof.r_nodes.size(); ++i) {
            const double r = prof.r_nodes[i];
            const double flux_i = std::pow(r, n - 1.0) * prof.rho_t[i] * prof.u_t[i];
            worst_flux = std::max(worst_flux,
                                  std::abs(flux_i - prof.flux) / std::abs(prof.flux));
            const double u_def =
                p.u_b * prof.rho1 * std::pow(r, 1.0 - n) / prof.rho_t[i];
            worst_udef = std::max(worst_udef,
                                  std::abs(prof.u_t[i] - u_def) / std::abs(u_def));
            if (i + 1 < prof.r_nodes.size() && !(prof.rho_t[i + 1] > prof.rho_t[i]))
                increasing = false;
            if (i > 0 && i + 1 < prof.r_nodes.size() && !(prof.du[i] > 0.0))
                du_positive = false;
            // rho~ in (rho_+/2, rho_+) for small |u_b|
            CHECK(prof.rho_t[i] > 0.5 * p.rho_plus);
            CHECK(prof.rho_t[i] <= p.rho_plus * (1.0 + 1e-12));
        }
        CHECK(worst_flux <= 1e-8);
        CHECK(worst_udef <= 1e-10);
        CHECK(increasing);
        CHECK(du_positive);
        // far-field attachment
        CHECK(std::abs(prof.rho_t.back() - p.rho_plus) <= 1e-10);
    }
}

TEST_CASE("decay exponents over the fit window") {
    for (int n : {2, 3}) {
        const Params p = standard_params(n);
        StationaryOptions opt;
        opt.node_count = 2000;
        const StationaryProfile prof = solve_stationary(p, 50.0, 1e-10, opt);
        const DecayReport rep = stationary_report(prof);
        REQUIRE(rep.slopes_defined);
        CHECK(std::abs(rep.slope_rho_gap - (-(2.0 * n - 2.0))) <= 0.3);
        CHECK(std::abs(rep.slope_drho - (-(2.0 * n - 1.0))) <= 0.3);
        CHECK(std::abs(rep.slope_du - (-static_cast<double>(n))) <= 0.3);
        CHECK(std::abs(rep.slope_ddrho - (-2.0 * n)) <= 0.3);
        CHECK(rep.rho_increasing);
        CHECK(rep.u_r_positive);
    }
}

TEST_CASE("tail sign pattern against a double-resolution re-solve") {
    const Params p = standard_params(2);
    StationaryOptions coarse, fine;
    coarse.node_count = 1000;
    fine.node_count = 2000;
    const StationaryProfile a = solve_stationary(p, 50.0, 1e-10, coarse);
    const StationaryProfile b = solve_stationary(p, 50.0, 1e-10, fine);
    // boundary density agreement between resolutions
    CHECK(a.rho1 == doctest::Approx(b.rho1).epsilon(1e-7));
    // sign pattern in the tail window: rho_r > 0, rho_rr < 0
    for (std::size_t i = 0; i < b.r_nodes.size(); ++i) {
        if (b.r_nodes[i] < 10.0 || b.r_nodes[i] > 40.0) continue;
        CHECK(b.drho[i] > 0.0);
        CHECK(b.ddrho[i] < 0.0);
    }
    // cross-resolution value agreement at shared radii
    for (double r : {2.0, 5.0, 10.0, 25.0, 45.0}) {
        const StationarySample sa = sample_profile(a, r);
        const StationarySample sb = sample_profile(b, r);
        CHECK(sa.rho_t == doctest::Approx(sb.rho_t).epsilon(1e-7));
        CHECK(sa.u_t == doctest::Approx(sb.u_t).epsilon(1e-6));
    }
}

TEST_CASE("residual refinement: mesh halving cuts the FD residual by >= 3x") {
    const Params p = standard_params(2);
    StationaryOptions coarse, fine;
    coarse.node_count = 500;
    fine.node_count = 1000;
    const StationaryProfile a = solve_stationary(p, 50.0, 1e-12, coarse);
    const StationaryProfile b = solve_stationary(p, 50.0, 1e-12, fine);
    CHECK(a.ode_residual > 0.0);
    CHECK(a.ode_residual / b.ode_residual >= 3.0);
}

TEST_CASE("sample_profile identities") {
    const Params p = standard_params(2);
    const StationaryProfile prof = solve_stationary(p, 50.0, 1e-10);
    // node identity
    const std::size_t mid = prof.r_nodes.size() / 2;
    const StationarySample s = sample_profile(prof, prof.r_nodes[mid]);
    CHECK(s.rho_t == prof.rho_t[mid]);
    CHECK(s.u_t == prof.u_t[mid]);
    CHECK(s.drho == prof.drho[mid]);
    // left endpoint carries the boundary data
    const StationarySample s1 = sample_profile(prof, 1.0);
    CHECK(s1.rho_t == doctest::Approx(prof.rho1));
    CHECK(s1.u_t == doctest::Approx(p.u_b));
    // monotone interpolation between neighbours
    const double rm = 0.5 * (prof.r_nodes[mid] + prof.r_nodes[mid + 1]);
    const StationarySample sm = sample_profile(prof, rm);
    CHECK(sm.rho_t >= prof.rho_t[mid]);
    CHECK(sm.rho_t <= prof.rho_t[mid + 1]);
    CHECK_THROWS_AS(sample_profile(prof, 0.5), std::out_of_range);
    CHECK_THROWS_AS(sample_profile(prof, 51.0), std::out_of_range);
}

TEST_CASE("profile CSV export round-trips") {
    const Params p = standard_params(2);
    StationaryOptions opt;
    opt.node_count = 64;
    const StationaryProfile prof = solve_stationary(p, 50.0, 1e-8, opt);
    const std::string path = "test_profile_export.csv";
    export_profile_csv(prof, path);
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header == "r,rho_t,u_t,drho,du,ddrho");
    std::size_t rows = 0;
    double worst = 0.0;
    std::string line;
    while (std::getline(in, line)) {
        double r, rho, u, dr, du, ddr;
        REQUIRE(std::sscanf(line.c_str(), "%lf,%lf,%lf,%lf,%lf,%lf", &r, &rho, &u, &dr, &du,
                            &ddr) == 6);
        worst = std::max(worst, std::abs(rho - prof.rho_t[rows]));
        worst = std::max(worst, std::abs(r - prof.r_nodes[rows]));
        ++rows;
    }
    CHECK(rows == prof.r_nodes.size());
    CHECK(worst == 0.0); // 17 significant digits round-trip bit-exactly
    std::filesystem::remove(path);
}

TEST_CASE("parameter validation and error paths") {
    Params p = standard_params(2);
    CHECK_THROWS_AS(solve_stationary(p, 5.0, 1e-10), std::invalid_argument);
    CHECK_THROWS_AS(solve_stationary(p, 50.0, -1.0), std::invalid_argument);
    p.u_b = -1e6; // far beyond the working regime
    CHECK_THROWS_AS(solve_stationary(p, 50.0, 1e-10), numerical_error);
}
