#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "outflow/initial_data.hpp"
#include "outflow/params.hpp"
#include "outflow/solver.hpp"
#include "outflow/stationary.hpp"

namespace outflow {

// Experiment description parsed from the line-oriented `section.key = value`
// format. Unknown keys are hard errors; every constraint violation carries
// the key path.
struct RunSpec {
    Params params;

    struct Stationary {
        double r_max = 50.0;
        double tol = 1e-10;
        int N = 2000;
        double stretch = 4.0;
    } stationary;

    SolverConfig solver;

    PerturbationRecipe init;

    struct Diagnostics {
        bool ledger = true;
        bool monitors = true;
        bool representation = false;
        std::vector<double> eta_deltas{0.5, 1.0, 2.0};
    } diagnostics;

    struct Sweep {
        std::vector<double> m_list{20.0, 40.0, 80.0};
        std::vector<double> ub_list{-0.01, -0.05};
        double t_end = 20.0;
        int snapshots = 41;
    } sweep;

    std::string output_dir = "out";
    std::uint64_t seed = 42;

    struct Verify {
        int samples_box = 100000; // per gamma
        int samples_g = 10000;
        int samples_eta = 10000;
    } verify;
};

// Parses the documented config format. Throws config_error with a line
// number on syntax errors and with the key path on constraint violations.
RunSpec parse_config(const std::string& text);
RunSpec load_config_file(const std::string& path);

} // namespace outflow
