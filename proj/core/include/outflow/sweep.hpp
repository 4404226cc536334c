#pragma once

#include <memory>
#include <string>
#include <vector>

#include "outflow/config.hpp"
#include "outflow/diagnostics.hpp"
#include "outflow/solver.hpp"

namespace outflow {

// Experiment drivers shared by the CLI subcommands. Each driver writes its
// exports under the spec's output directory and returns the data needed for
// verdicts.

struct EvolveVerdicts {
    bool energy_nonincreasing = false;
    bool positivity = false;
    bool sobolev = false;      // pointwise bound at every snapshot
    bool eta_interp = false;   // interpolation inequalities for all deltas
    bool window_bounds = false; // unit-window volume integrals in a fixed band
    bool all() const {
        return energy_nonincreasing && positivity && sobolev && eta_interp && window_bounds;
    }
};

struct EvolveProducts {
    std::shared_ptr<const StationaryProfile> profile;
    Trajectory trajectory;
    std::vector<LedgerEntry> ledger;
    EvolveVerdicts verdicts;
    double eps_disc = 0.0; // measured exact-balance residual scale
};

std::shared_ptr<const StationaryProfile> solve_profile(const RunSpec& spec,
                                                       double r_max_override = 0.0);

// One trajectory with the full ledger; exports snapshots.csv and
// ledger.jsonl into out_dir when it is non-empty.
EvolveProducts run_evolve(const RunSpec& spec, const std::string& out_dir,
                          std::shared_ptr<const StationaryProfile> profile = nullptr);

struct SweepMProducts {
    std::vector<double> m_list;
    ChiStudyResult study;
};

// Bounded-domain refinement family: same params and initial-data recipe,
// m from sweep.m_list, node count scaled to hold the mass resolution fixed,
// snapshot times aligned. Member runs execute concurrently, capped by
// OUTFLOW_SIM_THREADS.
SweepMProducts run_sweep_m(const RunSpec& spec, const std::string& out_dir);

struct SweepUbEntry {
    double u_b = 0.0;
    double conv_initial = 0.0;
    double conv_final = 0.0;
    bool verdicts_pass = false;
};

std::vector<SweepUbEntry> run_sweep_ub(const RunSpec& spec, const std::string& out_dir);

} // namespace outflow
