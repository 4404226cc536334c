#include "outflow/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <thread>

#include "outflow/errors.hpp"
#include "outflow/series_io.hpp"

namespace outflow {

namespace {

unsigned thread_cap(std::size_t jobs) {
    unsigned cap = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("OUTFLOW_SIM_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) cap = static_cast<unsigned>(v);
    }
    return std::min<unsigned>(cap, static_cast<unsigned>(jobs));
}

template <class Fn>
void parallel_for(std::size_t jobs, Fn&& fn) {
    const unsigned workers = thread_cap(jobs);
    if (workers <= 1) {
        for (std::size_t i = 0; i < jobs; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next++; i < jobs; i = next++) fn(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (std::thread& th : pool) th.join();
    for (const std::exception_ptr& e : errors)
        if (e) std::rethrow_exception(e);
}

} // namespace

std::shared_ptr<const StationaryProfile> solve_profile(const RunSpec& spec,
                                                       double r_max_override) {
    StationaryOptions opt;
    opt.node_count = spec.stationary.N;
    opt.stretch = spec.stationary.stretch;
    const double r_max = r_max_override > 0.0
                             ? std::max(spec.stationary.r_max, r_max_override)
                             : std::max(spec.stationary.r_max, spec.solver.m + 10.0);
    return std::make_shared<StationaryProfile>(
        solve_stationary(spec.params, r_max, spec.stationary.tol, opt));
}

EvolveProducts run_evolve(const RunSpec& spec, const std::string& out_dir,
                          std::shared_ptr<const StationaryProfile> profile) {
    EvolveProducts out;
    out.profile = profile ? std::move(profile) : solve_profile(spec);

    const InitialData init = make_initial_data(spec.init, out.profile, spec.solver.m);
    Simulation sim(spec.params, out.profile, init, spec.solver);
    out.trajectory = evolve(sim, spec.solver.t_end);
    out.ledger = build_ledger(out.trajectory, *out.profile, spec.params);

    // verdicts
    EvolveVerdicts& v = out.verdicts;
    v.positivity = true;
    v.energy_nonincreasing = true;
    v.sobolev = true;
    v.eta_interp = true;
    v.window_bounds = true;

    double eps = 0.0;
    for (const LedgerEntry& e : out.ledger) eps = std::max(eps, std::abs(e.balance_residual));
    out.eps_disc = eps;
    const double M0 = out.trajectory.snapshots.front().M;

    double w_lo0 = 0.0, w_hi0 = 0.0;
    for (std::size_t k = 0; k < out.trajectory.snapshots.size(); ++k) {
        const LagrangianState& snap = out.trajectory.snapshots[k];
        const LedgerEntry& e = out.ledger[k];
        if (!(e.v_min > 0.0)) v.positivity = false;
        if (k > 0) {
            const double dt = snap.t - out.trajectory.snapshots[k - 1].t;
            const double slack = (eps + 1e-8 * std::max(1.0, out.ledger[0].energy)) * dt;
            if (out.ledger[k].energy > out.ledger[k - 1].energy + slack)
                v.energy_nonincreasing = false;
        }
        if (spec.diagnostics.monitors) {
            const MonitorRecord mon = pointwise_monitors(snap, *out.profile, spec.params);
            if (!mon.sobolev_holds) v.sobolev = false;
            if (mon.window_checked) {
                if (k == 0) {
                    w_lo0 = mon.window_min;
                    w_hi0 = mon.window_max;
                } else if (mon.window_min < 0.25 * w_lo0 || mon.window_max > 4.0 * w_hi0) {
                    v.window_bounds = false;
                }
            }
            for (double delta : spec.diagnostics.eta_deltas) {
                const EtaRecord er =
                    eta_weighted_norms(snap, *out.profile, spec.params, M0, delta);
                if (!er.interp_a_holds || !er.interp_b_holds) v.eta_interp = false;
            }
        }
    }

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_snapshot_series(out_dir + "/snapshots.csv", out.trajectory.snapshots,
                              *out.profile);
        write_ledger_jsonl(out_dir + "/ledger.jsonl", out.ledger);
    }
    return out;
}

SweepMProducts run_sweep_m(const RunSpec& spec, const std::string& out_dir) {
    SweepMProducts out;
    out.m_list = spec.sweep.m_list;
    const double m_max = spec.sweep.m_list.back();
    std::shared_ptr<const StationaryProfile> profile = solve_profile(spec, m_max + 10.0);

    const std::size_t jobs = spec.sweep.m_list.size();
    std::vector<EvolveProducts> products(jobs);
    std::vector<RunSpec> specs(jobs, spec);
    for (std::size_t i = 0; i < jobs; ++i) {
        RunSpec& rs = specs[i];
        const double m = spec.sweep.m_list[i];
        rs.solver.m = m;
        // hold the mass resolution fixed across the family
        const double mass_ratio =
            (std::pow(m, spec.params.n) - 1.0) /
            (std::pow(spec.solver.m, spec.params.n) - 1.0);
        rs.solver.N = std::max(16, static_cast<int>(std::lround(spec.solver.N * mass_ratio)));
        rs.solver.t_end = spec.sweep.t_end;
        rs.solver.snapshots = spec.sweep.snapshots;
        rs.solver.snapshot_stride = 0;
    }
    parallel_for(jobs, [&](std::size_t i) {
        std::string dir;
        if (!out_dir.empty())
            dir = out_dir + "/m_" + std::to_string(static_cast<long>(specs[i].solver.m));
        products[i] = run_evolve(specs[i], dir, profile);
    });

    std::vector<ChiStudyRun> runs(jobs);
    for (std::size_t i = 0; i < jobs; ++i) {
        runs[i].m = specs[i].solver.m;
        runs[i].traj = &products[i].trajectory;
        runs[i].profile = profile;
    }
    out.study = chi_refinement_study(runs, spec.params);

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::vector<std::vector<double>> rows;
        for (std::size_t p = 0; p < out.study.sup_difference.size(); ++p)
            rows.push_back({out.study.pair_m[p].first, out.study.pair_m[p].second,
                            out.study.sup_difference[p]});
        write_csv(out_dir + "/sweep_m_summary.csv", "m_lo,m_hi,sup_difference", rows);
    }
    return out;
}

std::vector<SweepUbEntry> run_sweep_ub(const RunSpec& spec, const std::string& out_dir) {
    const std::size_t jobs = spec.sweep.ub_list.size();
    std::vector<SweepUbEntry> entries(jobs);
    std::vector<RunSpec> specs(jobs, spec);
    for (std::size_t i = 0; i < jobs; ++i) specs[i].params.u_b = spec.sweep.ub_list[i];

    parallel_for(jobs, [&](std::size_t i) {
        std::string dir;
        if (!out_dir.empty()) dir = out_dir + "/ub_" + std::to_string(i);
        const EvolveProducts prod = run_evolve(specs[i], dir);
        entries[i].u_b = specs[i].params.u_b;
        entries[i].conv_initial = prod.ledger.front().conv_metric;
        entries[i].conv_final = prod.ledger.back().conv_metric;
        entries[i].verdicts_pass = prod.verdicts.all();
    });

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::vector<std::vector<double>> rows;
        for (const SweepUbEntry& e : entries)
            rows.push_back({e.u_b, e.conv_initial, e.conv_final,
                            e.verdicts_pass ? 1.0 : 0.0});
        write_csv(out_dir + "/sweep_ub_summary.csv",
                  "u_b,conv_initial,conv_final,verdicts_pass", rows);
    }
    return entries;
}

} // namespace outflow
