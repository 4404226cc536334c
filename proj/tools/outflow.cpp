// Command-line front end for the outflow laboratory.
//
//   outflow stationary [--config FILE] [--out DIR]
//   outflow evolve     [--config FILE] [--out DIR]
//   outflow sweep-m    [--config FILE] [--out DIR]
//   outflow sweep-ub   [--config FILE] [--out DIR]
//   outflow verify     [--config FILE] [--out DIR] [--seed N]
//
// Exit codes: 0 all enabled verdicts pass; 1 a verdict failed;
// 2 configuration error; 3 numerical failure. Every failure path emits one
// machine-readable JSON record on stderr before the nonzero exit.

#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "outflow/config.hpp"
#include "outflow/errors.hpp"
#include "outflow/series_io.hpp"
#include "outflow/sweep.hpp"
#include "outflow/verify.hpp"

namespace {

using namespace outflow;

void print_usage() {
    std::cout
        << "usage: outflow <stationary|evolve|sweep-m|sweep-ub|verify> [options]\n"
           "options:\n"
           "  --config FILE   line-oriented `section.key = value` run spec\n"
           "  --out DIR       output directory (overrides output.dir)\n"
           "  --seed N        verifier seed (overrides verify.seed)\n"
           "  --help          this text\n";
}

void emit_error_record(const std::string& kind, const std::string& what) {
    std::string msg = what;
    for (char& c : msg)
        if (c == '"') c = '\'';
    std::cerr << "{\"error\": \"" << kind << "\", \"detail\": \"" << msg << "\"}\n";
}

struct CliArgs {
    std::string command;
    std::string config_path;
    std::string out_dir;
    bool has_seed = false;
    std::uint64_t seed = 0;
};

CliArgs parse_args(int argc, char** argv) {
    CliArgs args;
    if (argc < 2) throw config_error("missing subcommand");
    args.command = argv[1];
    for (int i = 2; i < argc; ++i) {
        const std::string a = argv[i];
        auto value = [&](const char* name) -> std::string {
            if (i + 1 >= argc) throw config_error(std::string("missing value for ") + name);
            return argv[++i];
        };
        if (a == "--config")
            args.config_path = value("--config");
        else if (a == "--out")
            args.out_dir = value("--out");
        else if (a == "--seed") {
            args.seed = std::stoull(value("--seed"));
            args.has_seed = true;
        } else if (a == "--help") {
            print_usage();
            std::exit(0);
        } else {
            throw config_error("unknown option: " + a);
        }
    }
    return args;
}

int cmd_stationary(const RunSpec& spec, const std::string& out_dir) {
    const auto profile = solve_profile(spec);
    const DecayReport rep = stationary_report(*profile);
    std::filesystem::create_directories(out_dir);
    export_profile_csv(*profile, out_dir + "/profile.csv");

    std::string body;
    body += "slopes_defined," + std::string(rep.slopes_defined ? "1" : "0") + "\n";
    body += "slope_rho_gap," + format_g17(rep.slope_rho_gap) + "\n";
    body += "slope_drho," + format_g17(rep.slope_drho) + "\n";
    body += "slope_du," + format_g17(rep.slope_du) + "\n";
    body += "slope_ddrho," + format_g17(rep.slope_ddrho) + "\n";
    body += "rho_increasing," + std::string(rep.rho_increasing ? "1" : "0") + "\n";
    body += "u_r_positive," + std::string(rep.u_r_positive ? "1" : "0") + "\n";
    body += "flux_rel_deviation," + format_g17(rep.flux_rel_deviation) + "\n";
    std::ofstream out(out_dir + "/decay_report.csv", std::ios::binary);
    out << body;
    std::cout << body;

    const bool structural_ok =
        spec.params.u_b == 0.0 ||
        (rep.rho_increasing && rep.u_r_positive && rep.flux_rel_deviation <= 1e-8);
    std::cout << (structural_ok ? "STATIONARY PASS\n" : "STATIONARY FAIL\n");
    return structural_ok ? 0 : 1;
}

int cmd_evolve(const RunSpec& spec, const std::string& out_dir) {
    const EvolveProducts prod = run_evolve(spec, out_dir);
    const EvolveVerdicts& v = prod.verdicts;
    auto line = [](const char* name, bool ok) {
        std::cout << (ok ? "PASS " : "FAIL ") << name << "\n";
    };
    line("positivity", v.positivity);
    line("energy_nonincreasing", v.energy_nonincreasing);
    line("pointwise_sobolev", v.sobolev);
    line("eta_interpolation", v.eta_interp);
    line("unit_window_bounds", v.window_bounds);
    std::cout << "conv_metric_initial=" << format_g17(prod.ledger.front().conv_metric)
              << "\nconv_metric_final=" << format_g17(prod.ledger.back().conv_metric) << "\n";
    if (!v.all()) {
        emit_error_record("verdict", "evolve verdicts failed");
        return 1;
    }
    return 0;
}

int cmd_sweep_m(const RunSpec& spec, const std::string& out_dir) {
    const SweepMProducts prod = run_sweep_m(spec, out_dir);
    for (std::size_t p = 0; p < prod.study.sup_difference.size(); ++p)
        std::cout << "pair m=" << prod.study.pair_m[p].first << ","
                  << prod.study.pair_m[p].second
                  << " sup_difference=" << format_g17(prod.study.sup_difference[p]) << "\n";
    std::cout << (prod.study.monotone_decreasing ? "SWEEP-M PASS\n" : "SWEEP-M FAIL\n");
    if (!prod.study.monotone_decreasing) {
        emit_error_record("verdict", "pairwise sup-differences not monotone in m");
        return 1;
    }
    return 0;
}

int cmd_sweep_ub(const RunSpec& spec, const std::string& out_dir) {
    const std::vector<SweepUbEntry> entries = run_sweep_ub(spec, out_dir);
    bool all = true;
    for (const SweepUbEntry& e : entries) {
        std::cout << "u_b=" << format_g17(e.u_b)
                  << " conv_initial=" << format_g17(e.conv_initial)
                  << " conv_final=" << format_g17(e.conv_final)
                  << (e.verdicts_pass ? " PASS" : " FAIL") << "\n";
        if (!e.verdicts_pass) all = false;
    }
    std::cout << (all ? "SWEEP-UB PASS\n" : "SWEEP-UB FAIL\n");
    if (!all) {
        emit_error_record("verdict", "a sweep member failed its verdicts");
        return 1;
    }
    return 0;
}

int cmd_verify(const RunSpec& spec, const std::string& out_dir) {
    const VerifyReport rep = run_verification(spec);
    const std::string text = rep.render();
    std::filesystem::create_directories(out_dir);
    std::ofstream out(out_dir + "/verify_report.txt", std::ios::binary);
    out << text;
    std::cout << text;
    if (!rep.all_pass) {
        emit_error_record("verdict", "a randomized certifier failed");
        return 1;
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        const CliArgs args = parse_args(argc, argv);
        RunSpec spec;
        if (!args.config_path.empty()) spec = load_config_file(args.config_path);
        if (args.has_seed) spec.seed = args.seed;
        const std::string out_dir = args.out_dir.empty() ? spec.output_dir : args.out_dir;

        if (args.command == "stationary") return cmd_stationary(spec, out_dir);
        if (args.command == "evolve") return cmd_evolve(spec, out_dir);
        if (args.command == "sweep-m") return cmd_sweep_m(spec, out_dir);
        if (args.command == "sweep-ub") return cmd_sweep_ub(spec, out_dir);
        if (args.command == "verify") return cmd_verify(spec, out_dir);
        print_usage();
        throw config_error("unknown subcommand: " + args.command);
    } catch (const config_error& e) {
        emit_error_record("config", e.what());
        return 2;
    } catch (const numerical_error& e) {
        emit_error_record("numerical", e.what());
        return 3;
    } catch (const std::invalid_argument& e) {
        emit_error_record("config", e.what());
        return 2;
    } catch (const std::exception& e) {
        emit_error_record("numerical", e.what());
        return 3;
    }
}
