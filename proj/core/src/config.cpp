#include "outflow/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "outflow/errors.hpp"

namespace outflow {

namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& value, int line) {
    std::size_t pos = 0;
    double out;
    try {
        out = std::stod(value, &pos);
    } catch (const std::exception&) {
        throw config_error("line " + std::to_string(line) + ": " + key +
                           ": not a number: '" + value + "'");
    }
    if (pos != value.size() || !std::isfinite(out))
        throw config_error("line " + std::to_string(line) + ": " + key +
                           ": not a finite number: '" + value + "'");
    return out;
}

long parse_int(const std::string& key, const std::string& value, int line) {
    std::size_t pos = 0;
    long out;
    try {
        out = std::stol(value, &pos);
    } catch (const std::exception&) {
        throw config_error("line " + std::to_string(line) + ": " + key +
                           ": not an integer: '" + value + "'");
    }
    if (pos != value.size())
        throw config_error("line " + std::to_string(line) + ": " + key +
                           ": not an integer: '" + value + "'");
    return out;
}

std::vector<double> parse_list(const std::string& key, const std::string& value, int line) {
    std::vector<double> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty())
            throw config_error("line " + std::to_string(line) + ": " + key +
                               ": empty list element");
        out.push_back(parse_double(key, item, line));
    }
    if (out.empty())
        throw config_error("line " + std::to_string(line) + ": " + key + ": empty list");
    return out;
}

} // namespace

RunSpec parse_config(const std::string& text) {
    RunSpec spec;
    std::istringstream in(text);
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        std::string s = raw;
        const std::size_t hash = s.find('#');
        if (hash != std::string::npos) s = s.substr(0, hash);
        s = trim(s);
        if (s.empty()) continue;
        const std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw config_error("line " + std::to_string(line) +
                               ": expected 'section.key = value'");
        const std::string key = trim(s.substr(0, eq));
        const std::string value = trim(s.substr(eq + 1));
        if (key.empty() || value.empty())
            throw config_error("line " + std::to_string(line) + ": empty key or value");

        if (key == "params.n")
            spec.params.n = static_cast<int>(parse_int(key, value, line));
        else if (key == "params.gamma")
            spec.params.gamma = parse_double(key, value, line);
        else if (key == "params.K")
            spec.params.K = parse_double(key, value, line);
        else if (key == "params.mu")
            spec.params.mu = parse_double(key, value, line);
        else if (key == "params.rho_plus")
            spec.params.rho_plus = parse_double(key, value, line);
        else if (key == "params.u_b")
            spec.params.u_b = parse_double(key, value, line);
        else if (key == "stationary.r_max")
            spec.stationary.r_max = parse_double(key, value, line);
        else if (key == "stationary.tol")
            spec.stationary.tol = parse_double(key, value, line);
        else if (key == "stationary.N")
            spec.stationary.N = static_cast<int>(parse_int(key, value, line));
        else if (key == "stationary.stretch")
            spec.stationary.stretch = parse_double(key, value, line);
        else if (key == "solver.m")
            spec.solver.m = parse_double(key, value, line);
        else if (key == "solver.N")
            spec.solver.N = static_cast<int>(parse_int(key, value, line));
        else if (key == "solver.cfl")
            spec.solver.cfl = parse_double(key, value, line);
        else if (key == "solver.theta")
            spec.solver.theta = parse_double(key, value, line);
        else if (key == "solver.t_end")
            spec.solver.t_end = parse_double(key, value, line);
        else if (key == "solver.snapshot_stride")
            spec.solver.snapshot_stride = static_cast<int>(parse_int(key, value, line));
        else if (key == "solver.snapshots")
            spec.solver.snapshots = static_cast<int>(parse_int(key, value, line));
        else if (key == "init.family") {
            if (value == "stationary")
                spec.init.family = PerturbationRecipe::Family::Stationary;
            else if (value == "gaussian-bump")
                spec.init.family = PerturbationRecipe::Family::GaussianBump;
            else
                throw config_error("line " + std::to_string(line) +
                                   ": init.family: unknown family '" + value + "'");
        } else if (key == "init.target") {
            if (value == "rho")
                spec.init.target = PerturbationRecipe::Target::Rho;
            else if (value == "u")
                spec.init.target = PerturbationRecipe::Target::U;
            else if (value == "both")
                spec.init.target = PerturbationRecipe::Target::Both;
            else
                throw config_error("line " + std::to_string(line) +
                                   ": init.target: must be rho, u, or both");
        } else if (key == "init.center")
            spec.init.center = parse_double(key, value, line);
        else if (key == "init.width")
            spec.init.width = parse_double(key, value, line);
        else if (key == "init.amplitude")
            spec.init.amplitude = parse_double(key, value, line);
        else if (key == "diagnostics.ledger")
            spec.diagnostics.ledger = parse_int(key, value, line) != 0;
        else if (key == "diagnostics.monitors")
            spec.diagnostics.monitors = parse_int(key, value, line) != 0;
        else if (key == "diagnostics.representation")
            spec.diagnostics.representation = parse_int(key, value, line) != 0;
        else if (key == "diagnostics.eta_deltas")
            spec.diagnostics.eta_deltas = parse_list(key, value, line);
        else if (key == "sweep.m_list")
            spec.sweep.m_list = parse_list(key, value, line);
        else if (key == "sweep.ub_list")
            spec.sweep.ub_list = parse_list(key, value, line);
        else if (key == "sweep.t_end")
            spec.sweep.t_end = parse_double(key, value, line);
        else if (key == "sweep.snapshots")
            spec.sweep.snapshots = static_cast<int>(parse_int(key, value, line));
        else if (key == "output.dir")
            spec.output_dir = value;
        else if (key == "verify.seed")
            spec.seed = static_cast<std::uint64_t>(parse_int(key, value, line));
        else if (key == "verify.samples_box")
            spec.verify.samples_box = static_cast<int>(parse_int(key, value, line));
        else if (key == "verify.samples_g")
            spec.verify.samples_g = static_cast<int>(parse_int(key, value, line));
        else if (key == "verify.samples_eta")
            spec.verify.samples_eta = static_cast<int>(parse_int(key, value, line));
        else
            throw config_error("line " + std::to_string(line) + ": unknown key '" + key + "'");
    }

    // constraint validation with key paths
    try {
        spec.params.validate();
    } catch (const std::invalid_argument& e) {
        throw config_error(e.what());
    }
    try {
        spec.solver.validate();
    } catch (const std::invalid_argument& e) {
        throw config_error(std::string("solver: ") + e.what());
    }
    if (!(spec.stationary.r_max >= 10.0))
        throw config_error("stationary.r_max: must be >= 10");
    if (!(spec.stationary.tol > 0.0)) throw config_error("stationary.tol: must be > 0");
    if (spec.stationary.N < 32) throw config_error("stationary.N: must be >= 32");
    if (!(spec.init.width > 0.0)) throw config_error("init.width: must be > 0");
    if (!(spec.sweep.t_end > 0.0)) throw config_error("sweep.t_end: must be > 0");
    if (spec.sweep.snapshots < 2) throw config_error("sweep.snapshots: must be >= 2");
    if (spec.sweep.m_list.size() < 2) throw config_error("sweep.m_list: need >= 2 entries");
    for (std::size_t i = 0; i + 1 < spec.sweep.m_list.size(); ++i)
        if (!(spec.sweep.m_list[i] < spec.sweep.m_list[i + 1]))
            throw config_error("sweep.m_list: must be strictly increasing");
    for (double ub : spec.sweep.ub_list)
        if (!(ub <= 0.0)) throw config_error("sweep.ub_list: outflow requires u_b < 0");
    if (spec.output_dir.empty()) throw config_error("output.dir: must not be empty");
    return spec;
}

RunSpec load_config_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw config_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

} // namespace outflow
