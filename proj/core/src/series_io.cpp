#include "outflow/series_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace outflow {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

namespace {
std::size_t commit(const std::string& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("write_series: cannot open " + path);
    out << body;
    if (!out) throw std::runtime_error("write_series: write failure on " + path);
    return body.size();
}
} // namespace

std::size_t write_snapshot_series(const std::string& path,
                                  const std::vector<LagrangianState>& snapshots,
                                  const StationaryProfile& profile) {
    std::string body = "t,x,s,r,v,u,phi,psi\n";
    for (const LagrangianState& snap : snapshots) {
        const PerturbationFields f = perturbations(snap, profile);
        for (std::size_t i = 0; i < snap.size(); ++i) {
            body += format_g17(snap.t);
            body += ',';
            body += format_g17(snap.x_of(i));
            body += ',';
            body += format_g17(snap.s[i]);
            body += ',';
            body += format_g17(snap.r[i]);
            body += ',';
            body += format_g17(snap.v[i]);
            body += ',';
            body += format_g17(snap.u[i]);
            body += ',';
            body += format_g17(f.phi[i]);
            body += ',';
            body += format_g17(f.psi[i]);
            body += '\n';
        }
    }
    return commit(path, body);
}

std::size_t write_ledger_jsonl(const std::string& path,
                               const std::vector<LedgerEntry>& ledger) {
    std::string body;
    for (const LedgerEntry& e : ledger) {
        body += "{\"t\": " + format_g17(e.t);
        body += ", \"energy\": " + format_g17(e.energy);
        body += ", \"dissipation_visc\": " + format_g17(e.dissipation_visc);
        body += ", \"dissipation_bdry\": " + format_g17(e.dissipation_bdry);
        body += ", \"sink_psi\": " + format_g17(e.sink_psi);
        body += ", \"sink_G\": " + format_g17(e.sink_G);
        body += ", \"sup_psi_w\": " + format_g17(e.sup_psi_w);
        body += ", \"v_min\": " + format_g17(e.v_min);
        body += ", \"v_max\": " + format_g17(e.v_max);
        body += ", \"F_norm\": " + format_g17(e.F_norm);
        body += ", \"I1\": " + format_g17(e.I1);
        body += ", \"J1\": " + format_g17(e.J1);
        body += ", \"J2\": " + format_g17(e.J2);
        body += ", \"conv_metric\": " + format_g17(e.conv_metric);
        body += ", \"ineq_violation\": " + format_g17(e.ineq_violation);
        body += "}\n";
    }
    return commit(path, body);
}

std::size_t write_csv(const std::string& path, const std::string& header,
                      const std::vector<std::vector<double>>& rows) {
    std::string body = header;
    body += '\n';
    for (const std::vector<double>& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) body += ',';
            body += format_g17(row[i]);
        }
        body += '\n';
    }
    return commit(path, body);
}

} // namespace outflow
