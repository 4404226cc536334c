#pragma once

#include <string>
#include <vector>

#include "outflow/diagnostics.hpp"
#include "outflow/solver.hpp"

namespace outflow {

// Bit-exact data export: 17 significant digits, line-feed newlines only.
// Returns the number of bytes written.

// Snapshot CSV: header `t,x,s,r,v,u,phi,psi`, one row per node per snapshot.
std::size_t write_snapshot_series(const std::string& path,
                                  const std::vector<LagrangianState>& snapshots,
                                  const StationaryProfile& profile);

// Ledger JSON-lines, one record per snapshot with exactly the fields
// t, energy, dissipation_visc, dissipation_bdry, sink_psi, sink_G,
// sup_psi_w, v_min, v_max, F_norm, I1, J1, J2, conv_metric, ineq_violation.
std::size_t write_ledger_jsonl(const std::string& path,
                               const std::vector<LedgerEntry>& ledger);

// Generic CSV writer: header + rows, each row a vector of doubles.
std::size_t write_csv(const std::string& path, const std::string& header,
                      const std::vector<std::vector<double>>& rows);

std::string format_g17(double v);

} // namespace outflow
