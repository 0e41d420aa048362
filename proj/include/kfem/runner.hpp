// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "kfem/norms.hpp"
#include "kfem/timeloop.hpp"

namespace kfem {

/// One experiment configuration. JSON document plus CLI overrides;
/// flags win over file values.
struct RunConfig {
  std::string case_name = "stationary";
  std::string method = "hypo";
  int p = 1;
  int q = 0;
  std::vector<int> levels = {32, 128, 512, 2048, 8192};  // element counts 2 n^2
  std::string k_rule = "single";
  double fixed_k = 0.1;
  double t_f = -1.0;  // case default when negative
  double gmres_tol = 1e-10;
  int gmres_restart = 60;
  int gmres_max_iter = 20000;
  std::string precond = "ilu0";
  bool prefer_dense = false;
  std::string out_dir = "out";
  int threads = 1;
  unsigned seed = 12345;
  bool deterministic = false;   // zero wall-clock fields for byte-stable CSV
  bool force_finest = false;    // override the p>=3, k=h^2, 8192-element guard
  std::string const_mode = "per-element";  // or "global-max"
  double cpf_override = -1.0;
  double abc_scale = 1.0;

  std::string canonical_json() const;
  std::string config_hash() const;  // FNV-1a of the canonical document
};

RunConfig config_from_json_file(const std::string& path);
void apply_threads(const RunConfig& cfg);

/// One CSV row of the fixed schema:
/// case,method,p,q,elements,dofs,h_max,k,err_st,err_A_final,eoc_st,wall_s,iters
struct RunRecord {
  std::string case_name;
  std::string method;
  int p = 0;
  int q = 0;
  int elements = 0;
  long dofs = 0;  // (q+1) * N_slabs * dim(V_h)
  double h_max = 0.0;
  double k = 0.0;
  double err_st = 0.0;
  double err_a_final = 0.0;
  std::optional<double> eoc_st;
  double wall_s = 0.0;
  long iters = 0;
};

std::string run_records_csv(const std::vector<RunRecord>& records);

struct ConvergenceResult {
  std::vector<RunRecord> records;
  bool solver_failed = false;
  std::string failure;
};

/// Mesh-refinement sweep; writes run.csv, convergence_h.svg,
/// convergence_dof.svg and config.json into cfg.out_dir.
ConvergenceResult run_convergence(const RunConfig& cfg);

struct DecayResult {
  std::vector<int> levels;
  std::vector<std::vector<double>> times;      // per level: breakpoints incl. t=0
  std::vector<std::vector<double>> norms;      // ||U(t_n^-)||_A
  std::vector<std::vector<double>> envelopes;  // sqrt(prod (1+mu)^-1) * initial
  int monotonicity_violations = 0;
  bool solver_failed = false;
  std::string failure;
};

/// Decay-to-equilibrium run (needs f = 0); writes decay.csv and decay.svg.
DecayResult run_decay(const RunConfig& cfg);

struct SolveResult {
  RunRecord record;
  StNormBreakdown breakdown;
  bool solver_failed = false;
  std::string failure;
};

/// Single-level solve with field export (CSV + VTK) and a printed report.
SolveResult run_solve(const RunConfig& cfg);

/// Stabilisation ledger dump (params-dump subcommand).
void run_params_dump(const RunConfig& cfg, std::ostream& out);

/// elements = 2 n^2 for the structured family; throws on other counts.
int cells_per_side_from_elements(int elements);
Mesh mesh_for_level(int elements);

}  // namespace kfem
