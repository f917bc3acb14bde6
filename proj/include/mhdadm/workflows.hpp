#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "mhdadm/config.hpp"
#include "mhdadm/diagnostics.hpp"

namespace mhdadm {

struct SimulationResult {
    std::vector<DiagnosticsRecord> records{};
    /// Fields at the record times, only filled when requested.
    std::vector<Sample> samples{};
    /// Final state, or the last finite one if the run blew up.
    SolverState final_state;
    long steps = 0;
    double dt = 0.0;
    bool blew_up = false;
    std::string failure{};
};

/// Integrate cfg from its initial condition to t_end. The step is shrunk to
/// t_end / ceil(t_end / dt) so the run ends exactly at t_end. A record is
/// taken at step 0 and every output_every steps. Warnings (dt above the
/// CFL estimate) go to `log` when given.
SimulationResult simulate(const SimConfig& cfg, bool keep_samples = false, std::ostream* log = nullptr);
SimulationResult simulate_from(SolverState initial, const SimConfig& cfg, bool keep_samples = false,
                               std::ostream* log = nullptr);

inline constexpr const char* kDiagnosticsHeader = "# mhd-adm diagnostics v1";
inline constexpr const char* kDiagnosticsColumns = "t,E_model,D_model,W_force,E_limit,h0_w,h1_w,h0_b,h1_b,div_residual";

void write_diagnostics_csv(std::span<const DiagnosticsRecord> records, const std::string& path);

/// `run` workflow: writes <out_dir>/diagnostics.csv and
/// <out_dir>/snapshot_final.bin. On blow-up writes
/// <out_dir>/snapshot_last_good.bin instead and returns 2.
int run(const SimConfig& cfg, std::ostream& out, std::ostream& err);

struct SweepEntry {
    int order = 0;
    double aggregate = 0.0;
    /// -log(d_i / d_{i-1}) / log(N_i / N_{i-1}); NaN for the first entry or N_{i-1} = 0.
    double rate = 0.0;
    bool ok = true;
    std::string error;
};

struct SweepResult {
    int reference_order = 0;
    double b_norm_order = 1.0;
    std::vector<SweepEntry> entries;

    bool ok() const;
    /// Aggregates strictly decreasing over the successful entries.
    bool strictly_decreasing() const;
};

/// Run cfg once per order (order1 = order2 = N for model A, order1 = N for
/// model B) and once at the reference order, then measure the distance of
/// every run to the reference. Member runs execute concurrently on up to
/// thread_count() workers.
SweepResult sweep_n(const SimConfig& cfg, std::span<const int> orders, int reference);

/// `sweep-n` workflow: prints a table and writes <out_dir>/sweep_n.csv.
int run_sweep(const SimConfig& cfg, std::span<const int> orders, int reference, std::ostream& out,
              std::ostream& err);

struct InvariantCheck {
    std::string name;
    bool passed = false;
    double value = 0.0;
    double tolerance = 0.0;
    std::string detail;
};

/// Operator property suite for the configured grid and parameters: symbol
/// bounds, adjointness, commutation, cancellation, solenoidality,
/// Hermitian structure and the energy balance of a short run.
std::vector<InvariantCheck> check_invariants(const SimConfig& cfg);

/// `check-invariants` workflow: prints the table, returns 1 if any check failed.
int run_check_invariants(const SimConfig& cfg, std::ostream& out);

enum class FilterOp { Filter, Deconvolve, Inverse };

FilterOp parse_filter_op(std::string_view name);

/// Apply G, D_N or A to both fields of a state.
SolverState filter_state(const SolverState& s, FilterOp op, const DeconvSpec& spec);

/// `filter` workflow on snapshot files.
int run_filter(const std::string& input, FilterOp op, const DeconvSpec& spec, const std::string& output,
               std::ostream& out);

}  // namespace mhdadm
