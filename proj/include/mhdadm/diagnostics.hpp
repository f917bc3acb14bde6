#pragma once

#include <span>
#include <string_view>
#include <vector>

#include "mhdadm/models.hpp"

namespace mhdadm {

/// Norms use the mean-square convention of inner_product():
/// ||f||_s^2 = sum_{k != 0} |k|^{2 s} |f_k|^2.
double hs_norm(const SpectralField& f, double s);

/// How the forcing work term is paired with the velocity.
///   AsWritten:  < A2^1/2 X1^1/2 G1 f, A1^1/2 X1^1/2 w >
///   Consistent: < A1^1/2 X1^1/2 G1 f, A1^1/2 X1^1/2 w > = < G1 f, A1 X1 w >
/// X1 is the model's velocity operator (D_N1, A1 or I). The two agree when
/// alpha1 = alpha2; Consistent is the one that closes the energy balance
/// of the evolution equations.
enum class ForcingPairing { AsWritten, Consistent };

ForcingPairing parse_forcing_pairing(std::string_view name);

struct DiagnosticsRecord {
    double time = 0.0;
    double E_model = 0.0;   ///< 1/2 (||A1^1/2 X1^1/2 w||^2 + ||A2^1/2 X2^1/2 b||^2)
    double D_model = 0.0;   ///< nu ||grad A1^1/2 X1^1/2 w||^2 + mu ||grad A2^1/2 X2^1/2 b||^2
    double W_force = 0.0;   ///< forcing work, AsWritten pairing
    double W_force_consistent = 0.0;
    double E_limit = 0.0;   ///< 1/2 (||A1 w||^2 + ||A2 b||^2)
    double h0_w = 0.0, h1_w = 0.0, h0_b = 0.0, h1_b = 0.0;
    double div_residual = 0.0;

    double work(ForcingPairing p) const { return p == ForcingPairing::AsWritten ? W_force : W_force_consistent; }
};

DiagnosticsRecord energy_report(const SolverState& s, const ModelOperators& ops);
DiagnosticsRecord energy_report(const SolverState& s, const ModelParams& p);

/// Model energy from the half-power fields A_i^1/2 X_i^1/2 applied in
/// spectral space, as an independent route to DiagnosticsRecord::E_model.
double model_energy_from_half_powers(const SolverState& s, const ModelParams& p);

/// Cross helicity of the model variables. `plain` is <w, b>; `model` pairs
/// the energy fields, < A1^1/2 X1^1/2 w, A2^1/2 X2^1/2 b >. Reported only;
/// no conservation law is assumed for either.
struct CrossHelicity {
    double plain = 0.0;
    double model = 0.0;
};

CrossHelicity cross_helicity(const SolverState& s, const ModelParams& p);

/// |E(t_end) - E(t_0) + int (D - W) dt| / max E over the records, the
/// integral by the trapezoid rule with fourth-order end corrections.
/// Requires at least 3 records at uniform spacing (ParameterError otherwise).
double energy_equality_residual(std::span<const DiagnosticsRecord> records,
                                ForcingPairing pairing = ForcingPairing::Consistent);

struct InequalityResult {
    bool holds = true;
    /// Largest E_model(t_{i+1}) - E_model(t_i); positive means an increase.
    double worst_margin = 0.0;
};

/// For unforced runs: E_model non-increasing between consecutive records
/// up to `tolerance` absolute.
InequalityResult energy_inequality_check(std::span<const DiagnosticsRecord> records, double tolerance = 1e-9);

/// Solution fields at one output time.
struct Sample {
    double time = 0.0;
    SpectralField w;
    SpectralField b;
};

struct ConvergenceDistance {
    std::vector<double> times;
    std::vector<double> distances;
    /// sqrt of the trapezoid time integral of distance^2 (the single
    /// distance when there is only one sample).
    double aggregate = 0.0;
};

/// ||w_N - w_ref||_{H_1} + ||b_N - b_ref||_{H_s} at every shared output time,
/// s = b_order (1 for model A, 0 for model B).
ConvergenceDistance n_convergence_distance(std::span<const Sample> run, std::span<const Sample> reference,
                                           double b_order = 1.0);

}  // namespace mhdadm
