#pragma once

#include <cmath>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mhdadm/filters.hpp"
#include "mhdadm/spectral_field.hpp"

namespace mhdadm {

/// Which system is being evolved.
///   ModelA: filtering and deconvolution in both equations (alpha1, alpha2 > 0).
///   ModelB: filtered velocity, unfiltered magnetic field (alpha2 = 0, N2 = 0).
///   Limit:  the filtered MHD system, D_N replaced by A = I - alpha^2 Laplacian.
///   Mhd:    plain incompressible MHD with viscosity and resistivity.
enum class ModelKind { ModelA, ModelB, Limit, Mhd };

std::string_view to_string(ModelKind kind);
ModelKind parse_model_kind(std::string_view name);

struct ModelParams {
    double nu = 0.05;
    double mu = 0.05;
    FilterSpec filter1{1.0};
    FilterSpec filter2{1.0};
    int order1 = 0;
    int order2 = 0;
    ModelKind kind = ModelKind::ModelA;
    /// Two-thirds dealiasing of quadratic products. Disabling it is only
    /// useful as a negative control.
    bool dealias = true;

    DeconvSpec deconv1() const { return {filter1, order1}; }
    DeconvSpec deconv2() const { return {filter2, order2}; }

    /// Throws ParameterError when the parameters violate the hypotheses of
    /// the selected model.
    void validate() const;

    friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Velocity-like unknown w (u for plain MHD), magnetic unknown b (B), and
/// the time-independent forcing already passed through G1.
struct SolverState {
    double time = 0.0;
    SpectralField w;
    SpectralField b;
    SpectralField forcing;

    static SolverState zero(const Grid& grid);

    const Grid& grid() const noexcept { return w.grid(); }
};

/// Per-mode symbol tables of one model on one grid:
///   advect_i  symbol of the operator applied before the products (D_N, A or I)
///   filter_i  G_i (I for the unfiltered equations)
///   inverse_i A_i = 1 + alpha_i^2 |k|^2 (1 for unfiltered equations)
/// The model energy weight of equation i is inverse_i * advect_i.
class ModelOperators {
public:
    ModelOperators(const Grid& grid, const ModelParams& params);

    const Grid& grid() const noexcept { return grid_; }
    const ModelParams& params() const noexcept { return params_; }

    const std::vector<double>& advect(int i) const { return i == 1 ? advect1_ : advect2_; }
    const std::vector<double>& filter(int i) const { return i == 1 ? filter1_ : filter2_; }
    const std::vector<double>& inverse(int i) const { return i == 1 ? inverse1_ : inverse2_; }
    double energy_weight(int i, std::size_t k) const {
        return i == 1 ? inverse1_[k] * advect1_[k] : inverse2_[k] * advect2_[k];
    }

private:
    Grid grid_;
    ModelParams params_;
    std::vector<double> advect1_, advect2_;
    std::vector<double> filter1_, filter2_;
    std::vector<double> inverse1_, inverse2_;
};

/// The four divergence-form quadratic terms, before Leray projection and
/// with the model's filters applied (dealiased when params.dealias):
///   w_self     = div G1 (c_w (x) c_w)
///   w_magnetic = div G1 (c_b (x) c_b)
///   b_forward  = div G2 (c_w (x) c_b)
///   b_backward = div G2 (c_b (x) c_w)
/// where c_w, c_b are the advected fields (D_N w, A w, or w).
struct QuadraticFluxes {
    SpectralField w_self;
    SpectralField w_magnetic;
    SpectralField b_forward;
    SpectralField b_backward;
};

QuadraticFluxes quadratic_fluxes(const SolverState& s, const ModelOperators& ops);

/// Tendencies without the diffusion terms:
///   dw = P[w_magnetic - w_self + forcing],  db = P[b_forward - b_backward].
std::pair<SpectralField, SpectralField> nonlinear_tendency(const SolverState& s, const ModelOperators& ops);

/// Full tendencies (dw/dt, db/dt) including nu Lap w and mu Lap b, for any model.
std::pair<SpectralField, SpectralField> rhs(const SolverState& s, const ModelOperators& ops);
std::pair<SpectralField, SpectralField> rhs(const SolverState& s, const ModelParams& p);

std::pair<SpectralField, SpectralField> rhs_model_a(const SolverState& s, const ModelParams& p);
std::pair<SpectralField, SpectralField> rhs_model_b(const SolverState& s, const ModelParams& p);
std::pair<SpectralField, SpectralField> rhs_filtered_limit(const SolverState& s, const ModelParams& p);
std::pair<SpectralField, SpectralField> rhs_mhd(const SolverState& s, const ModelParams& p);

/// Pressure q with grad q equal to the gradient part of the momentum
/// tendency removed by the projection: q_k = -(i k . R_k) / |k|^2,
/// R = w_magnetic - w_self + forcing.
SpectralField pressure_reconstruct(const SolverState& s, const ModelParams& p);

/// The trilinear identities used by the a-priori energy estimate,
/// evaluated discretely:
///   self_w   = < G1 (c_w (x) c_w), grad(A1 c_w) >
///   self_b   = < G2 (c_b (x) c_b), grad(A2 c_b) >
///   magnetic = < G1 (c_b (x) c_b), grad(A1 c_w) > - < G2 (c_b (x) c_w), grad(A2 c_b) >
///            + < G2 (c_w (x) c_b), grad(A2 c_b) >
/// Each scale is the sum of Cauchy-Schwarz bounds of the pairings involved.
struct CancellationResiduals {
    double self_w = 0.0, self_b = 0.0, magnetic = 0.0;
    double scale_w = 0.0, scale_b = 0.0, scale_magnetic = 0.0;

    double relative_self_w() const { return scale_w > 0.0 ? std::abs(self_w) / scale_w : 0.0; }
    double relative_self_b() const { return scale_b > 0.0 ? std::abs(self_b) / scale_b : 0.0; }
    double relative_magnetic() const {
        return scale_magnetic > 0.0 ? std::abs(magnetic) / scale_magnetic : 0.0;
    }
    double worst_relative() const;
};

CancellationResiduals cancellation_check(const SolverState& s, const ModelParams& p);

/// Divergence tolerance applied to rhs inputs (relative, see divergence_residual).
inline constexpr double kSolenoidalInputTolerance = 1e-10;

}  // namespace mhdadm
