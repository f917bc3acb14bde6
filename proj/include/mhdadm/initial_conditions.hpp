#pragma once

#include <cstdint>

#include "mhdadm/config.hpp"

namespace mhdadm {

/// u0 = A (sin x cos y cos z, -cos x sin y cos z, 0), scaled to the period,
/// i.e. amplitude A/8 on each of the 8 modes (+-1, +-1, +-1).
SpectralField taylor_green_velocity(const Grid& g, double amplitude);

/// B0 = A (0, 0, cos x), perpendicular to the Taylor-Green plane.
SpectralField taylor_green_magnetic(const Grid& g, double amplitude);

/// Seeded random divergence-free, zero-mean, Hermitian field with shell
/// spectrum ~ k^slope exp(-2 (k / k_peak)^2) (k in lattice units), scaled
/// to rms amplitude `rms`. Supported in the dealiasing mask when
/// `dealiased`, otherwise on every representable mode.
SpectralField random_solenoidal(const Grid& g, std::uint64_t seed, double slope, double k_peak, double rms,
                                bool dealiased = true);

/// Unfiltered initial data (u0, B0) for a configuration.
std::pair<SpectralField, SpectralField> initial_data(const SimConfig& cfg);

/// Forcing f of a configuration (unfiltered).
SpectralField forcing_field(const SimConfig& cfg);

/// Initial SolverState: w = G1 u0, b = G2 B0 (identity filters for plain
/// MHD, G2 = I for model_b), forcing G1 f.
SolverState make_initial_condition(const SimConfig& cfg);

/// Filter unfiltered data (u0, B0, f) into model variables.
SolverState filtered_state(const Grid& g, const ModelParams& p, const SpectralField& u0, const SpectralField& b0,
                           const SpectralField& f);

}  // namespace mhdadm
