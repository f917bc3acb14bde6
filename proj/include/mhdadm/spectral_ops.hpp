#pragma once

#include <vector>

#include "mhdadm/spectral_field.hpp"

namespace mhdadm {

/// Spectral gradient, symbol i k. Scalar -> vector, vector -> rank-2 tensor
/// with component (i, j) = d_j f_i.
SpectralField gradient(const SpectralField& f);

/// Spectral divergence contracting the last index: rank-2 -> vector with
/// (div T)_i = d_j T_ij, vector -> scalar.
SpectralField divergence(const SpectralField& f);

/// Symbol -|k|^2, componentwise.
SpectralField laplacian(const SpectralField& f);

/// Leray projection onto divergence-free fields, symbol I - k k^T / |k|^2.
SpectralField leray_project(const SpectralField& f);
void leray_project_in_place(SpectralField& f);

/// Zero every coefficient outside the two-thirds mask.
SpectralField dealias(const SpectralField& f);
void dealias_in_place(SpectralField& f);

/// Multiply every mode of every component by symbol[k] (length n^3).
void apply_symbol(SpectralField& f, const std::vector<double>& symbol);

/// Mean-square inner product over the torus, (1/|T|) int f . g dx, computed
/// as sum_k Re(f_k conj(g_k)).
double inner_product(const SpectralField& a, const SpectralField& b);

/// sqrt(inner_product(f, f)).
double l2_norm(const SpectralField& f);

/// max_k |k . f_k| / max_k |k| |f_k| over all modes (0 for the zero field).
double divergence_residual(const SpectralField& f);

/// True if every coefficient outside the dealiasing mask is exactly zero.
bool supported_in_mask(const SpectralField& f);

}  // namespace mhdadm
