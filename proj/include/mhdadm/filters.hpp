#pragma once

#include <string_view>
#include <vector>

#include "mhdadm/spectral_field.hpp"

namespace mhdadm {

/// Helmholtz filter G = (I - alpha^2 Laplacian)^-1. alpha = 0 is the identity.
struct FilterSpec {
    double alpha = 0.0;

    void validate() const;
    friend bool operator==(const FilterSpec&, const FilterSpec&) = default;
};

/// Van Cittert deconvolution D_N = sum_{n=0}^{N} (I - G)^n of a Helmholtz filter.
struct DeconvSpec {
    FilterSpec filter;
    int order = 0;

    void validate() const;
    friend bool operator==(const DeconvSpec&, const DeconvSpec&) = default;
};

/// 1 / (1 + alpha^2 k_sq).
double helmholtz_symbol(double k_sq, double alpha);

/// Symbol of D_N:
///   sum_{n=0}^{N} r^n = (1 + x) (1 - r^{N+1}),  x = alpha^2 k_sq,  r = x / (1 + x).
/// Evaluated from the closed form and clamped to the exact bounds
/// 1 <= D <= min(N + 1, 1 + x).
double dn_symbol(double k_sq, const DeconvSpec& spec);

/// 1 - r^{N+1}, the symbol of G D_N.
double dn_residual_factor(double k_sq, const DeconvSpec& spec);

enum class HalfPower {
    A_half,             ///< sqrt(1 + x)
    DN_half,            ///< sqrt(D_N)
    A_half_DN_half,     ///< sqrt((1 + x) D_N)
    A_inv_half_DN_half  ///< sqrt(D_N / (1 + x)) = sqrt(1 - r^{N+1}) <= 1
};

HalfPower parse_half_power(std::string_view name);
double half_power_symbol(double k_sq, HalfPower which, const DeconvSpec& spec);

SpectralField apply_helmholtz(const SpectralField& f, const FilterSpec& spec);
SpectralField apply_inverse_helmholtz(const SpectralField& f, const FilterSpec& spec);
SpectralField apply_deconvolution(const SpectralField& f, const DeconvSpec& spec);
SpectralField apply_half_power(const SpectralField& f, HalfPower which, const DeconvSpec& spec);

/// Per-mode symbol tables for a grid, used by the hot loops.
std::vector<double> helmholtz_table(const Grid& g, const FilterSpec& spec);
std::vector<double> inverse_helmholtz_table(const Grid& g, const FilterSpec& spec);
std::vector<double> deconvolution_table(const Grid& g, const DeconvSpec& spec);

}  // namespace mhdadm
