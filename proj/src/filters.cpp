#include "mhdadm/filters.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mhdadm/errors.hpp"
#include "mhdadm/spectral_ops.hpp"

namespace mhdadm {

void FilterSpec::validate() const {
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw ParameterError("filter radius alpha must be finite and >= 0, got " + std::to_string(alpha));
}

void DeconvSpec::validate() const {
    filter.validate();
    if (order < 0) throw ParameterError("deconvolution order must be >= 0, got " + std::to_string(order));
}

double helmholtz_symbol(double k_sq, double alpha) {
    if (alpha == 0.0) return 1.0;
    return 1.0 / (1.0 + alpha * alpha * k_sq);
}

double dn_residual_factor(double k_sq, const DeconvSpec& spec) {
    const double x = spec.filter.alpha * spec.filter.alpha * k_sq;
    if (x == 0.0) return 1.0;
    // r^{N+1} = exp((N+1) log(1 - 1/(1+x))); expm1/log1p keep full relative
    // accuracy of 1 - r^{N+1} for r close to 0 and close to 1.
    const double log_r = std::log1p(-1.0 / (1.0 + x));
    return -std::expm1(static_cast<double>(spec.order + 1) * log_r);
}

double dn_symbol(double k_sq, const DeconvSpec& spec) {
    const double x = spec.filter.alpha * spec.filter.alpha * k_sq;
    if (spec.order == 0 || x == 0.0) return 1.0;
    const double value = (1.0 + x) * dn_residual_factor(k_sq, spec);
    const double upper = std::min(static_cast<double>(spec.order) + 1.0, 1.0 + x);
    return std::clamp(value, 1.0, upper);
}

HalfPower parse_half_power(std::string_view name) {
    if (name == "A_half") return HalfPower::A_half;
    if (name == "DN_half") return HalfPower::DN_half;
    if (name == "A_half_DN_half") return HalfPower::A_half_DN_half;
    if (name == "A_inv_half_DN_half") return HalfPower::A_inv_half_DN_half;
    throw ParameterError("unknown half-power selector '" + std::string(name) + "'");
}

double half_power_symbol(double k_sq, HalfPower which, const DeconvSpec& spec) {
    const double a = 1.0 + spec.filter.alpha * spec.filter.alpha * k_sq;
    switch (which) {
        case HalfPower::A_half:
            return std::sqrt(a);
        case HalfPower::DN_half:
            return std::sqrt(dn_symbol(k_sq, spec));
        case HalfPower::A_half_DN_half:
            return std::sqrt(a * dn_symbol(k_sq, spec));
        case HalfPower::A_inv_half_DN_half:
            return std::sqrt(dn_residual_factor(k_sq, spec));
    }
    throw ParameterError("unknown half-power selector");
}

std::vector<double> helmholtz_table(const Grid& g, const FilterSpec& spec) {
    spec.validate();
    std::vector<double> t(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) t[k] = helmholtz_symbol(g.k_sq(k), spec.alpha);
    return t;
}

std::vector<double> inverse_helmholtz_table(const Grid& g, const FilterSpec& spec) {
    spec.validate();
    std::vector<double> t(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) t[k] = 1.0 + spec.alpha * spec.alpha * g.k_sq(k);
    return t;
}

std::vector<double> deconvolution_table(const Grid& g, const DeconvSpec& spec) {
    spec.validate();
    std::vector<double> t(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) t[k] = dn_symbol(g.k_sq(k), spec);
    return t;
}

SpectralField apply_helmholtz(const SpectralField& f, const FilterSpec& spec) {
    SpectralField out = f;
    if (spec.alpha != 0.0) apply_symbol(out, helmholtz_table(f.grid(), spec));
    return out;
}

SpectralField apply_inverse_helmholtz(const SpectralField& f, const FilterSpec& spec) {
    SpectralField out = f;
    if (spec.alpha != 0.0) apply_symbol(out, inverse_helmholtz_table(f.grid(), spec));
    return out;
}

SpectralField apply_deconvolution(const SpectralField& f, const DeconvSpec& spec) {
    SpectralField out = f;
    if (spec.order != 0 && spec.filter.alpha != 0.0) apply_symbol(out, deconvolution_table(f.grid(), spec));
    return out;
}

SpectralField apply_half_power(const SpectralField& f, HalfPower which, const DeconvSpec& spec) {
    spec.validate();
    const Grid& g = f.grid();
    std::vector<double> t(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) t[k] = half_power_symbol(g.k_sq(k), which, spec);
    SpectralField out = f;
    apply_symbol(out, t);
    return out;
}

}  // namespace mhdadm
