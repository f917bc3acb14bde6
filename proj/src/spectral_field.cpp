#include "mhdadm/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mhdadm/errors.hpp"

namespace mhdadm {

SpectralField::SpectralField(const Grid& grid, int components)
    : grid_(grid), components_(components) {
    if (components != 1 && components != 3 && components != 9)
        throw ShapeError("spectral field: components must be 1, 3 or 9, got " + std::to_string(components));
    data_.assign(static_cast<std::size_t>(components) * grid.size(), cplx{});
}

void SpectralField::set_zero() { std::fill(data_.begin(), data_.end(), cplx{}); }

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    require_same_shape(*this, other, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
    require_same_shape(*this, other, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    for (auto& c : data_) c *= s;
    return *this;
}

SpectralField& SpectralField::axpy(double s, const SpectralField& other) {
    require_same_shape(*this, other, "axpy");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += s * other.data_[i];
    return *this;
}

PhysicalField::PhysicalField(const Grid& grid, int components)
    : grid_(grid), components_(components) {
    if (components != 1 && components != 3 && components != 9)
        throw ShapeError("physical field: components must be 1, 3 or 9, got " + std::to_string(components));
    data_.assign(static_cast<std::size_t>(components) * grid.size(), 0.0);
}

double hermitian_defect(const SpectralField& f) {
    const Grid& g = f.grid();
    double scale = 0.0;
    double defect = 0.0;
    for (int c = 0; c < f.components(); ++c) {
        auto comp = f.component(c);
        for (std::size_t k = 0; k < g.size(); ++k) {
            scale = std::max(scale, std::abs(comp[k]));
            defect = std::max(defect, std::abs(comp[g.mirror(k)] - std::conj(comp[k])));
        }
    }
    return scale > 0.0 ? defect / scale : 0.0;
}

void check_hermitian(const SpectralField& f, double tol) {
    const double d = hermitian_defect(f);
    if (!(d <= tol))
        throw SymmetryError("field is not Hermitian symmetric (relative defect " + std::to_string(d) + ")");
}

void make_hermitian(SpectralField& f) {
    const Grid& g = f.grid();
    for (int c = 0; c < f.components(); ++c) {
        auto comp = f.component(c);
        for (std::size_t k = 0; k < g.size(); ++k) {
            const std::size_t m = g.mirror(k);
            if (m < k) continue;
            const cplx avg = 0.5 * (comp[k] + std::conj(comp[m]));
            comp[k] = avg;
            comp[m] = std::conj(avg);
        }
    }
    clear_unrepresentable_modes(f);
}

void clear_unrepresentable_modes(SpectralField& f) {
    const Grid& g = f.grid();
    for (int c = 0; c < f.components(); ++c) {
        auto comp = f.component(c);
        comp[0] = cplx{};
        for (std::size_t k = 0; k < g.size(); ++k)
            if (g.is_nyquist(k)) comp[k] = cplx{};
    }
}

void require_same_shape(const SpectralField& a, const SpectralField& b, const char* where) {
    if (!(a.grid() == b.grid()) || a.components() != b.components())
        throw ShapeError(std::string(where) + ": field shapes differ");
}

}  // namespace mhdadm
