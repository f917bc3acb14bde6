#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "mhdadm/grid.hpp"

namespace mhdadm {

using cplx = std::complex<double>;

/// Fourier coefficients of a real scalar, vector or rank-2 tensor field on
/// the torus. Coefficients are stored component-major; each component is a
/// full n^3 complex array in Grid order. Tensor component (i, j) lives at
/// component index 3 * i + j.
///
/// Real-valued fields satisfy c(-k) = conj(c(k)) and the zero-mean
/// convention c(0) = 0. Neither is enforced on construction; see
/// check_hermitian() and the operations that require them.
class SpectralField {
public:
    SpectralField(const Grid& grid, int components);

    const Grid& grid() const noexcept { return grid_; }
    int components() const noexcept { return components_; }
    std::size_t modes() const noexcept { return grid_.size(); }

    std::span<cplx> component(int c) noexcept {
        return {data_.data() + static_cast<std::size_t>(c) * grid_.size(), grid_.size()};
    }
    std::span<const cplx> component(int c) const noexcept {
        return {data_.data() + static_cast<std::size_t>(c) * grid_.size(), grid_.size()};
    }

    cplx& at(int c, std::size_t flat) noexcept { return data_[static_cast<std::size_t>(c) * grid_.size() + flat]; }
    const cplx& at(int c, std::size_t flat) const noexcept {
        return data_[static_cast<std::size_t>(c) * grid_.size() + flat];
    }

    std::span<cplx> data() noexcept { return data_; }
    std::span<const cplx> data() const noexcept { return data_; }

    void set_zero();

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(double s);
    /// this += s * other
    SpectralField& axpy(double s, const SpectralField& other);

    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(double s, SpectralField a) { return a *= s; }

    friend bool operator==(const SpectralField& a, const SpectralField& b) {
        return a.grid_ == b.grid_ && a.components_ == b.components_ && a.data_ == b.data_;
    }

private:
    Grid grid_;
    int components_;
    std::vector<cplx> data_;
};

/// Grid samples of a real field, component-major like SpectralField.
class PhysicalField {
public:
    PhysicalField(const Grid& grid, int components);

    const Grid& grid() const noexcept { return grid_; }
    int components() const noexcept { return components_; }

    std::span<double> component(int c) noexcept {
        return {data_.data() + static_cast<std::size_t>(c) * grid_.size(), grid_.size()};
    }
    std::span<const double> component(int c) const noexcept {
        return {data_.data() + static_cast<std::size_t>(c) * grid_.size(), grid_.size()};
    }
    double& at(int c, std::size_t flat) noexcept { return data_[static_cast<std::size_t>(c) * grid_.size() + flat]; }
    double at(int c, std::size_t flat) const noexcept {
        return data_[static_cast<std::size_t>(c) * grid_.size() + flat];
    }
    std::span<double> data() noexcept { return data_; }
    std::span<const double> data() const noexcept { return data_; }

private:
    Grid grid_;
    int components_;
    std::vector<double> data_;
};

/// Largest |c(-k) - conj(c(k))| over all modes and components, relative to
/// the largest coefficient magnitude (0 for the zero field).
double hermitian_defect(const SpectralField& f);

/// Throws SymmetryError if hermitian_defect(f) exceeds tol.
void check_hermitian(const SpectralField& f, double tol = 1e-12);

/// Replace c(k) and c(-k) by their conjugate-symmetric average, then clear
/// k = 0 and the Nyquist planes.
void make_hermitian(SpectralField& f);

/// Zero the k = 0 and Nyquist coefficients.
void clear_unrepresentable_modes(SpectralField& f);

void require_same_shape(const SpectralField& a, const SpectralField& b, const char* where);

}  // namespace mhdadm
