#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

namespace mhdadm {

/// Uniform n^3 grid on the cubic torus [0, L)^3 together with its Fourier
/// lattice (2 pi / L) Z^3.
///
/// Modes are stored in C order over (kx index, ky index, kz index). Index i
/// along an axis maps to the signed alias i for i < n/2 and i - n otherwise,
/// so the Nyquist index n/2 aliases to -n/2. The Nyquist planes and k = 0
/// never carry data.
class Grid {
public:
    Grid(int n, double period);

    int n() const noexcept { return n_; }
    double period() const noexcept { return period_; }
    std::size_t size() const noexcept { return size_; }
    double spacing() const noexcept { return period_ / n_; }
    double k_unit() const noexcept { return k_unit_; }

    /// Largest |signed index| kept by the two-thirds rule. Products of two
    /// retained modes never alias back onto a retained mode.
    int dealias_cutoff() const noexcept { return cutoff_; }

    int alias(int i) const noexcept { return i < n_ / 2 ? i : i - n_; }
    int wrap(int signed_index) const noexcept {
        int r = signed_index % n_;
        return r < 0 ? r + n_ : r;
    }

    std::size_t index(int i, int j, int l) const noexcept {
        return (static_cast<std::size_t>(i) * n_ + j) * n_ + l;
    }
    std::array<int, 3> indices(std::size_t flat) const noexcept {
        const int l = static_cast<int>(flat % n_);
        const int j = static_cast<int>((flat / n_) % n_);
        const int i = static_cast<int>(flat / (static_cast<std::size_t>(n_) * n_));
        return {i, j, l};
    }
    std::array<int, 3> signed_indices(std::size_t flat) const noexcept {
        auto [i, j, l] = indices(flat);
        return {alias(i), alias(j), alias(l)};
    }

    std::array<double, 3> wavevector(std::size_t flat) const noexcept {
        auto [i, j, l] = indices(flat);
        return {k1d_[i], k1d_[j], k1d_[l]};
    }
    double k_sq(std::size_t flat) const noexcept { return tables_->k_sq[flat]; }

    /// Flat index of the mode -k.
    std::size_t mirror(std::size_t flat) const noexcept { return tables_->mirror[flat]; }

    bool is_nyquist(std::size_t flat) const noexcept { return tables_->nyquist[flat] != 0; }
    bool in_dealias_mask(std::size_t flat) const noexcept { return tables_->mask[flat] != 0; }

    /// 1D wavenumbers (2 pi / L) * alias(i).
    const std::vector<double>& k1d() const noexcept { return k1d_; }

    friend bool operator==(const Grid& a, const Grid& b) noexcept {
        return a.n_ == b.n_ && a.period_ == b.period_;
    }

private:
    struct Tables {
        std::vector<double> k_sq;
        std::vector<std::size_t> mirror;
        std::vector<unsigned char> nyquist;
        std::vector<unsigned char> mask;
    };

    int n_;
    double period_;
    std::size_t size_;
    double k_unit_;
    int cutoff_;
    std::vector<double> k1d_;
    std::shared_ptr<const Tables> tables_;
};

}  // namespace mhdadm
