#include "mhdadm/grid.hpp"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

#include "mhdadm/errors.hpp"

namespace mhdadm {

Grid::Grid(int n, double period)
    : n_(n),
      period_(period),
      size_(0),
      k_unit_(0.0),
      cutoff_(0) {
    if (n < 2) throw ParameterError("grid: n must be >= 2, got " + std::to_string(n));
    if (!(period > 0.0) || !std::isfinite(period))
        throw ParameterError("grid: period must be positive and finite");

    size_ = static_cast<std::size_t>(n) * n * n;
    k_unit_ = 2.0 * std::numbers::pi / period;
    cutoff_ = (n - 1) / 3;

    k1d_.resize(n);
    for (int i = 0; i < n; ++i) k1d_[i] = k_unit_ * alias(i);

    auto t = std::make_shared<Tables>();
    t->k_sq.resize(size_);
    t->mirror.resize(size_);
    t->nyquist.resize(size_);
    t->mask.resize(size_);
    const bool even = n % 2 == 0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int l = 0; l < n; ++l) {
                const std::size_t f = index(i, j, l);
                t->k_sq[f] = k1d_[i] * k1d_[i] + k1d_[j] * k1d_[j] + k1d_[l] * k1d_[l];
                t->mirror[f] = index((n - i) % n, (n - j) % n, (n - l) % n);
                const bool nyq = even && (i == n / 2 || j == n / 2 || l == n / 2);
                t->nyquist[f] = nyq;
                t->mask[f] = !nyq && std::abs(alias(i)) <= cutoff_ && std::abs(alias(j)) <= cutoff_ &&
                             std::abs(alias(l)) <= cutoff_;
            }
        }
    }
    tables_ = std::move(t);
}

}  // namespace mhdadm
