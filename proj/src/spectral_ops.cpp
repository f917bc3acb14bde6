#include "mhdadm/spectral_ops.hpp"

#include <algorithm>
#include <cmath>

#include "mhdadm/errors.hpp"
#include "mhdadm/parallel.hpp"

namespace mhdadm {

namespace {

// i * k * c, written out so that conjugate symmetry survives bitwise.
inline cplx times_ik(double k, cplx c) { return {-k * c.imag(), k * c.real()}; }

}  // namespace

SpectralField gradient(const SpectralField& f) {
    if (f.components() == 9) throw ShapeError("gradient: rank-2 input not supported");
    const Grid& g = f.grid();
    SpectralField out(g, f.components() * 3);
    for (int i = 0; i < f.components(); ++i) {
        auto src = f.component(i);
        for (int j = 0; j < 3; ++j) {
            auto dst = out.component(3 * i + j);
            for (std::size_t k = 0; k < g.size(); ++k) dst[k] = times_ik(g.wavevector(k)[j], src[k]);
        }
    }
    return out;
}

SpectralField divergence(const SpectralField& f) {
    if (f.components() == 1) throw ShapeError("divergence: scalar input not supported");
    const Grid& g = f.grid();
    const int rows = f.components() / 3;
    SpectralField out(g, rows);
    for (int i = 0; i < rows; ++i) {
        auto dst = out.component(i);
        for (std::size_t k = 0; k < g.size(); ++k) {
            const auto kv = g.wavevector(k);
            cplx acc = times_ik(kv[0], f.at(3 * i + 0, k));
            acc += times_ik(kv[1], f.at(3 * i + 1, k));
            acc += times_ik(kv[2], f.at(3 * i + 2, k));
            dst[k] = acc;
        }
    }
    return out;
}

SpectralField laplacian(const SpectralField& f) {
    SpectralField out = f;
    const Grid& g = f.grid();
    for (int c = 0; c < f.components(); ++c) {
        auto d = out.component(c);
        for (std::size_t k = 0; k < g.size(); ++k) d[k] *= -g.k_sq(k);
    }
    return out;
}

void leray_project_in_place(SpectralField& f) {
    if (f.components() != 3) throw ShapeError("leray_project: vector field required");
    const Grid& g = f.grid();
    auto f0 = f.component(0);
    auto f1 = f.component(1);
    auto f2 = f.component(2);
    const auto size = static_cast<std::ptrdiff_t>(g.size());
#pragma omp parallel for num_threads(thread_count()) schedule(static)
    for (std::ptrdiff_t kk = 0; kk < size; ++kk) {
        const auto k = static_cast<std::size_t>(kk);
        const double ksq = g.k_sq(k);
        if (ksq == 0.0) {
            f0[k] = f1[k] = f2[k] = cplx{};
            continue;
        }
        const auto kv = g.wavevector(k);
        const cplx kdot = (kv[0] * f0[k] + kv[1] * f1[k] + kv[2] * f2[k]) / ksq;
        f0[k] -= kv[0] * kdot;
        f1[k] -= kv[1] * kdot;
        f2[k] -= kv[2] * kdot;
    }
}

SpectralField leray_project(const SpectralField& f) {
    SpectralField out = f;
    leray_project_in_place(out);
    return out;
}

void dealias_in_place(SpectralField& f) {
    const Grid& g = f.grid();
    for (int c = 0; c < f.components(); ++c) {
        auto d = f.component(c);
        for (std::size_t k = 0; k < g.size(); ++k)
            if (!g.in_dealias_mask(k)) d[k] = cplx{};
    }
}

SpectralField dealias(const SpectralField& f) {
    SpectralField out = f;
    dealias_in_place(out);
    return out;
}

void apply_symbol(SpectralField& f, const std::vector<double>& symbol) {
    if (symbol.size() != f.modes()) throw ShapeError("apply_symbol: symbol length mismatch");
    for (int c = 0; c < f.components(); ++c) {
        auto d = f.component(c);
        for (std::size_t k = 0; k < d.size(); ++k) d[k] *= symbol[k];
    }
}

double inner_product(const SpectralField& a, const SpectralField& b) {
    require_same_shape(a, b, "inner_product");
    double acc = 0.0;
    auto da = a.data();
    auto db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i)
        acc += da[i].real() * db[i].real() + da[i].imag() * db[i].imag();
    return acc;
}

double l2_norm(const SpectralField& f) { return std::sqrt(std::max(0.0, inner_product(f, f))); }

double divergence_residual(const SpectralField& f) {
    if (f.components() != 3) throw ShapeError("divergence_residual: vector field required");
    const Grid& g = f.grid();
    double num = 0.0;
    double den = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        const auto kv = g.wavevector(k);
        const cplx a = f.at(0, k), b = f.at(1, k), c = f.at(2, k);
        num = std::max(num, std::abs(kv[0] * a + kv[1] * b + kv[2] * c));
        den = std::max(den, std::sqrt(g.k_sq(k) * (std::norm(a) + std::norm(b) + std::norm(c))));
    }
    return den > 0.0 ? num / den : 0.0;
}

bool supported_in_mask(const SpectralField& f) {
    const Grid& g = f.grid();
    for (int c = 0; c < f.components(); ++c) {
        auto d = f.component(c);
        for (std::size_t k = 0; k < g.size(); ++k)
            if (!g.in_dealias_mask(k) && d[k] != cplx{}) return false;
    }
    return true;
}

}  // namespace mhdadm
