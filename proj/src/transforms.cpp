#include "mhdadm/transforms.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <vector>

#include "mhdadm/errors.hpp"
#include "mhdadm/parallel.hpp"

namespace mhdadm {

namespace {

// FFTW planning is not thread safe; execution through the new-array
// interface is. Plans are created once per grid size and never destroyed.
struct Plans {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

std::size_t half_size(int n) { return static_cast<std::size_t>(n) * n * (n / 2 + 1); }

const Plans& plans_for(int n) {
    static std::mutex mutex;
    static std::map<int, Plans> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    const std::size_t real_size = static_cast<std::size_t>(n) * n * n;
    double* real = fftw_alloc_real(real_size);
    fftw_complex* half = fftw_alloc_complex(half_size(n));
    Plans p;
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
    p.r2c = fftw_plan_dft_r2c_3d(n, n, n, real, half, flags);
    p.c2r = fftw_plan_dft_c2r_3d(n, n, n, half, real, flags | FFTW_DESTROY_INPUT);
    fftw_free(real);
    fftw_free(half);
    return cache.emplace(n, p).first->second;
}

void inverse_component(const Plans& plans, const Grid& g, std::span<const cplx> in, std::span<double> out,
                       std::vector<cplx>& half) {
    const int n = g.n();
    const int nh = n / 2 + 1;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int l = 0; l < nh; ++l)
                half[(static_cast<std::size_t>(i) * n + j) * nh + l] = in[g.index(i, j, l)];
    fftw_execute_dft_c2r(plans.c2r, reinterpret_cast<fftw_complex*>(half.data()), out.data());
}

void forward_component(const Plans& plans, const Grid& g, std::span<const double> in, std::span<cplx> out,
                       std::vector<cplx>& half, std::vector<double>& scratch) {
    const int n = g.n();
    const int nh = n / 2 + 1;
    // r2c may not preserve its input under FFTW_UNALIGNED; work on a copy.
    std::copy(in.begin(), in.end(), scratch.begin());
    fftw_execute_dft_r2c(plans.r2c, scratch.data(), reinterpret_cast<fftw_complex*>(half.data()));
    const double norm = 1.0 / static_cast<double>(g.size());
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            for (int l = 0; l < nh; ++l) {
                const cplx c = norm * half[(static_cast<std::size_t>(i) * n + j) * nh + l];
                out[g.index(i, j, l)] = c;
                if (l > 0) out[g.index((n - i) % n, (n - j) % n, n - l)] = std::conj(c);
            }
        }
    }
    // In the kz = 0 plane both k and -k come straight from the half spectrum,
    // which is conjugate symmetric there only to rounding.
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const std::size_t k = g.index(i, j, 0);
            const std::size_t m = g.mirror(k);
            if (m <= k) continue;
            const cplx avg = 0.5 * (out[k] + std::conj(out[m]));
            out[k] = avg;
            out[m] = std::conj(avg);
        }
    }
    out[0] = cplx{};
    for (std::size_t k = 0; k < g.size(); ++k)
        if (g.is_nyquist(k)) out[k] = cplx{};
}

}  // namespace

namespace detail {

void inverse_transform(const SpectralField& f, PhysicalField& out) {
    const Grid& g = f.grid();
    if (!(out.grid() == g) || out.components() != f.components())
        throw ShapeError("transform_to_physical: output shape mismatch");
    const Plans& plans = plans_for(g.n());
    const int comps = f.components();
#pragma omp parallel for num_threads(thread_count()) schedule(static) if (comps > 1)
    for (int c = 0; c < comps; ++c) {
        std::vector<cplx> half(half_size(g.n()));
        inverse_component(plans, g, f.component(c), out.component(c), half);
    }
}

void forward_transform(const PhysicalField& in, SpectralField& out) {
    const Grid& g = in.grid();
    if (!(out.grid() == g) || out.components() != in.components())
        throw ShapeError("transform_to_spectral: output shape mismatch");
    const Plans& plans = plans_for(g.n());
    const int comps = in.components();
#pragma omp parallel for num_threads(thread_count()) schedule(static) if (comps > 1)
    for (int c = 0; c < comps; ++c) {
        std::vector<cplx> half(half_size(g.n()));
        std::vector<double> scratch(g.size());
        forward_component(plans, g, in.component(c), out.component(c), half, scratch);
    }
}

}  // namespace detail

PhysicalField transform_to_physical(const SpectralField& f) {
    check_hermitian(f);
    PhysicalField out(f.grid(), f.components());
    detail::inverse_transform(f, out);
    return out;
}

SpectralField transform_to_spectral(const PhysicalField& g) {
    SpectralField out(g.grid(), g.components());
    detail::forward_transform(g, out);
    return out;
}

}  // namespace mhdadm
