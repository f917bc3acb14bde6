#include "mhdadm/initial_conditions.hpp"

#include <cmath>
#include <random>

#include "mhdadm/errors.hpp"
#include "mhdadm/snapshot.hpp"
#include "mhdadm/spectral_ops.hpp"

namespace mhdadm {

SpectralField taylor_green_velocity(const Grid& g, double amplitude) {
    SpectralField u(g, 3);
    const double a = amplitude / 8.0;
    for (int sx : {-1, 1}) {
        for (int sy : {-1, 1}) {
            for (int sz : {-1, 1}) {
                const std::size_t k = g.index(g.wrap(sx), g.wrap(sy), g.wrap(sz));
                // sin(x) cos(y) cos(z) and -cos(x) sin(y) cos(z)
                u.at(0, k) = cplx(0.0, -a * sx);
                u.at(1, k) = cplx(0.0, a * sy);
            }
        }
    }
    return u;
}

SpectralField taylor_green_magnetic(const Grid& g, double amplitude) {
    SpectralField b(g, 3);
    b.at(2, g.index(1, 0, 0)) = 0.5 * amplitude;
    b.at(2, g.index(g.wrap(-1), 0, 0)) = 0.5 * amplitude;
    return b;
}

SpectralField random_solenoidal(const Grid& g, std::uint64_t seed, double slope, double k_peak, double rms,
                                bool dealiased) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    SpectralField f(g, 3);
    for (std::size_t k = 1; k < g.size(); ++k) {
        if (g.is_nyquist(k) || (dealiased && !g.in_dealias_mask(k))) continue;
        const double kl = std::sqrt(g.k_sq(k)) / g.k_unit();
        const double envelope = std::sqrt(std::pow(kl, slope - 2.0) * std::exp(-2.0 * (kl / k_peak) * (kl / k_peak)));
        for (int c = 0; c < 3; ++c) {
            const double re = normal(rng);
            const double im = normal(rng);
            f.at(c, k) = envelope * cplx(re, im);
        }
    }
    make_hermitian(f);
    leray_project_in_place(f);
    const double norm = l2_norm(f);
    if (norm > 0.0) f *= rms / norm;
    return f;
}

std::pair<SpectralField, SpectralField> initial_data(const SimConfig& cfg) {
    const Grid g = cfg.make_grid();
    switch (cfg.ic.kind) {
        case IcKind::TaylorGreenMhd:
            return {taylor_green_velocity(g, cfg.ic.amplitude), taylor_green_magnetic(g, cfg.ic.b_amplitude)};
        case IcKind::RandomSolenoidal: {
            const bool dealiased = cfg.params.dealias;
            return {random_solenoidal(g, cfg.ic.seed, cfg.ic.spectrum_slope, cfg.ic.k_peak, cfg.ic.amplitude, dealiased),
                    random_solenoidal(g, cfg.ic.seed ^ 0x9E3779B97F4A7C15ull, cfg.ic.spectrum_slope, cfg.ic.k_peak,
                                      cfg.ic.b_amplitude, dealiased)};
        }
        case IcKind::FromFile: {
            SolverState file = read_snapshot(cfg.ic.path);
            if (!(file.w.grid() == g))
                throw ParameterError("initial condition file '" + cfg.ic.path + "' has grid n = " +
                                     std::to_string(file.w.grid().n()) + " but the configuration asks for n = " +
                                     std::to_string(g.n()) + " (or a different period)");
            const double dw = divergence_residual(file.w);
            const double db = divergence_residual(file.b);
            if (!(dw <= kSolenoidalInputTolerance) || !(db <= kSolenoidalInputTolerance))
                throw SolenoidalityError("initial condition file '" + cfg.ic.path + "' is not divergence free");
            return {std::move(file.w), std::move(file.b)};
        }
    }
    throw ParameterError("unknown initial condition kind");
}

SpectralField forcing_field(const SimConfig& cfg) {
    const Grid g = cfg.make_grid();
    switch (cfg.forcing.kind) {
        case ForcingKind::None:
            return SpectralField(g, 3);
        case ForcingKind::TaylorGreen:
            return taylor_green_velocity(g, cfg.forcing.amplitude);
    }
    throw ParameterError("unknown forcing kind");
}

SolverState filtered_state(const Grid& g, const ModelParams& p, const SpectralField& u0, const SpectralField& b0,
                           const SpectralField& f) {
    const ModelOperators ops(g, p);
    SolverState s{0.0, u0, b0, f};
    apply_symbol(s.w, ops.filter(1));
    apply_symbol(s.b, ops.filter(2));
    apply_symbol(s.forcing, ops.filter(1));
    if (p.dealias) {
        dealias_in_place(s.w);
        dealias_in_place(s.b);
        dealias_in_place(s.forcing);
    }
    return s;
}

SolverState make_initial_condition(const SimConfig& cfg) {
    const Grid g = cfg.make_grid();
    auto [u0, b0] = initial_data(cfg);
    return filtered_state(g, cfg.params, u0, b0, forcing_field(cfg));
}

}  // namespace mhdadm
