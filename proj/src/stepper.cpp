#include "mhdadm/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mhdadm/errors.hpp"
#include "mhdadm/spectral_ops.hpp"
#include "mhdadm/transforms.hpp"

namespace mhdadm {

std::string_view to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::IF_RK4:
            return "if_rk4";
    }
    return "?";
}

Scheme parse_scheme(std::string_view name) {
    if (name == "if_rk4" || name == "IF_RK4") return Scheme::IF_RK4;
    throw ParameterError("unknown time scheme '" + std::string(name) + "' (expected if_rk4)");
}

void StepperConfig::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ParameterError("dt must be positive and finite");
    if (!(cfl_safety > 0.0 && cfl_safety <= 1.0)) throw ParameterError("cfl_safety must lie in (0, 1]");
}

namespace {

std::vector<double> decay_table(const Grid& g, double diffusivity, double dt, bool flip) {
    std::vector<double> t(g.size());
    const double sign = flip ? 1.0 : -1.0;
    for (std::size_t k = 0; k < g.size(); ++k) t[k] = std::exp(sign * diffusivity * g.k_sq(k) * dt);
    return t;
}

// out = factor * (x + s * y), componentwise per mode.
SpectralField scaled_sum(const std::vector<double>& factor, const SpectralField& x, double s, const SpectralField& y) {
    SpectralField out(x.grid(), x.components());
    for (int c = 0; c < x.components(); ++c) {
        auto o = out.component(c);
        auto xc = x.component(c);
        auto yc = y.component(c);
        for (std::size_t k = 0; k < o.size(); ++k) o[k] = factor[k] * (xc[k] + s * yc[k]);
    }
    return out;
}

SpectralField scaled(const std::vector<double>& factor, const SpectralField& x) {
    SpectralField out = x;
    apply_symbol(out, factor);
    return out;
}

double finite_norm(const SpectralField& f) {
    double acc = 0.0;
    for (const cplx& c : f.data()) acc += std::norm(c);
    return std::sqrt(acc);
}

}  // namespace

Stepper::Stepper(const Grid& grid, const ModelParams& params, const StepperConfig& config)
    : ops_(grid, params), config_(config) {
    config.validate();
    const bool flip = config.hooks.flip_diffusion;
    half_w_ = decay_table(grid, params.nu, 0.5 * config.dt, flip);
    full_w_ = decay_table(grid, params.nu, config.dt, flip);
    half_b_ = decay_table(grid, params.mu, 0.5 * config.dt, flip);
    full_b_ = decay_table(grid, params.mu, config.dt, flip);
}

std::pair<SpectralField, SpectralField> Stepper::tendency(const SolverState& s) const {
    if (config_.hooks.disable_nonlinear)
        return {leray_project(s.forcing), SpectralField(s.b.grid(), 3)};
    return nonlinear_tendency(s, ops_);
}

SolverState Stepper::step(const SolverState& s) const {
    const double h = config_.dt;
    auto stage = [&](SpectralField w, SpectralField b, double t) {
        return SolverState{t, std::move(w), std::move(b), s.forcing};
    };

    const auto [aw, ab] = tendency(s);
    const SolverState s1 =
        stage(scaled_sum(half_w_, s.w, 0.5 * h, aw), scaled_sum(half_b_, s.b, 0.5 * h, ab), s.time + 0.5 * h);
    const auto [bw, bb] = tendency(s1);

    const SpectralField ew_half = scaled(half_w_, s.w);
    const SpectralField eb_half = scaled(half_b_, s.b);
    SolverState s2 = stage(ew_half, eb_half, s.time + 0.5 * h);
    s2.w.axpy(0.5 * h, bw);
    s2.b.axpy(0.5 * h, bb);
    const auto [cw, cb] = tendency(s2);

    const SpectralField ew_full = scaled(full_w_, s.w);
    const SpectralField eb_full = scaled(full_b_, s.b);
    SolverState s3 = stage(ew_full, eb_full, s.time + h);
    s3.w.axpy(h, scaled(half_w_, cw));
    s3.b.axpy(h, scaled(half_b_, cb));
    const auto [dw, db] = tendency(s3);

    SolverState out = stage(ew_full, eb_full, s.time + h);
    out.w.axpy(h / 6.0, scaled(full_w_, aw));
    out.w.axpy(h / 3.0, scaled(half_w_, bw + cw));
    out.w.axpy(h / 6.0, dw);
    out.b.axpy(h / 6.0, scaled(full_b_, ab));
    out.b.axpy(h / 3.0, scaled(half_b_, bb + cb));
    out.b.axpy(h / 6.0, db);

    const double nw = finite_norm(out.w);
    const double nb = finite_norm(out.b);
    if (!std::isfinite(nw) || !std::isfinite(nb)) {
        const double bad = std::isfinite(nw) ? nb : nw;
        throw BlowUpError(out.time, bad,
                          "non-finite state at t = " + std::to_string(out.time) + " (field norm " +
                              std::to_string(bad) + ")");
    }
    return out;
}

SolverState step(const SolverState& s, const ModelParams& p, const StepperConfig& c) {
    return Stepper(s.w.grid(), p, c).step(s);
}

double estimate_dt(const SolverState& s, const ModelParams& p, const StepperConfig& c) {
    c.validate();
    const ModelOperators ops(s.w.grid(), p);
    const Grid& g = s.w.grid();
    double max_speed = 0.0;
    for (int i = 1; i <= 2; ++i) {
        SpectralField adv = i == 1 ? s.w : s.b;
        apply_symbol(adv, ops.advect(i));
        const PhysicalField phys = transform_to_physical(adv);
        for (std::size_t x = 0; x < g.size(); ++x) {
            const double a = phys.at(0, x), b = phys.at(1, x), d = phys.at(2, x);
            max_speed = std::max(max_speed, std::sqrt(a * a + b * b + d * d));
        }
    }
    if (!(max_speed > 0.0)) return c.dt;
    return std::min(c.dt, c.cfl_safety * g.spacing() / max_speed);
}

}  // namespace mhdadm
