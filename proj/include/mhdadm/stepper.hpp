#pragma once

#include <string_view>
#include <vector>

#include "mhdadm/models.hpp"

namespace mhdadm {

enum class Scheme { IF_RK4 };

std::string_view to_string(Scheme scheme);
Scheme parse_scheme(std::string_view name);

/// Test-only switches. They break the physics on purpose and exist so that
/// checks can demonstrate they detect the failure they are meant to catch.
struct StepperHooks {
    bool disable_nonlinear = false;
    bool flip_diffusion = false;

    friend bool operator==(const StepperHooks&, const StepperHooks&) = default;
};

struct StepperConfig {
    double dt = 1e-3;
    Scheme scheme = Scheme::IF_RK4;
    double cfl_safety = 0.5;
    StepperHooks hooks;

    void validate() const;
    friend bool operator==(const StepperConfig&, const StepperConfig&) = default;
};

/// Integrating-factor RK4: diffusion exp(-nu |k|^2 t), exp(-mu |k|^2 t) is
/// applied exactly per mode, the remaining tendency with classical RK4.
/// Owns the per-model symbol tables; not reentrant.
class Stepper {
public:
    Stepper(const Grid& grid, const ModelParams& params, const StepperConfig& config);

    const ModelOperators& operators() const noexcept { return ops_; }
    const StepperConfig& config() const noexcept { return config_; }

    /// Advance by config().dt. Throws BlowUpError on non-finite values; the
    /// input state is left untouched in that case.
    SolverState step(const SolverState& s) const;

private:
    std::pair<SpectralField, SpectralField> tendency(const SolverState& s) const;

    ModelOperators ops_;
    StepperConfig config_;
    // exp(-nu k^2 dt/2), exp(-nu k^2 dt), same for mu
    std::vector<double> half_w_, full_w_, half_b_, full_b_;
};

SolverState step(const SolverState& s, const ModelParams& p, const StepperConfig& c);

/// cfl_safety * dx / max |advected field| over both advected fields (D_N w,
/// D_N b for the deconvolution models), capped by c.dt. Returns c.dt for a
/// state at rest.
double estimate_dt(const SolverState& s, const ModelParams& p, const StepperConfig& c);

}  // namespace mhdadm
