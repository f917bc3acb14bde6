#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>

#include "mhdadm/models.hpp"
#include "mhdadm/stepper.hpp"

namespace mhdadm {

enum class IcKind { TaylorGreenMhd, RandomSolenoidal, FromFile };
enum class ForcingKind { None, TaylorGreen };

std::string_view to_string(IcKind kind);
std::string_view to_string(ForcingKind kind);

struct GridConfig {
    int n = 16;
    double L = 2.0 * std::numbers::pi;

    friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

/// Initial data u0, B0 before filtering.
struct IcConfig {
    IcKind kind = IcKind::TaylorGreenMhd;
    std::uint64_t seed = 1;
    double spectrum_slope = 2.0;   ///< per-shell spectrum ~ k^slope exp(-2 (k / k_peak)^2)
    double k_peak = 2.0;           ///< in units of the lattice spacing 2 pi / L
    double amplitude = 1.0;        ///< velocity amplitude (Taylor-Green) or rms (random)
    double b_amplitude = 0.5;      ///< magnetic amplitude, same convention
    std::string path;              ///< snapshot holding u0, B0 for from_file

    friend bool operator==(const IcConfig&, const IcConfig&) = default;
};

struct ForcingConfig {
    ForcingKind kind = ForcingKind::None;
    double amplitude = 0.0;

    friend bool operator==(const ForcingConfig&, const ForcingConfig&) = default;
};

struct SimConfig {
    GridConfig grid;
    ModelParams params;
    StepperConfig stepper;
    double t_end = 0.5;
    int output_every = 10;
    IcConfig ic;
    ForcingConfig forcing;
    std::string out_dir = "out";

    Grid make_grid() const { return Grid(grid.n, grid.L); }

    friend bool operator==(const SimConfig&, const SimConfig&) = default;
};

/// Parse flat `section.key = value` text. Blank lines and lines starting
/// with '#' are ignored. Throws ConfigError naming the offending line.
SimConfig parse_config(std::string_view text);
SimConfig load_config(const std::string& path);

/// Text that parse_config() maps back to an equal SimConfig.
std::string serialize_config(const SimConfig& cfg);

/// Cross-field checks (grid size, model hypotheses, times). parse_config()
/// calls this; it is public for configurations built in code.
void validate_config(const SimConfig& cfg);

}  // namespace mhdadm
