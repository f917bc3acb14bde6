#pragma once

#include <stdexcept>
#include <string>

namespace mhdadm {

/// A spectral field violated the Hermitian symmetry required for a real field.
class SymmetryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Field shapes (grid size, component count) do not agree.
class ShapeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Invalid model / stepper / configuration parameters.
class ParameterError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An input state is not divergence free within tolerance.
class SolenoidalityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// NaN or Inf appeared while integrating.
class BlowUpError : public std::runtime_error {
public:
    BlowUpError(double time, double norm, const std::string& what)
        : std::runtime_error(what), time_(time), norm_(norm) {}

    double time() const noexcept { return time_; }
    double norm() const noexcept { return norm_; }

private:
    double time_;
    double norm_;
};

/// Configuration text could not be parsed or validated. Carries the
/// offending line number (0 when the error is not tied to a line); the
/// message reads "source:line: what".
class ConfigError : public std::runtime_error {
public:
    ConfigError(int line, const std::string& what, const std::string& source = "config")
        : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " + what),
          line_(line),
          detail_(what) {}

    int line() const noexcept { return line_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    int line_;
    std::string detail_;
};

/// Malformed or truncated snapshot file.
class SnapshotError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mhdadm
