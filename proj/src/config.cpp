#include "mhdadm/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "mhdadm/errors.hpp"

namespace mhdadm {

std::string_view to_string(IcKind kind) {
    switch (kind) {
        case IcKind::TaylorGreenMhd:
            return "taylor_green_mhd";
        case IcKind::RandomSolenoidal:
            return "random_solenoidal";
        case IcKind::FromFile:
            return "from_file";
    }
    return "?";
}

std::string_view to_string(ForcingKind kind) {
    switch (kind) {
        case ForcingKind::None:
            return "none";
        case ForcingKind::TaylorGreen:
            return "taylor_green";
    }
    return "?";
}

namespace {

using LineMap = std::map<std::string, int, std::less<>>;

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(std::string_view v, int line, std::string_view key) {
    double out = 0.0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw ConfigError(line, std::string(key) + ": expected a number, got '" + std::string(v) + "'");
    return out;
}

template <typename Int>
Int to_integer(std::string_view v, int line, std::string_view key) {
    Int out = 0;
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc() || res.ptr != v.data() + v.size())
        throw ConfigError(line, std::string(key) + ": expected an integer, got '" + std::string(v) + "'");
    return out;
}

bool to_bool(std::string_view v, int line, std::string_view key) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw ConfigError(line, std::string(key) + ": expected true or false, got '" + std::string(v) + "'");
}

std::string number(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

void validate_with_lines(const SimConfig& cfg, const LineMap& lines) {
    auto fail = [&](std::string_view key, const std::string& msg) {
        const auto it = lines.find(key);
        throw ConfigError(it == lines.end() ? 0 : it->second, std::string(key) + ": " + msg);
    };
    const int n = cfg.grid.n;
    if (n < 8 || n > 256 || (n & (n - 1)) != 0) fail("grid.n", "must be a power of two in [8, 256]");
    if (!(cfg.grid.L > 0.0)) fail("grid.L", "must be positive");
    if (!(cfg.t_end >= 0.0)) fail("run.t_end", "must be >= 0");
    if (cfg.output_every < 1) fail("run.output_every", "must be >= 1");
    if (!(cfg.ic.k_peak > 0.0)) fail("ic.k_peak", "must be positive");
    if (!(cfg.ic.amplitude >= 0.0)) fail("ic.amplitude", "must be >= 0");
    if (!(cfg.ic.b_amplitude >= 0.0)) fail("ic.b_amplitude", "must be >= 0");
    if (cfg.ic.kind == IcKind::FromFile && cfg.ic.path.empty()) fail("ic.path", "required for ic.kind = from_file");

    const ModelParams& p = cfg.params;
    if (!(p.nu > 0.0)) fail("model.nu", "must be > 0");
    if (!(p.mu > 0.0)) fail("model.mu", "must be > 0");
    if (!(p.filter1.alpha >= 0.0)) fail("model.alpha1", "must be >= 0");
    if (!(p.filter2.alpha >= 0.0)) fail("model.alpha2", "must be >= 0");
    if (p.order1 < 0) fail("model.order1", "must be >= 0");
    if (p.order2 < 0) fail("model.order2", "must be >= 0");
    if (p.kind == ModelKind::ModelA && !(p.filter1.alpha > 0.0)) fail("model.alpha1", "model_a requires alpha1 > 0");
    if (p.kind == ModelKind::ModelA && !(p.filter2.alpha > 0.0))
        fail("model.alpha2", "model_a requires alpha2 > 0 (alpha2 = 0 is model_b)");
    if (p.kind == ModelKind::ModelB && !(p.filter1.alpha > 0.0)) fail("model.alpha1", "model_b requires alpha1 > 0");
    if (p.kind == ModelKind::ModelB && p.filter2.alpha != 0.0)
        fail("model.alpha2", "model_b has no magnetic filter; alpha2 must be 0");
    if (p.kind == ModelKind::ModelB && p.order2 != 0) fail("model.order2", "model_b requires order2 = 0");

    if (!(cfg.stepper.dt > 0.0)) fail("stepper.dt", "must be > 0");
    if (!(cfg.stepper.cfl_safety > 0.0 && cfg.stepper.cfl_safety <= 1.0))
        fail("stepper.cfl_safety", "must lie in (0, 1]");

    // Anything the checks above missed.
    try {
        p.validate();
        cfg.stepper.validate();
    } catch (const ParameterError& e) {
        throw ConfigError(0, e.what());
    }
}

}  // namespace

void validate_config(const SimConfig& cfg) { validate_with_lines(cfg, {}); }

SimConfig parse_config(std::string_view text) {
    SimConfig cfg;
    LineMap lines;

    using Setter = std::function<void(SimConfig&, std::string_view, int, std::string_view)>;
    const std::map<std::string, Setter, std::less<>> setters = {
        {"grid.n", [](SimConfig& c, auto v, int l, auto k) { c.grid.n = to_integer<int>(v, l, k); }},
        {"grid.L", [](SimConfig& c, auto v, int l, auto k) { c.grid.L = to_double(v, l, k); }},
        {"model.kind",
         [](SimConfig& c, auto v, int l, auto) {
             try {
                 c.params.kind = parse_model_kind(v);
             } catch (const ParameterError& e) {
                 throw ConfigError(l, e.what());
             }
         }},
        {"model.nu", [](SimConfig& c, auto v, int l, auto k) { c.params.nu = to_double(v, l, k); }},
        {"model.mu", [](SimConfig& c, auto v, int l, auto k) { c.params.mu = to_double(v, l, k); }},
        {"model.alpha1", [](SimConfig& c, auto v, int l, auto k) { c.params.filter1.alpha = to_double(v, l, k); }},
        {"model.alpha2", [](SimConfig& c, auto v, int l, auto k) { c.params.filter2.alpha = to_double(v, l, k); }},
        {"model.order1", [](SimConfig& c, auto v, int l, auto k) { c.params.order1 = to_integer<int>(v, l, k); }},
        {"model.order2", [](SimConfig& c, auto v, int l, auto k) { c.params.order2 = to_integer<int>(v, l, k); }},
        {"numerics.dealias", [](SimConfig& c, auto v, int l, auto k) { c.params.dealias = to_bool(v, l, k); }},
        {"stepper.dt", [](SimConfig& c, auto v, int l, auto k) { c.stepper.dt = to_double(v, l, k); }},
        {"stepper.scheme",
         [](SimConfig& c, auto v, int l, auto) {
             try {
                 c.stepper.scheme = parse_scheme(v);
             } catch (const ParameterError& e) {
                 throw ConfigError(l, e.what());
             }
         }},
        {"stepper.cfl_safety", [](SimConfig& c, auto v, int l, auto k) { c.stepper.cfl_safety = to_double(v, l, k); }},
        {"run.t_end", [](SimConfig& c, auto v, int l, auto k) { c.t_end = to_double(v, l, k); }},
        {"run.output_every", [](SimConfig& c, auto v, int l, auto k) { c.output_every = to_integer<int>(v, l, k); }},
        {"run.out_dir", [](SimConfig& c, auto v, int, auto) { c.out_dir = std::string(v); }},
        {"ic.kind",
         [](SimConfig& c, auto v, int l, auto) {
             if (v == "taylor_green_mhd")
                 c.ic.kind = IcKind::TaylorGreenMhd;
             else if (v == "random_solenoidal")
                 c.ic.kind = IcKind::RandomSolenoidal;
             else if (v == "from_file")
                 c.ic.kind = IcKind::FromFile;
             else
                 throw ConfigError(l, "ic.kind: unknown initial condition '" + std::string(v) + "'");
         }},
        {"ic.seed", [](SimConfig& c, auto v, int l, auto k) { c.ic.seed = to_integer<std::uint64_t>(v, l, k); }},
        {"ic.spectrum_slope", [](SimConfig& c, auto v, int l, auto k) { c.ic.spectrum_slope = to_double(v, l, k); }},
        {"ic.k_peak", [](SimConfig& c, auto v, int l, auto k) { c.ic.k_peak = to_double(v, l, k); }},
        {"ic.amplitude", [](SimConfig& c, auto v, int l, auto k) { c.ic.amplitude = to_double(v, l, k); }},
        {"ic.b_amplitude", [](SimConfig& c, auto v, int l, auto k) { c.ic.b_amplitude = to_double(v, l, k); }},
        {"ic.path", [](SimConfig& c, auto v, int, auto) { c.ic.path = std::string(v); }},
        {"forcing.kind",
         [](SimConfig& c, auto v, int l, auto) {
             if (v == "none")
                 c.forcing.kind = ForcingKind::None;
             else if (v == "taylor_green")
                 c.forcing.kind = ForcingKind::TaylorGreen;
             else
                 throw ConfigError(l, "forcing.kind: unknown forcing '" + std::string(v) + "'");
         }},
        {"forcing.amplitude", [](SimConfig& c, auto v, int l, auto k) { c.forcing.amplitude = to_double(v, l, k); }},
    };

    int line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        const std::string_view line = trim(text.substr(pos, end - pos));
        ++line_no;
        pos = end + 1;
        if (line.empty() || line.front() == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos) throw ConfigError(line_no, "expected 'key = value'");
        const std::string_view key = trim(line.substr(0, eq));
        const std::string_view value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError(line_no, "unknown key '" + std::string(key) + "'");
        if (lines.contains(key)) throw ConfigError(line_no, "duplicate key '" + std::string(key) + "'");
        if (value.empty()) throw ConfigError(line_no, std::string(key) + ": missing value");
        it->second(cfg, value, line_no, key);
        lines.emplace(std::string(key), line_no);
    }

    // The second model has no magnetic filter; unless stated otherwise its
    // magnetic parameters default to zero rather than to the model_a defaults.
    if (cfg.params.kind == ModelKind::ModelB) {
        if (!lines.contains("model.alpha2")) cfg.params.filter2.alpha = 0.0;
        if (!lines.contains("model.order2")) cfg.params.order2 = 0;
    }

    validate_with_lines(cfg, lines);
    return cfg;
}

SimConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(0, "cannot open config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_config(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(e.line(), e.detail(), path);
    }
}

std::string serialize_config(const SimConfig& cfg) {
    std::ostringstream out;
    out << "# mhd-adm configuration\n";
    out << "grid.n = " << cfg.grid.n << '\n';
    out << "grid.L = " << number(cfg.grid.L) << '\n';
    out << "model.kind = " << to_string(cfg.params.kind) << '\n';
    out << "model.nu = " << number(cfg.params.nu) << '\n';
    out << "model.mu = " << number(cfg.params.mu) << '\n';
    out << "model.alpha1 = " << number(cfg.params.filter1.alpha) << '\n';
    out << "model.alpha2 = " << number(cfg.params.filter2.alpha) << '\n';
    out << "model.order1 = " << cfg.params.order1 << '\n';
    out << "model.order2 = " << cfg.params.order2 << '\n';
    if (!cfg.params.dealias) out << "numerics.dealias = false\n";
    out << "stepper.dt = " << number(cfg.stepper.dt) << '\n';
    out << "stepper.scheme = " << to_string(cfg.stepper.scheme) << '\n';
    out << "stepper.cfl_safety = " << number(cfg.stepper.cfl_safety) << '\n';
    out << "run.t_end = " << number(cfg.t_end) << '\n';
    out << "run.output_every = " << cfg.output_every << '\n';
    out << "run.out_dir = " << cfg.out_dir << '\n';
    out << "ic.kind = " << to_string(cfg.ic.kind) << '\n';
    out << "ic.seed = " << cfg.ic.seed << '\n';
    out << "ic.spectrum_slope = " << number(cfg.ic.spectrum_slope) << '\n';
    out << "ic.k_peak = " << number(cfg.ic.k_peak) << '\n';
    out << "ic.amplitude = " << number(cfg.ic.amplitude) << '\n';
    out << "ic.b_amplitude = " << number(cfg.ic.b_amplitude) << '\n';
    if (!cfg.ic.path.empty()) out << "ic.path = " << cfg.ic.path << '\n';
    out << "forcing.kind = " << to_string(cfg.forcing.kind) << '\n';
    out << "forcing.amplitude = " << number(cfg.forcing.amplitude) << '\n';
    return out.str();
}

}  // namespace mhdadm
