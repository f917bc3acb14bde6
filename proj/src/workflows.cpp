#include "mhdadm/workflows.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <thread>

#include "mhdadm/errors.hpp"
#include "mhdadm/initial_conditions.hpp"
#include "mhdadm/parallel.hpp"
#include "mhdadm/snapshot.hpp"
#include "mhdadm/spectral_ops.hpp"
#include "mhdadm/stepper.hpp"

namespace mhdadm {

namespace {

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string short_fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3e", v);
    return buf;
}

long step_count(double t_end, double dt) {
    if (t_end <= 0.0) return 0;
    // Tolerate t_end / dt landing a few ulps above an integer.
    return std::max(1L, static_cast<long>(std::ceil(t_end / dt * (1.0 - 1e-12))));
}

}  // namespace

SimulationResult simulate_from(SolverState initial, const SimConfig& cfg, bool keep_samples, std::ostream* log) {
    validate_config(cfg);
    const Grid g = initial.w.grid();
    SimulationResult result{.final_state = SolverState::zero(g)};
    result.steps = step_count(cfg.t_end, cfg.stepper.dt);
    result.dt = result.steps > 0 ? cfg.t_end / static_cast<double>(result.steps) : cfg.stepper.dt;

    StepperConfig sc = cfg.stepper;
    sc.dt = result.dt;
    const Stepper stepper(g, cfg.params, sc);
    const double t0 = initial.time;

    bool warned = false;
    auto record = [&](const SolverState& s) {
        result.records.push_back(energy_report(s, stepper.operators()));
        if (keep_samples) result.samples.push_back(Sample{s.time, s.w, s.b});
        if (log != nullptr && !warned) {
            const double advised = estimate_dt(s, cfg.params, sc);
            if (advised < sc.dt) {
                *log << "warning: dt = " << sc.dt << " exceeds the CFL estimate " << advised << " at t = " << s.time
                     << "\n";
                warned = true;
            }
        }
    };

    SolverState s = std::move(initial);
    record(s);
    for (long i = 1; i <= result.steps; ++i) {
        try {
            s = stepper.step(s);
        } catch (const BlowUpError& e) {
            result.blew_up = true;
            result.failure = e.what();
            result.steps = i - 1;
            break;
        }
        // Accumulating t + dt drifts; pin the clock to the step index.
        s.time = t0 + static_cast<double>(i) * sc.dt;
        if (i % cfg.output_every == 0) record(s);
    }
    result.final_state = std::move(s);
    return result;
}

SimulationResult simulate(const SimConfig& cfg, bool keep_samples, std::ostream* log) {
    validate_config(cfg);
    return simulate_from(make_initial_condition(cfg), cfg, keep_samples, log);
}

void write_diagnostics_csv(std::span<const DiagnosticsRecord> records, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    out << kDiagnosticsHeader << "\n" << kDiagnosticsColumns << "\n";
    for (const auto& r : records) {
        out << fmt(r.time) << ',' << fmt(r.E_model) << ',' << fmt(r.D_model) << ',' << fmt(r.W_force) << ','
            << fmt(r.E_limit) << ',' << fmt(r.h0_w) << ',' << fmt(r.h1_w) << ',' << fmt(r.h0_b) << ','
            << fmt(r.h1_b) << ',' << fmt(r.div_residual) << "\n";
    }
    if (!out) throw std::runtime_error("write to '" + path + "' failed");
}

int run(const SimConfig& cfg, std::ostream& out, std::ostream& err) {
    namespace fs = std::filesystem;
    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);

    const SimulationResult r = simulate(cfg, false, &err);
    write_diagnostics_csv(r.records, (dir / "diagnostics.csv").string());
    if (r.blew_up) {
        write_snapshot(r.final_state, (dir / "snapshot_last_good.bin").string());
        err << "error: " << r.failure << "; last good state (t = " << r.final_state.time << ") written to "
            << (dir / "snapshot_last_good.bin").string() << "\n";
        return 2;
    }
    write_snapshot(r.final_state, (dir / "snapshot_final.bin").string());
    const DiagnosticsRecord& last = r.records.back();
    out << "model " << to_string(cfg.params.kind) << ", n = " << cfg.grid.n << ", " << r.steps
        << " steps of dt = " << r.dt << "\n"
        << "t = " << r.final_state.time << "  E_model = " << last.E_model << "  div_residual = " << last.div_residual
        << "\n"
        << "wrote " << (dir / "diagnostics.csv").string() << " (" << r.records.size() << " rows) and "
        << (dir / "snapshot_final.bin").string() << "\n";
    return 0;
}

bool SweepResult::ok() const {
    return std::all_of(entries.begin(), entries.end(), [](const SweepEntry& e) { return e.ok; });
}

bool SweepResult::strictly_decreasing() const {
    double previous = std::numeric_limits<double>::infinity();
    for (const auto& e : entries) {
        if (!e.ok) return false;
        if (!(e.aggregate < previous)) return false;
        previous = e.aggregate;
    }
    return true;
}

namespace {

SimConfig with_order(SimConfig cfg, int order) {
    switch (cfg.params.kind) {
        case ModelKind::ModelA:
            cfg.params.order1 = order;
            cfg.params.order2 = order;
            break;
        case ModelKind::ModelB:
            cfg.params.order1 = order;
            break;
        default:
            throw ParameterError("sweep-n needs model_a or model_b, got " + std::string(to_string(cfg.params.kind)));
    }
    return cfg;
}

}  // namespace

SweepResult sweep_n(const SimConfig& cfg, std::span<const int> orders, int reference) {
    validate_config(cfg);
    if (orders.empty()) throw ParameterError("sweep-n: empty order list");
    for (int n : orders)
        if (n < 0) throw ParameterError("sweep-n: orders must be >= 0");
    if (reference < 0) throw ParameterError("sweep-n: reference order must be >= 0");

    std::set<int> unique(orders.begin(), orders.end());
    unique.insert(reference);
    const std::vector<int> jobs(unique.begin(), unique.end());
    std::vector<std::optional<SimulationResult>> results(jobs.size());
    std::vector<std::string> errors(jobs.size());
    for (int n : jobs) with_order(cfg, n).params.validate();

    const int workers = std::max(1, std::min<int>(thread_count(), static_cast<int>(jobs.size())));
    const int inner = std::max(1, thread_count() / workers);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        ScopedThreadLimit limit(inner);
        for (std::size_t j = next++; j < jobs.size(); j = next++) {
            try {
                results[j] = simulate(with_order(cfg, jobs[j]), true);
                if (results[j]->blew_up) errors[j] = results[j]->failure;
            } catch (const std::exception& e) {
                errors[j] = e.what();
            }
        }
    };
    if (workers == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int i = 0; i < workers; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    auto slot = [&](int n) {
        return static_cast<std::size_t>(std::find(jobs.begin(), jobs.end(), n) - jobs.begin());
    };
    const std::size_t ref = slot(reference);

    SweepResult out;
    out.reference_order = reference;
    out.b_norm_order = cfg.params.kind == ModelKind::ModelB ? 0.0 : 1.0;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = 0; i < orders.size(); ++i) {
        SweepEntry e;
        e.order = orders[i];
        e.rate = nan;
        const std::size_t j = slot(orders[i]);
        if (!errors[j].empty()) {
            e.ok = false;
            e.error = "run at N = " + std::to_string(orders[i]) + " failed: " + errors[j];
        } else if (!errors[ref].empty()) {
            e.ok = false;
            e.error = "reference run at N = " + std::to_string(reference) + " failed: " + errors[ref];
        } else {
            try {
                e.aggregate = n_convergence_distance(results[j]->samples, results[ref]->samples, out.b_norm_order).aggregate;
            } catch (const std::exception& ex) {
                e.ok = false;
                e.error = ex.what();
            }
        }
        if (i > 0 && e.ok && out.entries.back().ok && out.entries.back().order > 0 && e.order > 0 &&
            e.order != out.entries.back().order) {
            const SweepEntry& p = out.entries.back();
            e.rate = -std::log(e.aggregate / p.aggregate) / std::log(static_cast<double>(e.order) / p.order);
        }
        out.entries.push_back(e);
    }
    return out;
}

int run_sweep(const SimConfig& cfg, std::span<const int> orders, int reference, std::ostream& out,
              std::ostream& err) {
    namespace fs = std::filesystem;
    const SweepResult r = sweep_n(cfg, orders, reference);
    const fs::path dir(cfg.out_dir);
    fs::create_directories(dir);
    const std::string path = (dir / "sweep_n.csv").string();
    std::ofstream csv(path, std::ios::trunc);
    if (!csv) throw std::runtime_error("cannot open '" + path + "' for writing");
    csv << "# mhd-adm sweep-n v1 model=" << to_string(cfg.params.kind) << " reference=" << reference
        << " b_norm=H" << r.b_norm_order << "\n";
    csv << "N,distance,rate,status\n";
    out << "model " << to_string(cfg.params.kind) << ", reference N = " << reference << ", b measured in H"
        << r.b_norm_order << "\n";
    out << "   N        distance     rate (conjectured 0.5)\n";
    for (const auto& e : r.entries) {
        csv << e.order << ',' << (e.ok ? fmt(e.aggregate) : "nan") << ',' << fmt(e.rate) << ','
            << (e.ok ? "ok" : "failed") << "\n";
        char line[128];
        std::snprintf(line, sizeof(line), "%4d  %14.6e  %8.4f", e.order, e.ok ? e.aggregate : std::nan(""), e.rate);
        out << line << "\n";
        if (!e.ok) err << "error: " << e.error << "\n";
    }
    out << (r.strictly_decreasing() ? "distances strictly decreasing in N" : "distances NOT strictly decreasing in N")
        << "\nwrote " << path << "\n";
    return r.ok() ? 0 : 1;
}

namespace {

struct CheckList {
    std::vector<InvariantCheck> items;

    void add(std::string name, double value, double tolerance, std::string detail = {}) {
        items.push_back({std::move(name), value <= tolerance, value, tolerance, std::move(detail)});
    }
    void fail(std::string name, std::string detail) {
        items.push_back({std::move(name), false, std::nan(""), 0.0, std::move(detail)});
    }
};

// Worst violation of 1 <= D <= N + 1 and D <= 1 + x over a log grid of k^2.
double symbol_bound_violation(const std::vector<double>& alphas) {
    double worst = 0.0;
    for (double alpha : alphas) {
        for (int order = 0; order <= 64; ++order) {
            const DeconvSpec spec{{alpha}, order};
            for (int i = 0; i <= 160; ++i) {
                const double ksq = std::pow(10.0, -2.0 + 8.0 * i / 160.0);
                const double d = dn_symbol(ksq, spec);
                const double x = alpha * alpha * ksq;
                worst = std::max({worst, 1.0 - d, d - (order + 1.0), d - (1.0 + x)});
            }
        }
    }
    return worst;
}

double adjoint_defect(const SpectralField& f, const SpectralField& g, auto&& op) {
    const double lhs = inner_product(op(f), g);
    const double rhs = inner_product(f, op(g));
    return std::abs(lhs - rhs) / (l2_norm(f) * l2_norm(g));
}

double relative_distance(const SpectralField& a, const SpectralField& b) {
    const double scale = std::max(l2_norm(a), l2_norm(b));
    return scale > 0.0 ? l2_norm(a - b) / scale : 0.0;
}

}  // namespace

std::vector<InvariantCheck> check_invariants(const SimConfig& cfg) {
    validate_config(cfg);
    CheckList checks;
    const Grid g = cfg.make_grid();
    const ModelParams& p = cfg.params;

    std::vector<double> alphas{0.01, 0.1, 1.0};
    if (p.filter1.alpha > 0.0) alphas.push_back(p.filter1.alpha);
    if (p.filter2.alpha > 0.0) alphas.push_back(p.filter2.alpha);
    checks.add("symbol bounds 1 <= D_N <= min(N+1, 1+a^2k^2)", symbol_bound_violation(alphas), 0.0);

    const bool dealiased = p.dealias;
    const SpectralField f = random_solenoidal(g, cfg.ic.seed, 2.0, 3.0, 1.0, dealiased);
    const SpectralField h = random_solenoidal(g, cfg.ic.seed + 7, 2.0, 3.0, 1.0, dealiased);
    const DeconvSpec d1 = p.deconv1();
    checks.add("D_N self-adjoint", adjoint_defect(f, h, [&](const SpectralField& x) { return apply_deconvolution(x, d1); }),
               1e-12);
    checks.add("G self-adjoint", adjoint_defect(f, h, [&](const SpectralField& x) { return apply_helmholtz(x, p.filter1); }),
               1e-12);
    SpectralField raw = f;
    for (std::size_t k = 0; k < g.size(); ++k) raw.at(0, k) *= 1.5;  // not solenoidal
    make_hermitian(raw);
    checks.add("Leray projection self-adjoint", adjoint_defect(raw, h, [](const SpectralField& x) { return leray_project(x); }),
               1e-12);
    checks.add("gradient commutes with D_N",
               relative_distance(gradient(apply_deconvolution(f, d1)), apply_deconvolution(gradient(f), d1)), 1e-14);
    checks.add("Leray projection commutes with D_N",
               relative_distance(leray_project(apply_deconvolution(raw, d1)), apply_deconvolution(leray_project(raw), d1)),
               1e-14);

    SolverState random_state{0.0, f, h, SpectralField(g, 3)};
    const SolverState initial = make_initial_condition(cfg);
    for (const auto& [label, state] : {std::pair<std::string, const SolverState*>{"random state", &random_state},
                                       {"initial condition", &initial}}) {
        const CancellationResiduals c = cancellation_check(*state, p);
        checks.add("cancellation, " + label, c.worst_relative(), 1e-11,
                   "self_w " + short_fmt(c.relative_self_w()) + ", self_b " + short_fmt(c.relative_self_b()) +
                       ", magnetic " + short_fmt(c.relative_magnetic()));
        const auto [dw, db] = rhs(*state, p);
        checks.add("rhs solenoidal, " + label, std::max(divergence_residual(dw), divergence_residual(db)), 1e-12);
    }

    const Stepper stepper(g, p, cfg.stepper);
    const SolverState stepped = stepper.step(random_state);
    double mean = 0.0;
    for (int c = 0; c < 3; ++c) mean += std::abs(stepped.w.at(c, 0)) + std::abs(stepped.b.at(c, 0));
    checks.add("one step keeps Hermitian symmetry and zero mean exactly",
               std::max({hermitian_defect(stepped.w), hermitian_defect(stepped.b), mean}), 0.0);
    checks.add("one step solenoidality", std::max(divergence_residual(stepped.w), divergence_residual(stepped.b)), 1e-12);
    const SolverState zero = stepper.step(SolverState::zero(g));
    checks.add("zero state is a fixed point", std::max(l2_norm(zero.w), l2_norm(zero.b)), 0.0);

    SimConfig short_run = cfg;
    short_run.output_every = 1;
    short_run.t_end = std::min(cfg.t_end > 0.0 ? cfg.t_end : 0.05, 50 * cfg.stepper.dt);
    if (short_run.t_end < 3 * cfg.stepper.dt) short_run.t_end = 3 * cfg.stepper.dt;
    try {
        const SimulationResult r = simulate(short_run);
        if (r.blew_up) {
            checks.fail("energy balance over a short run", r.failure);
        } else {
            const double residual = energy_equality_residual(r.records, ForcingPairing::Consistent);
            checks.add("energy balance over a short run", residual, 1e-8,
                       std::to_string(r.steps) + " steps to t = " + short_fmt(r.final_state.time));
            if (cfg.forcing.kind == ForcingKind::None) {
                const InequalityResult ineq = energy_inequality_check(r.records);
                checks.add("unforced model energy non-increasing", ineq.worst_margin, 1e-9);
            }
        }
    } catch (const std::exception& e) {
        checks.fail("energy balance over a short run", e.what());
    }
    return checks.items;
}

int run_check_invariants(const SimConfig& cfg, std::ostream& out) {
    const auto checks = check_invariants(cfg);
    bool all = true;
    out << "model " << to_string(cfg.params.kind) << ", n = " << cfg.grid.n
        << (cfg.params.dealias ? "" : ", dealiasing OFF") << "\n";
    for (const auto& c : checks) {
        char line[256];
        std::snprintf(line, sizeof(line), "%-4s  %-56s  %10.3e  (tol %.1e)", c.passed ? "PASS" : "FAIL",
                      c.name.c_str(), c.value, c.tolerance);
        out << line;
        if (!c.detail.empty()) out << "  " << c.detail;
        out << "\n";
        all = all && c.passed;
    }
    out << (all ? "all checks passed" : "some checks FAILED") << "\n";
    return all ? 0 : 1;
}

FilterOp parse_filter_op(std::string_view name) {
    if (name == "filter") return FilterOp::Filter;
    if (name == "deconv") return FilterOp::Deconvolve;
    if (name == "inverse") return FilterOp::Inverse;
    throw ParameterError("unknown filter operation '" + std::string(name) + "' (expected filter, deconv or inverse)");
}

SolverState filter_state(const SolverState& s, FilterOp op, const DeconvSpec& spec) {
    spec.validate();
    auto apply = [&](const SpectralField& x) {
        switch (op) {
            case FilterOp::Filter:
                return apply_helmholtz(x, spec.filter);
            case FilterOp::Deconvolve:
                return apply_deconvolution(x, spec);
            case FilterOp::Inverse:
                return apply_inverse_helmholtz(x, spec.filter);
        }
        throw ParameterError("unknown filter operation");
    };
    return SolverState{s.time, apply(s.w), apply(s.b), s.forcing};
}

int run_filter(const std::string& input, FilterOp op, const DeconvSpec& spec, const std::string& output,
               std::ostream& out) {
    const SolverState s = read_snapshot(input);
    const SolverState r = filter_state(s, op, spec);
    write_snapshot(r, output);
    out << "applied " << (op == FilterOp::Filter ? "G" : op == FilterOp::Deconvolve ? "D_N" : "A")
        << " (alpha = " << spec.filter.alpha << (op == FilterOp::Deconvolve ? ", N = " + std::to_string(spec.order) : "")
        << ") to " << input << ", wrote " << output << "\n";
    return 0;
}

}  // namespace mhdadm
