#include "mhdadm/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mhdadm/errors.hpp"
#include "mhdadm/spectral_ops.hpp"

namespace mhdadm {

double hs_norm(const SpectralField& f, double s) {
    const Grid& g = f.grid();
    double acc = 0.0;
    for (std::size_t k = 1; k < g.size(); ++k) {
        const double ksq = g.k_sq(k);
        if (ksq == 0.0) continue;
        double amp = 0.0;
        for (int c = 0; c < f.components(); ++c) amp += std::norm(f.at(c, k));
        if (amp == 0.0) continue;
        acc += (s == 0.0 ? 1.0 : std::pow(ksq, s)) * amp;
    }
    return std::sqrt(acc);
}

ForcingPairing parse_forcing_pairing(std::string_view name) {
    if (name == "as_written") return ForcingPairing::AsWritten;
    if (name == "consistent") return ForcingPairing::Consistent;
    throw ParameterError("unknown forcing pairing '" + std::string(name) + "'");
}

DiagnosticsRecord energy_report(const SolverState& s, const ModelOperators& ops) {
    const Grid& g = ops.grid();
    const ModelParams& p = ops.params();
    const auto& a1 = ops.inverse(1);
    const auto& a2 = ops.inverse(2);
    const auto& x1 = ops.advect(1);

    double e_model = 0.0, d_model = 0.0, w_written = 0.0, w_consistent = 0.0, e_limit = 0.0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        double ww = 0.0, bb = 0.0, fw = 0.0;
        for (int c = 0; c < 3; ++c) {
            ww += std::norm(s.w.at(c, k));
            bb += std::norm(s.b.at(c, k));
            const cplx f = s.forcing.at(c, k);
            const cplx w = s.w.at(c, k);
            fw += f.real() * w.real() + f.imag() * w.imag();
        }
        const double ksq = g.k_sq(k);
        const double weight_w = ops.energy_weight(1, k);
        const double weight_b = ops.energy_weight(2, k);
        e_model += weight_w * ww + weight_b * bb;
        d_model += ksq * (p.nu * weight_w * ww + p.mu * weight_b * bb);
        w_consistent += weight_w * fw;
        w_written += std::sqrt(a2[k] * x1[k]) * std::sqrt(weight_w) * fw;
        e_limit += a1[k] * a1[k] * ww + a2[k] * a2[k] * bb;
    }

    DiagnosticsRecord r;
    r.time = s.time;
    r.E_model = 0.5 * e_model;
    r.D_model = d_model;
    r.W_force = w_written;
    r.W_force_consistent = w_consistent;
    r.E_limit = 0.5 * e_limit;
    r.h0_w = hs_norm(s.w, 0.0);
    r.h1_w = hs_norm(s.w, 1.0);
    r.h0_b = hs_norm(s.b, 0.0);
    r.h1_b = hs_norm(s.b, 1.0);
    r.div_residual = std::max(divergence_residual(s.w), divergence_residual(s.b));
    return r;
}

DiagnosticsRecord energy_report(const SolverState& s, const ModelParams& p) {
    return energy_report(s, ModelOperators(s.w.grid(), p));
}

double model_energy_from_half_powers(const SolverState& s, const ModelParams& p) {
    const ModelOperators ops(s.w.grid(), p);
    const Grid& g = s.w.grid();
    SpectralField hw = s.w;
    SpectralField hb = s.b;
    std::vector<double> root(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) root[k] = std::sqrt(ops.inverse(1)[k]) * std::sqrt(ops.advect(1)[k]);
    apply_symbol(hw, root);
    for (std::size_t k = 0; k < g.size(); ++k) root[k] = std::sqrt(ops.inverse(2)[k]) * std::sqrt(ops.advect(2)[k]);
    apply_symbol(hb, root);
    const double nw = l2_norm(hw);
    const double nb = l2_norm(hb);
    return 0.5 * (nw * nw + nb * nb);
}

CrossHelicity cross_helicity(const SolverState& s, const ModelParams& p) {
    const ModelOperators ops(s.w.grid(), p);
    const Grid& g = s.w.grid();
    std::vector<double> weight(g.size());
    for (std::size_t k = 0; k < g.size(); ++k)
        weight[k] = std::sqrt(ops.inverse(1)[k] * ops.advect(1)[k] * ops.inverse(2)[k] * ops.advect(2)[k]);
    SpectralField weighted = s.b;
    apply_symbol(weighted, weight);
    return {inner_product(s.w, s.b), inner_product(s.w, weighted)};
}

double energy_equality_residual(std::span<const DiagnosticsRecord> records, ForcingPairing pairing) {
    const std::size_t n = records.size();
    if (n < 3) throw ParameterError("energy_equality_residual: need at least 3 records");
    const double h = records[1].time - records[0].time;
    if (!(h > 0.0)) throw ParameterError("energy_equality_residual: records must advance in time");
    for (std::size_t i = 1; i < n; ++i) {
        const double gap = records[i].time - records[i - 1].time;
        if (std::abs(gap - h) > 1e-9 * h + 1e-14 * std::abs(records[i].time))
            throw ParameterError("energy_equality_residual: non-uniform record spacing at index " + std::to_string(i));
    }

    auto f = [&](std::size_t i) { return records[i].D_model - records[i].work(pairing); };
    double integral = 0.5 * (f(0) + f(n - 1));
    for (std::size_t i = 1; i + 1 < n; ++i) integral += f(i);
    integral *= h;
    const double slope_start = (-3.0 * f(0) + 4.0 * f(1) - f(2)) / (2.0 * h);
    const double slope_end = (3.0 * f(n - 1) - 4.0 * f(n - 2) + f(n - 3)) / (2.0 * h);
    integral -= h * h / 12.0 * (slope_end - slope_start);

    double max_e = 0.0;
    for (const auto& r : records) max_e = std::max(max_e, std::abs(r.E_model));
    const double balance = records[n - 1].E_model - records[0].E_model + integral;
    return max_e > 0.0 ? std::abs(balance) / max_e : std::abs(balance);
}

InequalityResult energy_inequality_check(std::span<const DiagnosticsRecord> records, double tolerance) {
    InequalityResult r;
    for (std::size_t i = 1; i < records.size(); ++i) {
        const double increase = records[i].E_model - records[i - 1].E_model;
        r.worst_margin = std::max(r.worst_margin, increase);
    }
    r.holds = r.worst_margin <= tolerance;
    return r;
}

ConvergenceDistance n_convergence_distance(std::span<const Sample> run, std::span<const Sample> reference,
                                           double b_order) {
    if (run.size() != reference.size())
        throw ParameterError("n_convergence_distance: runs have different numbers of samples");
    ConvergenceDistance out;
    for (std::size_t i = 0; i < run.size(); ++i) {
        const Sample& a = run[i];
        const Sample& r = reference[i];
        if (!(a.w.grid() == r.w.grid())) throw ShapeError("n_convergence_distance: grids differ");
        const double tol = 1e-9 * std::max(1.0, std::abs(r.time));
        if (std::abs(a.time - r.time) > tol)
            throw ParameterError("n_convergence_distance: output times differ at sample " + std::to_string(i));
        const double d = hs_norm(a.w - r.w, 1.0) + hs_norm(a.b - r.b, b_order);
        out.times.push_back(r.time);
        out.distances.push_back(d);
    }
    if (out.distances.size() == 1) {
        out.aggregate = out.distances.front();
    } else if (out.distances.size() > 1) {
        double acc = 0.0;
        for (std::size_t i = 1; i < out.distances.size(); ++i) {
            const double d0 = out.distances[i - 1], d1 = out.distances[i];
            acc += 0.5 * (d0 * d0 + d1 * d1) * (out.times[i] - out.times[i - 1]);
        }
        out.aggregate = std::sqrt(acc);
    }
    return out;
}

}  // namespace mhdadm
