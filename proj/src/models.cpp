#include "mhdadm/models.hpp"

#include <algorithm>
#include <string>

#include "mhdadm/errors.hpp"
#include "mhdadm/spectral_ops.hpp"
#include "mhdadm/transforms.hpp"

namespace mhdadm {

std::string_view to_string(ModelKind kind) {
    switch (kind) {
        case ModelKind::ModelA:
            return "model_a";
        case ModelKind::ModelB:
            return "model_b";
        case ModelKind::Limit:
            return "limit";
        case ModelKind::Mhd:
            return "mhd";
    }
    return "?";
}

ModelKind parse_model_kind(std::string_view name) {
    if (name == "model_a") return ModelKind::ModelA;
    if (name == "model_b") return ModelKind::ModelB;
    if (name == "limit") return ModelKind::Limit;
    if (name == "mhd") return ModelKind::Mhd;
    throw ParameterError("unknown model '" + std::string(name) + "' (expected model_a, model_b, limit or mhd)");
}

void ModelParams::validate() const {
    if (!(nu > 0.0)) throw ParameterError("nu must be > 0");
    if (!(mu > 0.0)) throw ParameterError("mu must be > 0");
    filter1.validate();
    filter2.validate();
    deconv1().validate();
    deconv2().validate();
    switch (kind) {
        case ModelKind::ModelA:
            if (!(filter1.alpha > 0.0) || !(filter2.alpha > 0.0))
                throw ParameterError("model_a requires alpha1 > 0 and alpha2 > 0 (use model_b for alpha2 = 0)");
            break;
        case ModelKind::ModelB:
            if (!(filter1.alpha > 0.0)) throw ParameterError("model_b requires alpha1 > 0");
            if (filter2.alpha != 0.0 || order2 != 0)
                throw ParameterError("model_b leaves the magnetic equation unfiltered: alpha2 and order2 must be 0");
            break;
        case ModelKind::Limit:
        case ModelKind::Mhd:
            break;
    }
}

SolverState SolverState::zero(const Grid& grid) {
    return SolverState{0.0, SpectralField(grid, 3), SpectralField(grid, 3), SpectralField(grid, 3)};
}

ModelOperators::ModelOperators(const Grid& grid, const ModelParams& params) : grid_(grid), params_(params) {
    params.validate();
    const std::vector<double> ones(grid.size(), 1.0);
    switch (params.kind) {
        case ModelKind::ModelA:
        case ModelKind::ModelB:
            advect1_ = deconvolution_table(grid, params.deconv1());
            advect2_ = deconvolution_table(grid, params.deconv2());
            filter1_ = helmholtz_table(grid, params.filter1);
            filter2_ = helmholtz_table(grid, params.filter2);
            inverse1_ = inverse_helmholtz_table(grid, params.filter1);
            inverse2_ = inverse_helmholtz_table(grid, params.filter2);
            break;
        case ModelKind::Limit:
            advect1_ = inverse_helmholtz_table(grid, params.filter1);
            advect2_ = inverse_helmholtz_table(grid, params.filter2);
            filter1_ = helmholtz_table(grid, params.filter1);
            filter2_ = helmholtz_table(grid, params.filter2);
            inverse1_ = advect1_;
            inverse2_ = advect2_;
            break;
        case ModelKind::Mhd:
            advect1_ = advect2_ = filter1_ = filter2_ = inverse1_ = inverse2_ = ones;
            break;
    }
}

namespace {

void require_state(const SolverState& s, const Grid& g) {
    if (!(s.w.grid() == g) || !(s.b.grid() == g) || !(s.forcing.grid() == g))
        throw ShapeError("state grid does not match the model operators");
    if (s.w.components() != 3 || s.b.components() != 3 || s.forcing.components() != 3)
        throw ShapeError("state fields must be vector fields");
    const double dw = divergence_residual(s.w);
    const double db = divergence_residual(s.b);
    if (!(dw <= kSolenoidalInputTolerance) || !(db <= kSolenoidalInputTolerance))
        throw SolenoidalityError("state is not divergence free (relative residual w: " + std::to_string(dw) +
                                 ", b: " + std::to_string(db) + ")");
}

SpectralField advected(const SpectralField& f, const std::vector<double>& symbol, bool dealias) {
    SpectralField out = f;
    apply_symbol(out, symbol);
    if (dealias) dealias_in_place(out);
    return out;
}

// Spectral coefficients of the tensor field a_i b_j, component 3 i + j.
SpectralField tensor_product(const PhysicalField& a, const PhysicalField& b, bool dealias) {
    const Grid& g = a.grid();
    PhysicalField prod(g, 9);
    for (int i = 0; i < 3; ++i) {
        auto ai = a.component(i);
        for (int j = 0; j < 3; ++j) {
            auto bj = b.component(j);
            auto dst = prod.component(3 * i + j);
            for (std::size_t x = 0; x < g.size(); ++x) dst[x] = ai[x] * bj[x];
        }
    }
    SpectralField out(g, 9);
    detail::forward_transform(prod, out);
    if (dealias) dealias_in_place(out);
    return out;
}

SpectralField transpose(const SpectralField& t) {
    SpectralField out(t.grid(), 9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) std::ranges::copy(t.component(3 * i + j), out.component(3 * j + i).begin());
    return out;
}

SpectralField filtered(SpectralField t, const std::vector<double>& symbol) {
    apply_symbol(t, symbol);
    return t;
}

struct Products {
    SpectralField cw, cb;        // advected fields
    SpectralField ww, bb, wb;    // dealiased spectral products c_w c_w, c_b c_b, c_w c_b
};

Products products(const SolverState& s, const ModelOperators& ops) {
    const Grid& g = ops.grid();
    const bool dealias = ops.params().dealias;
    SpectralField cw = advected(s.w, ops.advect(1), dealias);
    SpectralField cb = advected(s.b, ops.advect(2), dealias);
    PhysicalField pw(g, 3), pb(g, 3);
    detail::inverse_transform(cw, pw);
    detail::inverse_transform(cb, pb);
    SpectralField ww = tensor_product(pw, pw, dealias);
    SpectralField bb = tensor_product(pb, pb, dealias);
    SpectralField wb = tensor_product(pw, pb, dealias);
    return {std::move(cw), std::move(cb), std::move(ww), std::move(bb), std::move(wb)};
}

std::pair<SpectralField, SpectralField> diffused(std::pair<SpectralField, SpectralField> tend,
                                                 const SolverState& s, const ModelParams& p) {
    const Grid& g = s.w.grid();
    for (int c = 0; c < 3; ++c) {
        auto dw = tend.first.component(c);
        auto db = tend.second.component(c);
        auto w = s.w.component(c);
        auto b = s.b.component(c);
        for (std::size_t k = 0; k < g.size(); ++k) {
            dw[k] -= p.nu * g.k_sq(k) * w[k];
            db[k] -= p.mu * g.k_sq(k) * b[k];
        }
    }
    return tend;
}

std::pair<SpectralField, SpectralField> rhs_for(ModelKind expected, const SolverState& s, const ModelParams& p) {
    if (p.kind != expected)
        throw ParameterError("rhs for " + std::string(to_string(expected)) + " called with model " +
                             std::string(to_string(p.kind)));
    return rhs(s, ModelOperators(s.w.grid(), p));
}

}  // namespace

QuadraticFluxes quadratic_fluxes(const SolverState& s, const ModelOperators& ops) {
    require_state(s, ops.grid());
    Products pr = products(s, ops);
    return QuadraticFluxes{
        divergence(filtered(pr.ww, ops.filter(1))),
        divergence(filtered(pr.bb, ops.filter(1))),
        divergence(filtered(pr.wb, ops.filter(2))),
        divergence(filtered(transpose(pr.wb), ops.filter(2))),
    };
}

std::pair<SpectralField, SpectralField> nonlinear_tendency(const SolverState& s, const ModelOperators& ops) {
    QuadraticFluxes q = quadratic_fluxes(s, ops);
    SpectralField dw = std::move(q.w_magnetic);
    dw -= q.w_self;
    dw += s.forcing;
    SpectralField db = std::move(q.b_forward);
    db -= q.b_backward;
    leray_project_in_place(dw);
    leray_project_in_place(db);
    return {std::move(dw), std::move(db)};
}

std::pair<SpectralField, SpectralField> rhs(const SolverState& s, const ModelOperators& ops) {
    return diffused(nonlinear_tendency(s, ops), s, ops.params());
}

std::pair<SpectralField, SpectralField> rhs(const SolverState& s, const ModelParams& p) {
    return rhs(s, ModelOperators(s.w.grid(), p));
}

std::pair<SpectralField, SpectralField> rhs_model_a(const SolverState& s, const ModelParams& p) {
    return rhs_for(ModelKind::ModelA, s, p);
}

std::pair<SpectralField, SpectralField> rhs_model_b(const SolverState& s, const ModelParams& p) {
    return rhs_for(ModelKind::ModelB, s, p);
}

std::pair<SpectralField, SpectralField> rhs_filtered_limit(const SolverState& s, const ModelParams& p) {
    return rhs_for(ModelKind::Limit, s, p);
}

std::pair<SpectralField, SpectralField> rhs_mhd(const SolverState& s, const ModelParams& p) {
    return rhs_for(ModelKind::Mhd, s, p);
}

SpectralField pressure_reconstruct(const SolverState& s, const ModelParams& p) {
    const ModelOperators ops(s.w.grid(), p);
    QuadraticFluxes q = quadratic_fluxes(s, ops);
    SpectralField residue = std::move(q.w_magnetic);
    residue -= q.w_self;
    residue += s.forcing;
    SpectralField pressure = divergence(residue);
    const Grid& g = s.w.grid();
    auto d = pressure.component(0);
    for (std::size_t k = 0; k < g.size(); ++k) {
        const double ksq = g.k_sq(k);
        d[k] = ksq == 0.0 ? cplx{} : -d[k] / ksq;
    }
    return pressure;
}

double CancellationResiduals::worst_relative() const {
    return std::max({relative_self_w(), relative_self_b(), relative_magnetic()});
}

CancellationResiduals cancellation_check(const SolverState& s, const ModelParams& p) {
    const ModelOperators ops(s.w.grid(), p);
    require_state(s, ops.grid());
    Products pr = products(s, ops);

    // Test fields A1 c_w and A2 c_b and their gradients.
    SpectralField test_w = pr.cw;
    apply_symbol(test_w, ops.inverse(1));
    SpectralField test_b = pr.cb;
    apply_symbol(test_b, ops.inverse(2));
    const SpectralField grad_w = gradient(test_w);
    const SpectralField grad_b = gradient(test_b);
    const double norm_gw = l2_norm(grad_w);
    const double norm_gb = l2_norm(grad_b);

    const SpectralField g1_ww = filtered(pr.ww, ops.filter(1));
    const SpectralField g2_bb = filtered(pr.bb, ops.filter(2));
    const SpectralField g1_bb = filtered(pr.bb, ops.filter(1));
    const SpectralField g2_bw = filtered(transpose(pr.wb), ops.filter(2));
    const SpectralField g2_wb = filtered(pr.wb, ops.filter(2));

    CancellationResiduals r;
    r.self_w = inner_product(g1_ww, grad_w);
    r.scale_w = l2_norm(g1_ww) * norm_gw;
    r.self_b = inner_product(g2_bb, grad_b);
    r.scale_b = l2_norm(g2_bb) * norm_gb;
    const double t1 = inner_product(g1_bb, grad_w);
    const double t2 = inner_product(g2_bw, grad_b);
    const double t3 = inner_product(g2_wb, grad_b);
    r.magnetic = t1 - t2 + t3;
    r.scale_magnetic = l2_norm(g1_bb) * norm_gw + (l2_norm(g2_bw) + l2_norm(g2_wb)) * norm_gb;
    return r;
}

}  // namespace mhdadm
