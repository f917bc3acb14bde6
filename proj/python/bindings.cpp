#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cstring>
#include <sstream>

#include "mhdadm/config.hpp"
#include "mhdadm/diagnostics.hpp"
#include "mhdadm/errors.hpp"
#include "mhdadm/filters.hpp"
#include "mhdadm/initial_conditions.hpp"
#include "mhdadm/models.hpp"
#include "mhdadm/snapshot.hpp"
#include "mhdadm/spectral_ops.hpp"
#include "mhdadm/stepper.hpp"
#include "mhdadm/transforms.hpp"
#include "mhdadm/workflows.hpp"

namespace py = pybind11;
using namespace mhdadm;

namespace {

using ComplexArray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;
using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;

// Fields cross the boundary as arrays of shape (3, n, n, n).
Grid grid_of(const py::buffer_info& info, double L) {
    if (info.ndim != 4 || info.shape[0] != 3 || info.shape[1] != info.shape[2] || info.shape[1] != info.shape[3])
        throw ShapeError("expected an array of shape (3, n, n, n)");
    return Grid(static_cast<int>(info.shape[1]), L);
}

SpectralField to_field(const ComplexArray& a, double L) {
    const py::buffer_info info = a.request();
    SpectralField f(grid_of(info, L), 3);
    std::memcpy(f.data().data(), info.ptr, f.data().size_bytes());
    return f;
}

PhysicalField to_physical_field(const RealArray& a, double L) {
    const py::buffer_info info = a.request();
    PhysicalField f(grid_of(info, L), 3);
    std::memcpy(f.data().data(), info.ptr, f.data().size_bytes());
    return f;
}

std::vector<py::ssize_t> shape_of(const Grid& g) { return {3, g.n(), g.n(), g.n()}; }

ComplexArray to_array(const SpectralField& f) {
    ComplexArray out(shape_of(f.grid()));
    std::memcpy(out.mutable_data(), f.data().data(), f.data().size_bytes());
    return out;
}

RealArray to_array(const PhysicalField& f) {
    RealArray out(shape_of(f.grid()));
    std::memcpy(out.mutable_data(), f.data().data(), f.data().size_bytes());
    return out;
}

SolverState make_state(const ComplexArray& w, const ComplexArray& b, double L, double t,
                       const std::optional<ComplexArray>& forcing) {
    if (w.ndim() != 4 || b.ndim() != 4 || w.shape(1) != b.shape(1)) throw ShapeError("w and b must have the same shape");
    SolverState s{t, to_field(w, L), to_field(b, L), SpectralField(Grid(static_cast<int>(w.shape(1)), L), 3)};
    if (forcing) s.forcing = to_field(*forcing, L);
    return s;
}

py::dict record_dict(const DiagnosticsRecord& r) {
    py::dict d;
    d["t"] = r.time;
    d["E_model"] = r.E_model;
    d["D_model"] = r.D_model;
    d["W_force"] = r.W_force;
    d["W_force_consistent"] = r.W_force_consistent;
    d["E_limit"] = r.E_limit;
    d["h0_w"] = r.h0_w;
    d["h1_w"] = r.h1_w;
    d["h0_b"] = r.h0_b;
    d["h1_b"] = r.h1_b;
    d["div_residual"] = r.div_residual;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Pseudo-spectral approximate-deconvolution MHD models on the periodic box";

    py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
    py::register_exception<ShapeError>(m, "ShapeError", PyExc_ValueError);
    py::register_exception<SymmetryError>(m, "SymmetryError", PyExc_ValueError);
    py::register_exception<SolenoidalityError>(m, "SolenoidalityError", PyExc_ValueError);
    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<SnapshotError>(m, "SnapshotError", PyExc_IOError);
    py::register_exception<BlowUpError>(m, "BlowUpError", PyExc_ArithmeticError);

    py::enum_<ModelKind>(m, "ModelKind")
        .value("model_a", ModelKind::ModelA)
        .value("model_b", ModelKind::ModelB)
        .value("limit", ModelKind::Limit)
        .value("mhd", ModelKind::Mhd);

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](ModelKind kind, double nu, double mu, double alpha1, double alpha2, int order1, int order2,
                         bool dealias) {
                 ModelParams p;
                 p.kind = kind;
                 p.nu = nu;
                 p.mu = mu;
                 p.filter1 = {alpha1};
                 p.filter2 = {alpha2};
                 p.order1 = order1;
                 p.order2 = order2;
                 p.dealias = dealias;
                 p.validate();
                 return p;
             }),
             py::arg("kind") = ModelKind::ModelA, py::arg("nu") = 0.05, py::arg("mu") = 0.05, py::arg("alpha1") = 1.0,
             py::arg("alpha2") = 1.0, py::arg("order1") = 0, py::arg("order2") = 0, py::arg("dealias") = true)
        .def_readwrite("kind", &ModelParams::kind)
        .def_readwrite("nu", &ModelParams::nu)
        .def_readwrite("mu", &ModelParams::mu)
        .def_property(
            "alpha1", [](const ModelParams& p) { return p.filter1.alpha; },
            [](ModelParams& p, double a) { p.filter1 = {a}; })
        .def_property(
            "alpha2", [](const ModelParams& p) { return p.filter2.alpha; },
            [](ModelParams& p, double a) { p.filter2 = {a}; })
        .def_readwrite("order1", &ModelParams::order1)
        .def_readwrite("order2", &ModelParams::order2)
        .def_readwrite("dealias", &ModelParams::dealias);

    m.def("wavenumbers", [](int n, double L) {
        const std::vector<double> k = Grid(n, L).k1d();
        return RealArray(static_cast<py::ssize_t>(k.size()), k.data());
    }, py::arg("n"), py::arg("L") = 2.0 * M_PI, "Signed wavenumbers along one axis in FFT order.");

    m.def("to_spectral", [](const RealArray& u, double L) { return to_array(transform_to_spectral(to_physical_field(u, L))); },
          py::arg("u"), py::arg("L") = 2.0 * M_PI, "Coefficients c_k = n^-3 sum u e^{-ik.x} of a real field.");
    m.def("to_physical", [](const ComplexArray& f, double L) { return to_array(transform_to_physical(to_field(f, L))); },
          py::arg("f"), py::arg("L") = 2.0 * M_PI);
    m.def("leray_project", [](const ComplexArray& f, double L) { return to_array(leray_project(to_field(f, L))); },
          py::arg("f"), py::arg("L") = 2.0 * M_PI);
    m.def("dealias", [](const ComplexArray& f, double L) { return to_array(dealias(to_field(f, L))); }, py::arg("f"),
          py::arg("L") = 2.0 * M_PI);
    m.def("divergence_residual", [](const ComplexArray& f, double L) { return divergence_residual(to_field(f, L)); },
          py::arg("f"), py::arg("L") = 2.0 * M_PI);
    m.def("hs_norm", [](const ComplexArray& f, double s, double L) { return hs_norm(to_field(f, L), s); },
          py::arg("f"), py::arg("s"), py::arg("L") = 2.0 * M_PI);

    m.def("helmholtz_symbol", py::vectorize(&helmholtz_symbol), py::arg("k_sq"), py::arg("alpha"));
    m.def("dn_symbol", py::vectorize([](double k_sq, double alpha, int order) {
              return dn_symbol(k_sq, {{alpha}, order});
          }),
          py::arg("k_sq"), py::arg("alpha"), py::arg("order"));
    m.def("helmholtz", [](const ComplexArray& f, double alpha, double L) {
        return to_array(apply_helmholtz(to_field(f, L), {alpha}));
    }, py::arg("f"), py::arg("alpha"), py::arg("L") = 2.0 * M_PI, "G f = (I - alpha^2 Laplacian)^-1 f.");
    m.def("inverse_helmholtz", [](const ComplexArray& f, double alpha, double L) {
        return to_array(apply_inverse_helmholtz(to_field(f, L), {alpha}));
    }, py::arg("f"), py::arg("alpha"), py::arg("L") = 2.0 * M_PI);
    m.def("deconvolve", [](const ComplexArray& f, double alpha, int order, double L) {
        return to_array(apply_deconvolution(to_field(f, L), {{alpha}, order}));
    }, py::arg("f"), py::arg("alpha"), py::arg("order"), py::arg("L") = 2.0 * M_PI, "D_N f.");

    m.def("taylor_green", [](int n, double amplitude, double b_amplitude, double L) {
        const Grid g(n, L);
        return py::make_tuple(to_array(taylor_green_velocity(g, amplitude)), to_array(taylor_green_magnetic(g, b_amplitude)));
    }, py::arg("n"), py::arg("amplitude") = 1.0, py::arg("b_amplitude") = 0.5, py::arg("L") = 2.0 * M_PI);
    m.def("random_solenoidal", [](int n, std::uint64_t seed, double slope, double k_peak, double rms, double L) {
        return to_array(random_solenoidal(Grid(n, L), seed, slope, k_peak, rms));
    }, py::arg("n"), py::arg("seed"), py::arg("slope") = 2.0, py::arg("k_peak") = 2.0, py::arg("rms") = 1.0,
       py::arg("L") = 2.0 * M_PI);

    m.def("rhs", [](const ComplexArray& w, const ComplexArray& b, const ModelParams& p, double L,
                    const std::optional<ComplexArray>& forcing) {
        const auto [dw, db] = rhs(make_state(w, b, L, 0.0, forcing), p);
        return py::make_tuple(to_array(dw), to_array(db));
    }, py::arg("w"), py::arg("b"), py::arg("params"), py::arg("L") = 2.0 * M_PI, py::arg("forcing") = py::none(),
       "Tendencies (dw/dt, db/dt) of the selected model.");

    m.def("step", [](const ComplexArray& w, const ComplexArray& b, const ModelParams& p, double dt, int steps, double L,
                     const std::optional<ComplexArray>& forcing) {
        SolverState s = make_state(w, b, L, 0.0, forcing);
        StepperConfig c;
        c.dt = dt;
        const Stepper stepper(s.grid(), p, c);
        {
            py::gil_scoped_release release;
            for (int i = 0; i < steps; ++i) s = stepper.step(s);
        }
        return py::make_tuple(to_array(s.w), to_array(s.b));
    }, py::arg("w"), py::arg("b"), py::arg("params"), py::arg("dt"), py::arg("steps") = 1, py::arg("L") = 2.0 * M_PI,
       py::arg("forcing") = py::none(), "Advance with the integrating-factor RK4 scheme.");

    m.def("energy_report", [](const ComplexArray& w, const ComplexArray& b, const ModelParams& p, double L,
                              const std::optional<ComplexArray>& forcing) {
        return record_dict(energy_report(make_state(w, b, L, 0.0, forcing), p));
    }, py::arg("w"), py::arg("b"), py::arg("params"), py::arg("L") = 2.0 * M_PI, py::arg("forcing") = py::none());

    m.def("cancellation_check", [](const ComplexArray& w, const ComplexArray& b, const ModelParams& p, double L) {
        const CancellationResiduals r = cancellation_check(make_state(w, b, L, 0.0, std::nullopt), p);
        py::dict d;
        d["self_w"] = r.relative_self_w();
        d["self_b"] = r.relative_self_b();
        d["magnetic"] = r.relative_magnetic();
        return d;
    }, py::arg("w"), py::arg("b"), py::arg("params"), py::arg("L") = 2.0 * M_PI,
       "Relative residuals of the three nonlinear cancellation identities.");

    m.def("cross_helicity", [](const ComplexArray& w, const ComplexArray& b, const ModelParams& p, double L) {
        const CrossHelicity h = cross_helicity(make_state(w, b, L, 0.0, std::nullopt), p);
        return py::make_tuple(h.plain, h.model);
    }, py::arg("w"), py::arg("b"), py::arg("params"), py::arg("L") = 2.0 * M_PI, "Returns (<w, b>, model-weighted <w, b>).");

    m.def("simulate", [](const std::string& config_text) {
        const SimConfig cfg = parse_config(config_text);
        SimulationResult r = [&] {
            py::gil_scoped_release release;
            return simulate(cfg);
        }();
        py::list records;
        for (const auto& rec : r.records) records.append(record_dict(rec));
        py::dict out;
        out["records"] = records;
        out["w"] = to_array(r.final_state.w);
        out["b"] = to_array(r.final_state.b);
        out["time"] = r.final_state.time;
        out["steps"] = r.steps;
        out["blew_up"] = r.blew_up;
        return out;
    }, py::arg("config_text"), "Run a configuration given as key = value text.");

    m.def("check_invariants", [](const std::string& config_text) {
        const SimConfig cfg = parse_config(config_text);
        py::list out;
        for (const InvariantCheck& c : check_invariants(cfg)) {
            py::dict d;
            d["name"] = c.name;
            d["passed"] = c.passed;
            d["value"] = c.value;
            d["tolerance"] = c.tolerance;
            out.append(d);
        }
        return out;
    }, py::arg("config_text"));

    m.def("read_snapshot", [](const std::string& path) {
        const SolverState s = read_snapshot(path);
        return py::make_tuple(to_array(s.w), to_array(s.b), s.time, s.grid().period());
    }, py::arg("path"), "Returns (w, b, t, L).");
    m.def("write_snapshot", [](const std::string& path, const ComplexArray& w, const ComplexArray& b, double t,
                               double L) { write_snapshot(make_state(w, b, L, t, std::nullopt), path); },
          py::arg("path"), py::arg("w"), py::arg("b"), py::arg("t") = 0.0, py::arg("L") = 2.0 * M_PI);
}
