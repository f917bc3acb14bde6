#include <cmath>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "mhdadm/errors.hpp"
#include "mhdadm/initial_conditions.hpp"
#include "mhdadm/snapshot.hpp"
#include "mhdadm/spectral_ops.hpp"
#include "mhdadm/transforms.hpp"
#include "mhdadm/workflows.hpp"
#include "oracles.hpp"

using namespace mhdadm;
namespace fs = std::filesystem;

namespace {

const double kTwoPi = 2.0 * M_PI;

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / "mhdadm_cli_io_tests";
    fs::create_directories(dir);
    return dir / name;
}

std::vector<unsigned char> slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void dump(const fs::path& p, const std::vector<unsigned char>& bytes) {
    std::ofstream out(p, std::ios::binary | std::ios::trunc);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::string read_text(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int error_line(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.line();
    }
    return -1;
}

// Big-endian encoder written independently of the library.
struct BigEndian {
    std::vector<unsigned char> bytes;
    void raw(const void* p, std::size_t n) {
        const auto* c = static_cast<const unsigned char*>(p);
        bytes.insert(bytes.end(), c, c + n);
    }
    template <typename T>
    void put(T v) {
        unsigned char b[sizeof(T)];
        std::memcpy(b, &v, sizeof(T));
        for (std::size_t i = 0; i < sizeof(T); ++i) bytes.push_back(b[sizeof(T) - 1 - i]);
    }
};

}  // namespace

TEST_CASE("config parsing") {
    const SimConfig cfg = parse_config(
        "# comment\n"
        "grid.n = 32\n"
        "grid.L = 3.5\n"
        "\n"
        "model.kind = model_b\n"
        "model.alpha1 = 0.25\n"
        "model.order1 = 4\n"
        "model.nu = 0.01\n"
        "stepper.dt = 2e-3\n"
        "run.t_end = 1\n"
        "run.output_every = 5\n"
        "ic.kind = random_solenoidal\n"
        "ic.seed = 99\n"
        "forcing.kind = taylor_green\n"
        "forcing.amplitude = 0.1\n"
        "run.out_dir = results\n");
    CHECK(cfg.grid.n == 32);
    CHECK(cfg.grid.L == 3.5);
    CHECK(cfg.params.kind == ModelKind::ModelB);
    CHECK(cfg.params.filter2.alpha == 0.0);
    CHECK(cfg.params.order2 == 0);
    CHECK(cfg.params.order1 == 4);
    CHECK(cfg.stepper.dt == 2e-3);
    CHECK(cfg.output_every == 5);
    CHECK(cfg.ic.kind == IcKind::RandomSolenoidal);
    CHECK(cfg.ic.seed == 99);
    CHECK(cfg.forcing.kind == ForcingKind::TaylorGreen);
    CHECK(cfg.out_dir == "results");
}

TEST_CASE("config round trip") {
    SimConfig cfg;
    cfg.grid.n = 64;
    cfg.grid.L = 0.1 + 0.2;
    cfg.params.nu = 1.0 / 3.0;
    cfg.params.filter2 = {std::nextafter(0.5, 1.0)};
    cfg.params.order1 = 7;
    cfg.params.dealias = false;
    cfg.stepper.cfl_safety = 0.3;
    cfg.t_end = 0.0;
    cfg.ic.kind = IcKind::FromFile;
    cfg.ic.path = "some/file.bin";
    cfg.ic.seed = 18446744073709551615ull;
    CHECK(parse_config(serialize_config(cfg)) == cfg);
    const SimConfig defaults;
    CHECK(parse_config(serialize_config(defaults)) == defaults);
    CHECK(parse_config("") == defaults);
}

TEST_CASE("config errors name the offending line") {
    CHECK(error_line("grid.n = 16\ngrid.size = 3\n") == 2);
    CHECK(error_line("grid.n = 16\n\ngrid.n = 32\n") == 3);
    CHECK(error_line("model.nu 0.1\n") == 1);
    CHECK(error_line("grid.n = 16\nmodel.nu = abc\n") == 2);
    CHECK(error_line("grid.n = 12\n") == 1);
    CHECK(error_line("grid.n = 512\n") == 1);
    CHECK(error_line("# x\nmodel.kind = model_a\nmodel.alpha2 = 0\n") == 3);
    CHECK(error_line("model.kind = model_b\nmodel.alpha2 = 0.5\n") == 2);
    CHECK(error_line("run.t_end = -1\n") == 1);
    CHECK(error_line("model.kind = model_z\n") == 1);
    CHECK_THROWS_AS(parse_config("ic.kind = from_file\n"), ConfigError);
    try {
        parse_config("\n\nstepper.dt = -1\n");
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find(":3:") != std::string::npos);
    }
    const fs::path p = scratch("bad.cfg");
    std::ofstream(p) << "grid.n = 16\nbogus = 1\n";
    try {
        load_config(p.string());
        FAIL("expected a ConfigError");
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).rfind(p.string() + ":2:", 0) == 0);
    }
}

TEST_CASE("snapshot round trip is bitwise") {
    const Grid g(8, 1.25);
    SolverState s{0.375, random_solenoidal(g, 1, 2.0, 2.0, 1.0), random_solenoidal(g, 2, 2.0, 2.0, 1.0),
                  SpectralField(g, 3)};
    const fs::path p = scratch("round.bin");
    write_snapshot(s, p.string());
    const SolverState r = read_snapshot(p.string());
    CHECK(r.time == s.time);
    CHECK(r.grid() == g);
    CHECK(r.w == s.w);
    CHECK(r.b == s.b);
    CHECK(fs::file_size(p) == 8 + 4 + 4 + 8 + 8 + 4 + 2 * (16 + 8 * 8 * 8 * 3 * 16));
}

TEST_CASE("snapshot layout of the zero state") {
    const Grid g(8, kTwoPi);
    SolverState s = SolverState::zero(g);
    s.time = 2.0;
    const fs::path p = scratch("zero.bin");
    write_snapshot(s, p.string());
    const auto bytes = slurp(p);
    CHECK(std::memcmp(bytes.data(), "MHDADM01", 8) == 0);
    std::uint32_t version, n, count;
    double period, time;
    std::memcpy(&version, &bytes[8], 4);
    std::memcpy(&n, &bytes[12], 4);
    std::memcpy(&period, &bytes[16], 8);
    std::memcpy(&time, &bytes[24], 8);
    std::memcpy(&count, &bytes[32], 4);
    CHECK(version == 1);
    CHECK(n == 8);
    CHECK(period == kTwoPi);
    CHECK(time == 2.0);
    CHECK(count == 2);
    CHECK(std::string(reinterpret_cast<const char*>(&bytes[36])) == "w");
    const std::size_t payload = 8 * 8 * 8 * 3 * 16;
    CHECK(std::string(reinterpret_cast<const char*>(&bytes[36 + 16 + payload])) == "b");
    for (std::size_t i = 52; i < 52 + payload; ++i) REQUIRE(bytes[i] == 0);
}

TEST_CASE("coefficient order is (kx, ky, kz, component)") {
    const Grid g(8, kTwoPi);
    SolverState s = SolverState::zero(g);
    const std::size_t k = g.index(1, 2, 3);
    s.w.at(2, k) = {0.5, -0.25};
    s.w.at(2, g.mirror(k)) = {0.5, 0.25};
    const fs::path p = scratch("order.bin");
    write_snapshot(s, p.string());
    const auto bytes = slurp(p);
    const std::size_t offset = 52 + ((1 * 8 + 2) * 8 + 3) * 3 * 16 + 2 * 16;
    double re, im;
    std::memcpy(&re, &bytes[offset], 8);
    std::memcpy(&im, &bytes[offset + 8], 8);
    CHECK(re == 0.5);
    CHECK(im == -0.25);
}

TEST_CASE("big-endian snapshots are byte-swapped on read") {
    const Grid g(8, 2.0);
    const SpectralField w = random_solenoidal(g, 5, 2.0, 2.0, 1.0);
    const SpectralField b = random_solenoidal(g, 6, 2.0, 2.0, 1.0);
    BigEndian be;
    be.raw("MHDADM01", 8);
    be.put<std::uint32_t>(1);
    be.put<std::uint32_t>(8);
    be.put<double>(2.0);
    be.put<double>(0.5);
    be.put<std::uint32_t>(2);
    for (const auto& [name, f] : {std::pair<const char*, const SpectralField*>{"w", &w}, {"b", &b}}) {
        char tag[16] = {};
        std::strcpy(tag, name);
        be.raw(tag, 16);
        for (std::size_t k = 0; k < g.size(); ++k)
            for (int c = 0; c < 3; ++c) {
                be.put<double>(f->at(c, k).real());
                be.put<double>(f->at(c, k).imag());
            }
    }
    const fs::path p = scratch("big_endian.bin");
    dump(p, be.bytes);
    const SolverState s = read_snapshot(p.string());
    CHECK(s.time == 0.5);
    CHECK(s.grid() == g);
    CHECK(s.w == w);
    CHECK(s.b == b);
}

TEST_CASE("corrupt snapshots are rejected") {
    const Grid g(8, kTwoPi);
    SolverState s{0.0, random_solenoidal(g, 1, 2.0, 2.0, 1.0), random_solenoidal(g, 2, 2.0, 2.0, 1.0),
                  SpectralField(g, 3)};
    const fs::path good = scratch("good.bin");
    write_snapshot(s, good.string());
    const auto bytes = slurp(good);
    const fs::path bad = scratch("bad.bin");

    auto bad_magic = bytes;
    bad_magic[0] = 'X';
    dump(bad, bad_magic);
    CHECK_THROWS_AS(read_snapshot(bad.string()), SnapshotError);

    auto bad_version = bytes;
    bad_version[8] = 7;
    dump(bad, bad_version);
    CHECK_THROWS_AS(read_snapshot(bad.string()), SnapshotError);

    dump(bad, std::vector<unsigned char>(bytes.begin(), bytes.end() - 8));
    CHECK_THROWS_AS(read_snapshot(bad.string()), SnapshotError);

    auto longer = bytes;
    longer.push_back(0);
    dump(bad, longer);
    CHECK_THROWS_AS(read_snapshot(bad.string()), SnapshotError);

    auto asymmetric = bytes;
    const std::size_t k = g.index(1, 0, 0);
    double value = 3.0;
    std::memcpy(&asymmetric[52 + k * 48], &value, 8);
    dump(bad, asymmetric);
    CHECK_THROWS_AS(read_snapshot(bad.string()), SnapshotError);

    CHECK_THROWS_AS(read_snapshot(scratch("missing.bin").string()), SnapshotError);
}

TEST_CASE("Taylor-Green initial data") {
    const Grid g(8, kTwoPi);
    const SpectralField u = taylor_green_velocity(g, 2.0);
    const SpectralField b = taylor_green_magnetic(g, 0.5);
    const PhysicalField pu = transform_to_physical(u);
    const PhysicalField pb = transform_to_physical(b);
    for (std::size_t x = 0; x < g.size(); ++x) {
        auto [i, j, l] = g.indices(x);
        const double X = i * g.spacing(), Y = j * g.spacing(), Z = l * g.spacing();
        CHECK(pu.at(0, x) == doctest::Approx(2.0 * std::sin(X) * std::cos(Y) * std::cos(Z)).epsilon(1e-14));
        CHECK(pu.at(1, x) == doctest::Approx(-2.0 * std::cos(X) * std::sin(Y) * std::cos(Z)).epsilon(1e-14));
        CHECK(std::abs(pu.at(2, x)) < 1e-15);
        CHECK(pb.at(2, x) == doctest::Approx(0.5 * std::cos(X)).epsilon(1e-14));
    }
    int nonzero = 0;
    for (std::size_t k = 0; k < g.size(); ++k) {
        if (u.at(0, k) == cplx{}) continue;
        ++nonzero;
        auto s = g.signed_indices(k);
        CHECK(std::abs(s[0]) == 1);
        CHECK(std::abs(s[1]) == 1);
        CHECK(std::abs(s[2]) == 1);
        CHECK(std::abs(u.at(0, k)) == 0.25);
    }
    CHECK(nonzero == 8);
    CHECK(divergence_residual(u) == 0.0);
    CHECK(divergence_residual(b) == 0.0);
    CHECK(l2_norm(divergence(u)) == 0.0);
}

TEST_CASE("random solenoidal initial data") {
    const Grid g(16, kTwoPi);
    const SpectralField a = random_solenoidal(g, 42, 2.0, 3.0, 0.8);
    CHECK(a == random_solenoidal(g, 42, 2.0, 3.0, 0.8));
    CHECK_FALSE(a == random_solenoidal(g, 43, 2.0, 3.0, 0.8));
    CHECK(l2_norm(a) == doctest::Approx(0.8).epsilon(1e-14));
    CHECK(hermitian_defect(a) == 0.0);
    CHECK(divergence_residual(a) < 1e-15);
    CHECK(supported_in_mask(a));
    CHECK_FALSE(supported_in_mask(random_solenoidal(g, 42, 2.0, 3.0, 0.8, false)));
}

TEST_CASE("initial condition filtering") {
    SimConfig cfg;
    cfg.params.filter1 = {0.7};
    cfg.params.filter2 = {0.4};
    const SolverState a = make_initial_condition(cfg);
    SimConfig mhd = cfg;
    mhd.params.kind = ModelKind::Mhd;
    const SolverState m = make_initial_condition(mhd);
    CHECK(a.w == apply_helmholtz(m.w, {0.7}));
    CHECK(a.b == apply_helmholtz(m.b, {0.4}));

    SimConfig b = cfg;
    b.params.kind = ModelKind::ModelB;
    b.params.filter2 = {0.0};
    const SolverState sb = make_initial_condition(b);
    CHECK(sb.b == m.b);

    SimConfig forced = cfg;
    forced.forcing = {ForcingKind::TaylorGreen, 0.3};
    const SolverState f = make_initial_condition(forced);
    CHECK(f.forcing == apply_helmholtz(taylor_green_velocity(cfg.make_grid(), 0.3), {0.7}));
}

TEST_CASE("initial data from a snapshot") {
    const Grid g(16, kTwoPi);
    SolverState src{0.0, random_solenoidal(g, 8, 2.0, 2.0, 1.0), random_solenoidal(g, 9, 2.0, 2.0, 1.0),
                    SpectralField(g, 3)};
    const fs::path p = scratch("ic.bin");
    write_snapshot(src, p.string());
    SimConfig cfg;
    cfg.params.kind = ModelKind::Mhd;
    cfg.ic.kind = IcKind::FromFile;
    cfg.ic.path = p.string();
    const SolverState s = make_initial_condition(cfg);
    CHECK(s.w == src.w);
    CHECK(s.b == src.b);

    cfg.grid.n = 32;
    CHECK_THROWS_AS(make_initial_condition(cfg), ParameterError);
    cfg.grid.n = 16;

    const std::size_t k = g.index(1, 0, 0);
    src.w.at(0, k) += 0.5;
    src.w.at(0, g.mirror(k)) += 0.5;
    write_snapshot(src, p.string());
    CHECK_THROWS_AS(make_initial_condition(cfg), SolenoidalityError);

    cfg.ic.path = scratch("nope.bin").string();
    CHECK_THROWS_AS(make_initial_condition(cfg), SnapshotError);
}

TEST_CASE("run workflow outputs") {
    SUBCASE("t_end = 0 writes the initial condition") {
        SimConfig cfg;
        cfg.t_end = 0.0;
        cfg.out_dir = scratch("run_zero_time").string();
        std::ostringstream out, err;
        CHECK(run(cfg, out, err) == 0);
        const SolverState s = read_snapshot((fs::path(cfg.out_dir) / "snapshot_final.bin").string());
        const SolverState ic = make_initial_condition(cfg);
        CHECK(s.w == ic.w);
        CHECK(s.b == ic.b);
        CHECK(s.time == 0.0);
    }
    SUBCASE("zero initial data gives zero rows") {
        SimConfig cfg;
        cfg.ic.amplitude = 0.0;
        cfg.ic.b_amplitude = 0.0;
        cfg.t_end = 0.02;
        cfg.output_every = 5;
        cfg.out_dir = scratch("run_zero").string();
        std::ostringstream out, err;
        CHECK(run(cfg, out, err) == 0);
        std::istringstream csv(read_text(fs::path(cfg.out_dir) / "diagnostics.csv"));
        std::string line;
        std::getline(csv, line);
        CHECK(line == "# mhd-adm diagnostics v1");
        std::getline(csv, line);
        CHECK(line == "t,E_model,D_model,W_force,E_limit,h0_w,h1_w,h0_b,h1_b,div_residual");
        int rows = 0;
        while (std::getline(csv, line)) {
            ++rows;
            CHECK(line.substr(line.find(',')) == ",0,0,0,0,0,0,0,0,0");
        }
        CHECK(rows == 5);
    }
    SUBCASE("identical configs give identical bytes") {
        SimConfig cfg;
        cfg.ic.kind = IcKind::RandomSolenoidal;
        cfg.t_end = 0.02;
        cfg.output_every = 2;
        std::ostringstream out, err;
        cfg.out_dir = scratch("repro_a").string();
        run(cfg, out, err);
        cfg.out_dir = scratch("repro_b").string();
        run(cfg, out, err);
        CHECK(read_text(scratch("repro_a") / "diagnostics.csv") == read_text(scratch("repro_b") / "diagnostics.csv"));
        CHECK(slurp(scratch("repro_a") / "snapshot_final.bin") == slurp(scratch("repro_b") / "snapshot_final.bin"));
    }
    SUBCASE("blow-up keeps the last good state") {
        SimConfig cfg;
        cfg.grid.n = 8;
        cfg.t_end = 0.5;
        cfg.stepper.dt = 0.25;
        cfg.params.nu = cfg.params.mu = 1e3;
        cfg.stepper.hooks.flip_diffusion = true;
        cfg.out_dir = scratch("run_blowup").string();
        std::ostringstream out, err;
        CHECK(run(cfg, out, err) == 2);
        CHECK(fs::exists(fs::path(cfg.out_dir) / "snapshot_last_good.bin"));
        CHECK(err.str().find("non-finite") != std::string::npos);
    }
}

TEST_CASE("rows satisfy the record invariants") {
    SimConfig cfg;
    cfg.ic.kind = IcKind::RandomSolenoidal;
    cfg.params.order1 = 3;
    cfg.params.order2 = 2;
    cfg.t_end = 0.05;
    cfg.output_every = 5;
    const SimulationResult r = simulate(cfg);
    CHECK(r.records.size() == 11);
    for (const auto& rec : r.records) {
        CHECK(rec.E_model >= 0.0);
        CHECK(rec.E_model <= rec.E_limit);
        CHECK(rec.h0_w >= 0.0);
        CHECK(rec.h1_b >= 0.0);
        CHECK(rec.div_residual <= 1e-11);
    }
    CHECK(r.final_state.time == doctest::Approx(0.05).epsilon(1e-15));
}

TEST_CASE("sweep workflow") {
    SimConfig cfg;
    cfg.grid.n = 8;
    cfg.t_end = 0.02;
    cfg.output_every = 5;
    SUBCASE("a run against itself has zero distance") {
        const std::vector<int> orders{0};
        const SweepResult r = sweep_n(cfg, orders, 0);
        REQUIRE(r.entries.size() == 1);
        CHECK(r.entries[0].ok);
        CHECK(r.entries[0].aggregate == 0.0);
    }
    SUBCASE("model B measures b in H0 and writes a table") {
        cfg.params.kind = ModelKind::ModelB;
        cfg.params.filter2 = {0.0};
        cfg.out_dir = scratch("sweep_b").string();
        const std::vector<int> orders{0, 2, 4};
        std::ostringstream out, err;
        CHECK(run_sweep(cfg, orders, 16, out, err) == 0);
        const std::string csv = read_text(fs::path(cfg.out_dir) / "sweep_n.csv");
        CHECK(csv.find("b_norm=H0") != std::string::npos);
        CHECK(csv.find("\n4,") != std::string::npos);
        CHECK(sweep_n(cfg, orders, 16).strictly_decreasing());
    }
    SUBCASE("invalid requests") {
        const std::vector<int> negative{-1};
        CHECK_THROWS_AS(sweep_n(cfg, negative, 4), ParameterError);
        cfg.params.kind = ModelKind::Mhd;
        const std::vector<int> orders{0};
        CHECK_THROWS_AS(sweep_n(cfg, orders, 4), ParameterError);
    }
}

TEST_CASE("check-invariants workflow") {
    SimConfig cfg;
    std::ostringstream out;
    CHECK(run_check_invariants(cfg, out) == 0);
    CHECK(out.str().find("FAIL") == std::string::npos);

    cfg.params.dealias = false;
    std::ostringstream off;
    CHECK(run_check_invariants(cfg, off) == 1);
    for (const auto& c : check_invariants(cfg))
        if (c.name.rfind("cancellation, random", 0) == 0) CHECK_FALSE(c.passed);
}

TEST_CASE("filter workflow") {
    const Grid g(8, kTwoPi);
    SolverState s{1.5, random_solenoidal(g, 1, 2.0, 2.0, 1.0), random_solenoidal(g, 2, 2.0, 2.0, 1.0),
                  SpectralField(g, 3)};
    const fs::path in = scratch("filter_in.bin"), outp = scratch("filter_out.bin");
    write_snapshot(s, in.string());
    std::ostringstream log;
    CHECK(run_filter(in.string(), FilterOp::Deconvolve, {{0.5}, 3}, outp.string(), log) == 0);
    const SolverState r = read_snapshot(outp.string());
    CHECK(r.time == 1.5);
    CHECK(r.w == apply_deconvolution(s.w, {{0.5}, 3}));
    CHECK(r.b == apply_deconvolution(s.b, {{0.5}, 3}));
    CHECK(filter_state(s, FilterOp::Filter, {{0.5}, 0}).w == apply_helmholtz(s.w, {0.5}));
    CHECK(filter_state(s, FilterOp::Inverse, {{0.5}, 0}).b == apply_inverse_helmholtz(s.b, {0.5}));
    CHECK(parse_filter_op("deconv") == FilterOp::Deconvolve);
    CHECK_THROWS_AS(parse_filter_op("sharpen"), ParameterError);
}
