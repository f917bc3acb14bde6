#include <cmath>

#include "doctest.h"
#include "mhdadm/errors.hpp"
#include "mhdadm/spectral_ops.hpp"
#include "mhdadm/transforms.hpp"
#include "oracles.hpp"

using namespace mhdadm;

namespace {

const double kTwoPi = 2.0 * M_PI;

std::size_t mode(const Grid& g, int a, int b, int c) { return g.index(g.wrap(a), g.wrap(b), g.wrap(c)); }

std::array<double, 3> point(const Grid& g, std::size_t flat) {
    auto [i, j, l] = g.indices(flat);
    return {i * g.spacing(), j * g.spacing(), l * g.spacing()};
}

}  // namespace

TEST_CASE("grid wavevectors follow the signed alias convention") {
    const Grid g(8, 4.0);
    CHECK(g.k_unit() == doctest::Approx(kTwoPi / 4.0));
    for (std::size_t k = 0; k < g.size(); ++k) {
        auto s = g.signed_indices(k);
        auto kv = g.wavevector(k);
        for (int a = 0; a < 3; ++a) {
            CHECK(s[a] >= -4);
            CHECK(s[a] < 4);
            CHECK(kv[a] == doctest::Approx(g.k_unit() * s[a]));
        }
        CHECK(g.index(g.wrap(s[0]), g.wrap(s[1]), g.wrap(s[2])) == k);
        CHECK(g.k_sq(k) == doctest::Approx(kv[0] * kv[0] + kv[1] * kv[1] + kv[2] * kv[2]));
    }
    CHECK_THROWS_AS(Grid(1, 1.0), ParameterError);
    CHECK_THROWS_AS(Grid(8, 0.0), ParameterError);
}

TEST_CASE("two-thirds mask keeps exactly |signed index| <= floor(n/3)") {
    for (int n : {8, 16, 32}) {
        const Grid g(n, kTwoPi);
        CHECK(g.dealias_cutoff() == n / 3);
        for (std::size_t k = 0; k < g.size(); ++k) {
            auto s = g.signed_indices(k);
            const bool inside = std::abs(s[0]) <= n / 3 && std::abs(s[1]) <= n / 3 && std::abs(s[2]) <= n / 3;
            CHECK(g.in_dealias_mask(k) == inside);
        }
    }
}

TEST_CASE("zero field transforms to zero") {
    const Grid g(8, kTwoPi);
    const PhysicalField p = transform_to_physical(SpectralField(g, 3));
    for (double v : p.data()) CHECK(v == 0.0);
}

TEST_CASE("a conjugate pair a/2 at +-k evaluates to a cos(k.x)") {
    const Grid g(8, kTwoPi);
    SpectralField f(g, 1);
    const double a = 1.7;
    f.at(0, mode(g, 1, 2, -1)) = a / 2;
    f.at(0, mode(g, -1, -2, 1)) = a / 2;
    const PhysicalField p = transform_to_physical(f);
    for (std::size_t x = 0; x < g.size(); ++x) {
        auto r = point(g, x);
        CHECK(p.at(0, x) == doctest::Approx(a * std::cos(r[0] + 2 * r[1] - r[2])).epsilon(1e-13));
    }
}

TEST_CASE("forward transform: constants vanish, cosines split into halves") {
    const Grid g(8, kTwoPi);
    PhysicalField p(g, 1);
    for (double& v : p.data()) v = 3.25;
    const SpectralField c = transform_to_spectral(p);
    for (const cplx& v : c.data()) CHECK(v == cplx{});

    for (std::size_t x = 0; x < g.size(); ++x) {
        auto r = point(g, x);
        p.at(0, x) = 0.8 * std::cos(2 * r[1]);
    }
    const SpectralField s = transform_to_spectral(p);
    for (std::size_t k = 0; k < g.size(); ++k) {
        const bool on = k == mode(g, 0, 2, 0) || k == mode(g, 0, -2, 0);
        CHECK(std::abs(s.at(0, k) - (on ? cplx(0.4) : cplx{})) < 1e-15);
    }
}

TEST_CASE("round trip on random Hermitian fields") {
    for (int n : {8, 16, 32}) {
        const Grid g(n, kTwoPi);
        const SpectralField f = oracle::random_hermitian(g, 3, 11 + n);
        const SpectralField back = transform_to_spectral(transform_to_physical(f));
        CHECK(oracle::distance(back, f) <= 1e-12 * oracle::norm(f));
    }
}

TEST_CASE("inverse transform agrees with the explicit Fourier sum") {
    const Grid g(8, 3.0);
    const SpectralField f = oracle::random_hermitian(g, 3, 5);
    const PhysicalField p = transform_to_physical(f);
    for (std::size_t x : {std::size_t{0}, std::size_t{77}, std::size_t{300}, std::size_t{511}}) {
        auto v = oracle::evaluate(f, point(g, x));
        for (int c = 0; c < 3; ++c) CHECK(p.at(c, x) == doctest::Approx(v[c]).epsilon(1e-12));
    }
}

TEST_CASE("non-Hermitian input is rejected") {
    const Grid g(8, kTwoPi);
    SpectralField f(g, 3);
    f.at(0, mode(g, 1, 0, 0)) = {1.0, 0.0};
    CHECK_THROWS_AS(transform_to_physical(f), SymmetryError);
    f.at(0, mode(g, -1, 0, 0)) = {1.0, 0.0};
    CHECK_NOTHROW(transform_to_physical(f));
    PhysicalField wrong(Grid(16, kTwoPi), 3);
    SpectralField out(g, 3);
    CHECK_THROWS_AS(detail::forward_transform(wrong, out), ShapeError);
}

TEST_CASE("product of two single modes lands on sum and difference wavenumbers") {
    const Grid g(8, kTwoPi);
    SpectralField a(g, 1), b(g, 1);
    a.at(0, mode(g, 1, 0, 0)) = 0.5;  // cos x
    a.at(0, mode(g, -1, 0, 0)) = 0.5;
    b.at(0, mode(g, 0, 2, 0)) = 0.5;  // cos 2y
    b.at(0, mode(g, 0, -2, 0)) = 0.5;
    const PhysicalField pa = transform_to_physical(a), pb = transform_to_physical(b);
    PhysicalField prod(g, 1);
    for (std::size_t x = 0; x < g.size(); ++x) prod.at(0, x) = pa.at(0, x) * pb.at(0, x);
    const SpectralField c = transform_to_spectral(prod);
    // cos x cos 2y = (cos(x + 2y) + cos(x - 2y)) / 2
    for (std::size_t k = 0; k < g.size(); ++k) {
        auto s = g.signed_indices(k);
        const bool on = std::abs(s[0]) == 1 && std::abs(s[1]) == 2 && s[2] == 0;
        CHECK(std::abs(c.at(0, k) - (on ? cplx(0.25) : cplx{})) < 1e-15);
    }
}

TEST_CASE("gradient symbol and H1 identity") {
    const Grid g(8, kTwoPi);
    SpectralField phi(g, 1);
    const cplx a(0.3, -0.2);
    const std::size_t k = mode(g, 1, -2, 3);
    phi.at(0, k) = a;
    phi.at(0, g.mirror(k)) = std::conj(a);
    const SpectralField grad = gradient(phi);
    auto kv = g.wavevector(k);
    for (int c = 0; c < 3; ++c) CHECK(std::abs(grad.at(c, k) - cplx(0.0, kv[c]) * a) < 1e-15);

    const SpectralField f = oracle::random_hermitian(g, 3, 3);
    const SpectralField gf = gradient(f);
    CHECK(gf.components() == 9);
    double h1 = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m)
        for (int c = 0; c < 3; ++c) h1 += g.k_sq(m) * std::norm(f.at(c, m));
    CHECK(l2_norm(gf) * l2_norm(gf) == doctest::Approx(h1).epsilon(1e-13));
    CHECK(l2_norm(gradient(SpectralField(g, 3))) == 0.0);
}

TEST_CASE("H1 seminorm equals grid quadrature of |grad f|^2") {
    const Grid g(16, kTwoPi);
    const SpectralField f = oracle::random_hermitian(g, 3, 21, 5);
    const PhysicalField grad = transform_to_physical(gradient(f));
    double quad = 0.0;
    for (double v : grad.data()) quad += v * v;
    quad /= static_cast<double>(g.size());
    double spectral = 0.0;
    for (std::size_t m = 0; m < g.size(); ++m)
        for (int c = 0; c < 3; ++c) spectral += g.k_sq(m) * std::norm(f.at(c, m));
    CHECK(quad == doctest::Approx(spectral).epsilon(1e-10));
}

TEST_CASE("divergence of a gradient is the Laplacian") {
    const Grid g(8, kTwoPi);
    const SpectralField phi = oracle::random_hermitian(g, 1, 9);
    const SpectralField lap = divergence(gradient(phi));
    const SpectralField ref = laplacian(phi);
    CHECK(oracle::distance(lap, ref) <= 1e-14 * oracle::norm(ref));
    for (std::size_t k = 0; k < g.size(); ++k) CHECK(std::abs(ref.at(0, k) + g.k_sq(k) * phi.at(0, k)) < 1e-13);
}

TEST_CASE("divergence of a constant antisymmetric tensor vanishes") {
    const Grid g(8, kTwoPi);
    PhysicalField t(g, 9);
    const double m[3][3] = {{0, 1.5, -2}, {-1.5, 0, 0.25}, {2, -0.25, 0}};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (double& v : t.component(3 * i + j)) v = m[i][j];
    CHECK(l2_norm(divergence(transform_to_spectral(t))) == 0.0);
}

TEST_CASE("self-advection of a shear flow u = (sin z, 0, 0) vanishes") {
    const Grid g(8, kTwoPi);
    PhysicalField u(g, 3);
    for (std::size_t x = 0; x < g.size(); ++x) u.at(0, x) = std::sin(point(g, x)[2]);
    PhysicalField uu(g, 9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (std::size_t x = 0; x < g.size(); ++x) uu.at(3 * i + j, x) = u.at(i, x) * u.at(j, x);
    CHECK(l2_norm(divergence(transform_to_spectral(uu))) < 1e-15);
}

TEST_CASE("Leray projection") {
    const Grid g(8, kTwoPi);
    SUBCASE("(1, 1, 0) along k = (k1, 0, 0) keeps only (0, 1, 0)") {
        SpectralField f(g, 3);
        for (int s : {1, -1}) {
            f.at(0, mode(g, 2 * s, 0, 0)) = 1.0;
            f.at(1, mode(g, 2 * s, 0, 0)) = 1.0;
        }
        const SpectralField p = leray_project(f);
        for (int s : {1, -1}) {
            CHECK(p.at(0, mode(g, 2 * s, 0, 0)) == cplx{});
            CHECK(p.at(1, mode(g, 2 * s, 0, 0)) == cplx(1.0));
            CHECK(p.at(2, mode(g, 2 * s, 0, 0)) == cplx{});
        }
    }
    SUBCASE("annihilates gradients, fixes solenoidal fields, idempotent") {
        const SpectralField phi = oracle::random_hermitian(g, 1, 4);
        const SpectralField grad = gradient(phi);
        CHECK(l2_norm(leray_project(grad)) <= 1e-15 * l2_norm(grad));
        const SpectralField f = oracle::random_hermitian(g, 3, 6);
        const SpectralField p = leray_project(f);
        CHECK(oracle::distance(p, oracle::project(f)) <= 1e-14 * oracle::norm(f));
        CHECK(oracle::distance(leray_project(p), p) <= 1e-15 * oracle::norm(p));
        CHECK(divergence_residual(p) < 1e-15);
        CHECK(divergence_residual(f) > 0.1);
    }
    SUBCASE("self-adjoint") {
        const SpectralField f = oracle::random_hermitian(g, 3, 7);
        const SpectralField h = oracle::random_hermitian(g, 3, 8);
        CHECK(std::abs(inner_product(leray_project(f), h) - inner_product(f, leray_project(h))) <=
              1e-12 * l2_norm(f) * l2_norm(h));
    }
}

TEST_CASE("dealias") {
    const Grid g(16, kTwoPi);
    const SpectralField inside = oracle::random_hermitian(g, 3, 2, g.dealias_cutoff());
    CHECK(dealias(inside) == inside);
    CHECK(supported_in_mask(inside));
    SpectralField outside = oracle::random_hermitian(g, 3, 2);
    outside -= dealias(outside);
    CHECK(l2_norm(outside) > 0.0);
    CHECK(l2_norm(dealias(outside)) == 0.0);
    const SpectralField full = oracle::random_hermitian(g, 3, 2);
    CHECK(dealias(dealias(full)) == dealias(full));
}

TEST_CASE("dealiased pseudo-spectral product equals the direct convolution") {
    const Grid g(16, kTwoPi);
    SpectralField a(g, 3), b(g, 3);
    auto put = [&](SpectralField& f, int c, std::array<int, 3> s, cplx v) {
        f.at(c, mode(g, s[0], s[1], s[2])) = v;
        f.at(c, mode(g, -s[0], -s[1], -s[2])) = std::conj(v);
    };
    put(a, 0, {5, -3, 1}, {0.7, 0.2});
    put(a, 2, {1, 4, -5}, {-0.4, 0.9});
    put(b, 1, {4, 5, -2}, {0.3, -0.6});
    put(b, 0, {-5, 5, 5}, {1.1, 0.0});
    const PhysicalField pa = transform_to_physical(a), pb = transform_to_physical(b);
    PhysicalField prod(g, 9);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (std::size_t x = 0; x < g.size(); ++x) prod.at(3 * i + j, x) = pa.at(i, x) * pb.at(j, x);
    const SpectralField pseudo = dealias(transform_to_spectral(prod));
    const SpectralField exact = oracle::dense_product(a, b);
    CHECK(oracle::distance(pseudo, exact) <= 1e-14 * oracle::norm(exact));
}

TEST_CASE("gradient and divergence commute with dealias and projection") {
    const Grid g(16, kTwoPi);
    const SpectralField f = leray_project(oracle::random_hermitian(g, 3, 31));
    CHECK(gradient(dealias(f)) == dealias(gradient(f)));
    const SpectralField t = gradient(f);
    CHECK(divergence(dealias(t)) == dealias(divergence(t)));
    const SpectralField lhs = leray_project(laplacian(f));
    CHECK(oracle::distance(lhs, laplacian(leray_project(f))) <= 1e-14 * oracle::norm(lhs));
}

TEST_CASE("Hermitian helpers") {
    const Grid g(8, kTwoPi);
    SpectralField f(g, 3);
    CHECK(hermitian_defect(f) == 0.0);
    f.at(1, mode(g, 1, 2, 3)) = {1.0, 2.0};
    CHECK(hermitian_defect(f) > 0.5);
    CHECK_THROWS_AS(check_hermitian(f), SymmetryError);
    make_hermitian(f);
    CHECK(hermitian_defect(f) == 0.0);
    f.at(0, 0) = 1.0;
    f.at(0, mode(g, 4, 0, 1)) = 1.0;
    clear_unrepresentable_modes(f);
    CHECK(f.at(0, 0) == cplx{});
    CHECK(f.at(0, mode(g, 4, 0, 1)) == cplx{});
}
