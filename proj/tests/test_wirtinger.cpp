#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "invmet/rng.hpp"
#include "invmet/wirtinger.hpp"

#include <cmath>

using namespace invmet;

namespace {
CVec cpt(std::initializer_list<Complex> vals) {
    CVec z(vals.size());
    int i = 0;
    for (auto c : vals) z(i++) = c;
    return z;
}
} // namespace

// f = |z1|^2 + 0.5 |z1 z2|^2 as an exact polynomial
static HermitianKernelPoly sample_poly() {
    return make_real_poly(2, {
        {Complex(1.0, 0), {1, 0}, {1, 0}},
        {Complex(0.5, 0), {1, 1}, {1, 1}},
    });
}

TEST_CASE("exact polynomial derivatives against hand values") {
    auto p = sample_poly();
    CVec z = cpt({Complex(0.3, 0.1), Complex(-0.2, 0.4)});
    double t1 = std::norm(z(0)), t2 = std::norm(z(1));
    CHECK(p.value(z) == doctest::Approx(t1 + 0.5 * t1 * t2).epsilon(1e-15));

    // d/dz1 = zbar1 (1 + 0.5 |z2|^2)
    Complex d1 = p.deriv(z, {0}, {});
    Complex expect = std::conj(z(0)) * (1.0 + 0.5 * t2);
    CHECK(std::abs(d1 - expect) < 1e-15);

    // d^2/dz1 dzbar1 = 1 + 0.5 |z2|^2
    Complex d11 = p.deriv(z, {0}, {0});
    CHECK(std::abs(d11 - Complex(1.0 + 0.5 * t2, 0)) < 1e-15);

    // d^2/dz1 dzbar2 = 0.5 zbar1 z2... careful: d/dzbar2 of zbar1(1+0.5 z2 zbar2) = 0.5 zbar1 z2
    Complex d12 = p.deriv(z, {0}, {1});
    CHECK(std::abs(d12 - 0.5 * std::conj(z(0)) * z(1)) < 1e-15);

    // pure second derivative in z1 vanishes (no z1^2 term)
    CHECK(std::abs(p.deriv(z, {0, 0}, {})) < 1e-15);
}

TEST_CASE("jet22 agrees with one-off derivative queries") {
    auto p = sample_poly();
    SampleRng rng(5);
    for (int rep = 0; rep < 5; ++rep) {
        CVec z = 0.5 * rng.cvec_gaussian(2);
        auto J = p.jet22(z);
        CHECK(J.K == doctest::Approx(p.value(z)).epsilon(1e-14));
        for (int i = 0; i < 2; ++i) CHECK(std::abs(J.d1(i) - p.deriv(z, {i}, {})) < 1e-14);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) {
                CHECK(std::abs(J.d11(i, j) - p.deriv(z, {i}, {j})) < 1e-14);
                CHECK(std::abs(J.d20(i, j) - p.deriv(z, {i, j}, {})) < 1e-14);
                for (int k = 0; k < 2; ++k) {
                    CHECK(std::abs(J.d21[k](i, j) - p.deriv(z, {i, k}, {j})) < 1e-14);
                    for (int l = 0; l < 2; ++l)
                        CHECK(std::abs(J.d22[k][l](i, j) - p.deriv(z, {i, k}, {j, l})) < 1e-13);
                }
            }
    }
}

TEST_CASE("finite differences reproduce exact Wirtinger derivatives") {
    auto p = sample_poly();
    WirtingerFD fd;
    auto f = [&](const CVec& w) { return p.value(w); };
    SampleRng rng(11);
    for (int rep = 0; rep < 4; ++rep) {
        CVec z = 0.6 * rng.cvec_gaussian(2);
        for (int i = 0; i < 2; ++i) {
            CHECK(std::abs(fd.dz(f, z, i) - p.deriv(z, {i}, {})) < 1e-9);
        }
        CMat mixed = fd.mixed_block(f, z, {0, 1}, {0, 1});
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) CHECK(std::abs(mixed(i, j) - p.deriv(z, {i}, {j})) < 1e-8);
        CMat pure = fd.pure_block(f, z, {0, 1});
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) CHECK(std::abs(pure(i, j) - p.deriv(z, {i, j}, {})) < 1e-8);
    }
}

TEST_CASE("finite differences on a non-polynomial function") {
    // f = exp(|z|^2): df/dz = zbar f, d2f/dz dzbar = (1 + |z|^2) f
    WirtingerFD fd;
    auto f = [](const CVec& w) { return std::exp(std::norm(w(0))); };
    CVec z = cpt({Complex(0.4, -0.3)});
    double t = std::norm(z(0));
    double v = std::exp(t);
    CHECK(std::abs(fd.dz(f, z, 0) - std::conj(z(0)) * v) < 1e-9);
    CMat m = fd.mixed_block(f, z, {0}, {0});
    CHECK(std::abs(m(0, 0) - (1.0 + t) * v) < 5e-8);
}

TEST_CASE("halton sphere directions are unit and deterministic") {
    auto d1 = sphere_directions(4, 64);
    auto d2 = sphere_directions(4, 64);
    REQUIRE(d1.size() == 64);
    for (size_t i = 0; i < d1.size(); ++i) {
        CHECK(d1[i].norm() == doctest::Approx(1.0).epsilon(1e-12));
        CHECK((d1[i] - d2[i]).norm() == 0.0);
    }
}
