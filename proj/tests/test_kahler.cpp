#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "invmet/kahler.hpp"

#include <cmath>

using namespace invmet;

namespace {
CVec cpt(std::initializer_list<Complex> vals) {
    CVec z(vals.size());
    int i = 0;
    for (auto c : vals) z(i++) = c;
    return z;
}

// phi = |z|^2 + 0.2 |z1 z2|^2 + 0.1 |z1|^4: Kaehler, positive near the origin,
// genuinely non-diagonal derivatives
HermitianKernelPoly perturbed_potential() {
    return make_real_poly(2, {
        {Complex(1, 0), {1, 0}, {1, 0}},
        {Complex(1, 0), {0, 1}, {0, 1}},
        {Complex(0.2, 0), {1, 1}, {1, 1}},
        {Complex(0.1, 0), {2, 0}, {2, 0}},
    });
}
} // namespace

TEST_CASE("closed-form ball field matches finite differences") {
    auto ball = ball_bergman_field(2, 1.0);
    // a second object that routes through the FD fallback
    auto fd_ball = matrix_field(2, [&](const CPoint& z) { return ball->metric(z); });

    SampleRng rng(3);
    auto dom = DomainSpec::ball(2, 1.0);
    for (int rep = 0; rep < 4; ++rep) {
        CVec z = dom.sample_interior(rng, 0.3);
        std::vector<CMat> dh1, dh2;
        std::vector<std::vector<CMat>> ddh1, ddh2;
        ball->derivatives(z, dh1, ddh1);
        fd_ball->derivatives(z, dh2, ddh2);
        for (int k = 0; k < 2; ++k) {
            CHECK((dh1[k] - dh2[k]).norm() < 1e-6 * (1.0 + dh1[k].norm()));
            for (int l = 0; l < 2; ++l)
                CHECK((ddh1[k][l] - ddh2[k][l]).norm() < 1e-6 * (1.0 + ddh1[k][l].norm()));
        }
    }
}

TEST_CASE("curvature tensor: flat and Poincare anchors") {
    auto flat = flat_field(2);
    auto t = curvature_tensor(*flat, cpt({0.1, 0.2}));
    CHECK(t.max_abs() == doctest::Approx(0.0));

    // h = (1-|z|^2)^{-2} on the disk: R_{1 1b 1 1b}(0) = -2, so R/h^2 = -2
    auto poin = poincare_disk_field();
    auto tp = curvature_tensor(*poin, cpt({0.0}));
    CHECK(tp.at(0, 0, 0, 0).real() == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(hsc(*poin, cpt({0.3}), cpt({1.0})) == doctest::Approx(-2.0).epsilon(1e-11));
}

TEST_CASE("ball Bergman has constant holomorphic sectional curvature -2/(n+1)") {
    for (int n : {1, 2, 3}) {
        auto f = ball_bergman_field(n, 1.0);
        auto dom = DomainSpec::ball(n, 1.0);
        SampleRng rng(17 + n);
        for (int rep = 0; rep < 8; ++rep) {
            CVec z = dom.sample_interior(rng, 0.15);
            CVec v = rng.unit_tangent(n);
            CHECK(hsc(*f, z, v) == doctest::Approx(-2.0 / (n + 1)).epsilon(1e-9));
        }
    }
}

TEST_CASE("curvature tensor symmetries hold for exact Kaehler fields") {
    auto pot = potential_field(perturbed_potential());
    SampleRng rng(23);
    auto dom = DomainSpec::ball(2, 0.9);
    for (int rep = 0; rep < 6; ++rep) {
        CVec z = dom.sample_interior(rng);
        auto t = curvature_tensor(*pot, z);
        CHECK(t.kahler_symmetry_error() < 1e-12);
        CHECK(t.hermitian_symmetry_error() < 1e-12);
    }
    auto t = curvature_tensor(*ball_bergman_field(2, 1.0), cpt({0.2, Complex(0.1, -0.3)}));
    CHECK(t.kahler_symmetry_error() < 1e-12);
    CHECK(t.hermitian_symmetry_error() < 1e-12);
}

TEST_CASE("Ricci trace equals the log-det route on a Kaehler field") {
    auto pot = potential_field(perturbed_potential());
    WirtingerFD fd;
    auto logdet = [&](const CVec& z) { return std::log(pot->metric(z).determinant().real()); };
    SampleRng rng(31);
    auto dom = DomainSpec::ball(2, 0.8);
    for (int rep = 0; rep < 4; ++rep) {
        CVec z = dom.sample_interior(rng);
        CMat ric = ricci_matrix(*pot, z);
        CMat ld = fd.mixed_block(logdet, z, {0, 1}, {0, 1});
        CHECK((ric + ld).norm() < 1e-6 * (1.0 + ric.norm()));
    }
    // ball: Ric = -g, Scal = -n
    auto ball = ball_bergman_field(2, 1.0);
    CVec z = cpt({Complex(0.2, 0.1), Complex(-0.3, 0.0)});
    CHECK((ricci_matrix(*ball, z) + ball->metric(z)).norm() < 1e-9);
    CHECK(scalar_curvature(*ball, z) == doctest::Approx(-2.0).epsilon(1e-10));
}

TEST_CASE("hsc is invariant under complex scaling of the direction") {
    auto pot = potential_field(perturbed_potential());
    SampleRng rng(41);
    CVec z = cpt({Complex(0.2, -0.1), Complex(0.1, 0.3)});
    CVec v = rng.cvec_gaussian(2);
    double base = hsc(*pot, z, v);
    for (int rep = 0; rep < 6; ++rep) {
        Complex zeta = rng.complex_gaussian();
        if (std::abs(zeta) < 0.1) continue;
        CHECK(hsc(*pot, z, zeta * v) == doctest::Approx(base).epsilon(1e-10));
    }
}

TEST_CASE("polarization identities") {
    SampleRng rng(7);

    SUBCASE("exact tensors: residuals at rounding level") {
        for (int rep = 0; rep < 50; ++rep) {
            auto t = random_kahler_symmetric_tensor(2, rng);
            CVec x = rng.cvec_gaussian(2), y = rng.cvec_gaussian(2);
            auto res = polarization_residuals(t, x, y);
            for (double r : res) CHECK(r < 1e-10);
        }
    }

    SUBCASE("metric tensors") {
        auto ball = ball_bergman_field(2, 1.0);
        auto pot = potential_field(perturbed_potential());
        auto dom = DomainSpec::ball(2, 0.8);
        for (int rep = 0; rep < 20; ++rep) {
            CVec z = dom.sample_interior(rng);
            CVec x = rng.cvec_gaussian(2), y = rng.cvec_gaussian(2);
            for (const auto& f : {ball, pot}) {
                auto t = curvature_tensor(*f, z);
                auto res = polarization_residuals(t, x, y);
                for (double r : res) CHECK(r < 1e-8);
            }
        }
    }

    SUBCASE("broken symmetry is detected") {
        auto t = random_kahler_symmetric_tensor(2, rng);
        t.at(0, 0, 1, 0) += Complex(0.5, 0.2);  // violates the unbarred swap
        CVec x = cpt({1.0, 0.5}), y = cpt({Complex(0.2, 0.7), -1.0});
        auto res = polarization_residuals(t, x, y);
        double worst = std::max({res[0], res[1], res[2], res[3]});
        CHECK(worst > 1e-3);
    }
}

TEST_CASE("real sectional curvature") {
    auto flat = flat_field(2);
    CHECK(real_sectional(*flat, cpt({0.0, 0.0}), cpt({1.0, 0.0}), cpt({0.0, 1.0})) == doctest::Approx(0.0));

    // product of two Poincare disks: mixed-index curvature vanishes
    auto prod = matrix_field(2, [](const CPoint& z) {
        CMat h = CMat::Zero(2, 2);
        h(0, 0) = 1.0 / std::pow(1.0 - std::norm(z(0)), 2);
        h(1, 1) = 1.0 / std::pow(1.0 - std::norm(z(1)), 2);
        return h;
    });
    double mixed = real_sectional(*prod, cpt({0.2, Complex(0.0, 0.1)}), cpt({1.0, 0.0}), cpt({0.0, 1.0}));
    CHECK(std::abs(mixed) < 1e-6);

    // symmetric in (X, Y) for orthonormal pairs
    auto ball = ball_bergman_field(2, 1.0);
    SampleRng rng(2);
    CVec z = cpt({0.3, Complex(0.1, 0.2)});
    CVec x = rng.cvec_gaussian(2), y = rng.cvec_gaussian(2);
    CHECK(real_sectional(*ball, z, x, y) == doctest::Approx(real_sectional(*ball, z, y, x)).epsilon(1e-8));

    // degenerate plane rejected
    CHECK_THROWS_AS(real_sectional(*ball, z, x, Complex(2.0, 1.0) * x), std::invalid_argument);
}

TEST_CASE("pinching constants") {
    SUBCASE("flat: all zero, passes") {
        auto rep = pinching_constants_check(*flat_field(2), DomainSpec::ball(2, 1.0), 50, 9);
        CHECK(rep.c == 0.0);
        CHECK(rep.max_real_sec == 0.0);
        CHECK(rep.pass_real_sec);
    }
    SUBCASE("ball Bergman C^2: C = 2/3") {
        auto rep = pinching_constants_check(*ball_bergman_field(2, 1.0), DomainSpec::ball(2, 1.0), 300, 10);
        CHECK(rep.c == doctest::Approx(2.0 / 3.0).epsilon(1e-9));
        CHECK(rep.pass_mixed);
        CHECK(rep.pass_bisec);
        CHECK(rep.pass_real_sec);
    }
    SUBCASE("ball Bergman C^3: C = 1/2") {
        auto rep = pinching_constants_check(*ball_bergman_field(3, 1.0), DomainSpec::ball(3, 1.0), 300, 11);
        CHECK(rep.c == doctest::Approx(0.5).epsilon(1e-9));
        CHECK(rep.pass_real_sec);
    }
}

TEST_CASE("kernel log field reproduces the closed-form ball metric") {
    // K = (2/pi^2) (1 - |z|^2)^{-3} has the same log-Hessian as any positive
    // multiple; test against the exact rational kernel on a polynomial proxy:
    // here we instead check the pipeline on the flat kernel exp-free case
    // K = 1 + |z1|^2 gives h = ddbar log(1+|z1|^2), the Fubini-Study metric:
    // h = 1/(1+t)^2 in one variable, curvature +2 after normalization.
    auto K = make_real_poly(1, {
        {Complex(1, 0), {0}, {0}},
        {Complex(1, 0), {1}, {1}},
    });
    auto fs = kernel_log_field(K);
    CVec z = cpt({Complex(0.3, -0.2)});
    double t = std::norm(z(0));
    CHECK(fs->metric(z)(0, 0).real() == doctest::Approx(1.0 / std::pow(1.0 + t, 2)).epsilon(1e-12));
    // Fubini-Study: hsc = +2 in the kernel convention
    CHECK(hsc(*fs, z, cpt({1.0})) == doctest::Approx(2.0).epsilon(1e-10));
}
