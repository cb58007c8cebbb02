#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "invmet/invariant.hpp"
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
} // namespace

TEST_CASE("poincare distance") {
    CHECK(poincare_distance(Complex(0, 0), Complex(0, 0)) == doctest::Approx(0.0));
    // d(0, 1/2) = (1/2) ln 3
    CHECK(poincare_distance(Complex(0, 0), Complex(0.5, 0)) == doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-14));
    // symmetric, triangle inequality on random triples
    SampleRng rng(4);
    for (int rep = 0; rep < 50; ++rep) {
        Complex a(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7));
        Complex b(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7));
        Complex c(rng.uniform(-0.7, 0.7), rng.uniform(-0.7, 0.7));
        CHECK(poincare_distance(a, b) == doctest::Approx(poincare_distance(b, a)).epsilon(1e-12));
        CHECK(poincare_distance(a, c) <= poincare_distance(a, b) + poincare_distance(b, c) + 1e-12);
    }
    CHECK_THROWS_AS(poincare_distance(Complex(1.0, 0), Complex(0, 0)), std::invalid_argument);
}

TEST_CASE("affine disc upper bounds") {
    auto ball = DomainSpec::ball(2, 1.0);
    DiscWitness w;
    CHECK(kobayashi_upper_affine(ball, cpt({0.0, 0.0}), cpt({1.0, 0.0}), &w) == doctest::Approx(1.0));
    CHECK(w.verify(ball));

    auto poly = DomainSpec::polydisk({2.0, 1.0});
    CHECK(kobayashi_upper_affine(poly, cpt({0.0, 0.0}), cpt({1.0, 0.0})) == doctest::Approx(0.5));

    // disk at z = 0.5: affine bound 2 vs exact 4/3 (valid but not tight)
    auto disk = DomainSpec::ball(1, 1.0);
    double ub = kobayashi_upper_affine(disk, cpt({0.5}), cpt({1.0}));
    CHECK(ub == doctest::Approx(2.0));
    CHECK(ub >= kobayashi_ball_closed_form(1.0, cpt({0.5}), cpt({1.0})));
}

TEST_CASE("caratheodory lower bounds reach the ball/polydisk closed forms") {
    auto ball = DomainSpec::ball(2, 1.0);
    SampleRng rng(5);

    SUBCASE("ball center, unit direction: 1") {
        FunctionalWitness fw;
        double v = caratheodory_lower_support(ball, cpt({0.0, 0.0}), cpt({1.0, 0.0}), 128, &fw);
        CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
        SampleRng r2(6);
        CHECK(fw.verify(ball, r2));
    }
    SUBCASE("disk at 0.5: 4/3") {
        auto disk = DomainSpec::ball(1, 1.0);
        double v = caratheodory_lower_support(disk, cpt({0.5}), cpt({1.0}), 128);
        CHECK(v == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    }
    SUBCASE("polydisk coordinate functional") {
        auto poly = DomainSpec::polydisk({2.0, 1.0});
        double v = caratheodory_lower_support(poly, cpt({0.0, 0.0}), cpt({1.0, 0.0}), 128);
        CHECK(v == doctest::Approx(0.5).epsilon(1e-12));
    }
    SUBCASE("random (z, v): certificate equals the closed form on the ball") {
        for (int rep = 0; rep < 20; ++rep) {
            CVec z = ball.sample_interior(rng);
            CVec v = rng.unit_tangent(2);
            double lo = caratheodory_lower_support(ball, z, v, 64);
            CHECK(lo == doctest::Approx(kobayashi_ball_closed_form(1.0, z, v)).epsilon(1e-10));
        }
    }
    SUBCASE("half-plane witnesses are valid maps to the disk") {
        // quartic convex domain: only the sampled family applies
        ConvexSmoothOracles o;
        o.rho = [](const CVec& z) { return std::norm(z(0)) + std::norm(z(1)) + 0.3 * std::pow(std::norm(z(0)), 2) - 1.0; };
        o.grad = [](const CVec& z) {
            RVec g(4);
            double f0 = 2.0 + 1.2 * std::norm(z(0));
            g(0) = f0 * z(0).real();
            g(1) = f0 * z(0).imag();
            g(2) = 2.0 * z(1).real();
            g(3) = 2.0 * z(1).imag();
            return g;
        };
        auto cs = DomainSpec::convex_smooth(2, std::move(o));
        FunctionalWitness fw;
        double lo = caratheodory_lower_support(cs, cpt({0.2, 0.1}), cpt({1.0, 0.5}), 256, &fw);
        CHECK(lo > 0);
        SampleRng r3(7);
        CHECK(fw.verify(cs, r3, 500));
    }
}

TEST_CASE("metric intervals collapse on model domains") {
    SampleRng rng(8);
    SUBCASE("ball: width < 1e-6 and midpoint = closed form") {
        for (int n : {1, 2, 3}) {
            auto dom = DomainSpec::ball(n, 1.0);
            for (int rep = 0; rep < 10; ++rep) {
                CVec z = dom.sample_interior(rng);
                CVec v = rng.unit_tangent(n);
                auto mi = kobayashi_metric(dom, z, v);
                double exact = kobayashi_ball_closed_form(1.0, z, v);
                CHECK(mi.upper - mi.lower < 1e-6 * std::max(1.0, exact));
                CHECK(0.5 * (mi.lower + mi.upper) == doctest::Approx(exact).epsilon(1e-8));
                CHECK(mi.lower <= exact + 1e-12);
                CHECK(mi.upper >= exact - 1e-12);
            }
        }
    }
    SUBCASE("polydisk: certificates coincide") {
        auto dom = DomainSpec::polydisk({2.0, 1.0});
        for (int rep = 0; rep < 10; ++rep) {
            CVec z = dom.sample_interior(rng);
            CVec v = rng.unit_tangent(2);
            auto mi = kobayashi_metric(dom, z, v);
            double exact = kobayashi_polydisk_closed_form({2.0, 1.0}, z, v);
            CHECK(mi.upper - mi.lower < 1e-6 * std::max(1.0, exact));
            CHECK(0.5 * (mi.lower + mi.upper) == doctest::Approx(exact).epsilon(1e-8));
        }
    }
    SUBCASE("disk at 0.5 contains 4/3 with small width") {
        auto dom = DomainSpec::ball(1, 1.0);
        auto mi = kobayashi_metric(dom, cpt({0.5}), cpt({1.0}));
        CHECK(mi.lower <= 4.0 / 3.0 + 1e-12);
        CHECK(mi.upper >= 4.0 / 3.0 - 1e-12);
        CHECK(mi.upper - mi.lower < 1e-6);
    }
    SUBCASE("witnesses verify") {
        auto dom = DomainSpec::ball(2, 1.0);
        CVec z = cpt({0.4, Complex(0.1, -0.2)});
        CVec v = cpt({Complex(0.3, 0.5), 1.0});
        auto mi = kobayashi_metric(dom, z, v);
        CHECK(mi.upper_witness.verify(dom));
        SampleRng r2(12);
        CHECK(mi.lower_witness.verify(dom, r2));
    }
}

TEST_CASE("ellipsoid interval is honest (lower <= upper, both positive)") {
    auto dom = DomainSpec::ellipsoid({1.0, 1.2});
    SampleRng rng(13);
    for (int rep = 0; rep < 5; ++rep) {
        CVec z = dom.sample_interior(rng, 0.1);
        CVec v = rng.unit_tangent(2);
        auto mi = kobayashi_metric(dom, z, v, 2);
        CHECK(mi.lower > 0);
        CHECK(mi.lower <= mi.upper + 1e-12);
        // polynomial tightening may not close the gap, but should not be absurd
        CHECK(mi.upper / mi.lower < 3.0);
    }
}

TEST_CASE("distance-decreasing under inclusion and dilation scaling") {
    SampleRng rng(14);
    auto small = DomainSpec::ball(2, 1.0);
    auto big = DomainSpec::ball(2, 2.0);
    for (int rep = 0; rep < 10; ++rep) {
        CVec z = small.sample_interior(rng);
        CVec v = rng.unit_tangent(2);
        CHECK(kobayashi_upper_affine(big, z, v) <= kobayashi_upper_affine(small, z, v) + 1e-12);
        // dilation: K_{tD}(tz, v) = K_D(z, v)/t
        double k1 = kobayashi_ball_closed_form(1.0, z, v);
        double k2 = kobayashi_ball_closed_form(2.0, 2.0 * z, v);
        CHECK(k2 == doctest::Approx(k1 / 2.0).epsilon(1e-12));
    }
}

TEST_CASE("mobius invariance of certificates on the disk") {
    auto disk = DomainSpec::ball(1, 1.0);
    SampleRng rng(15);
    for (int rep = 0; rep < 10; ++rep) {
        Complex a(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
        Complex z(rng.uniform(-0.5, 0.5), rng.uniform(-0.5, 0.5));
        Complex v(rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0));
        if (std::abs(v) < 0.1) continue;
        Complex w = (z - a) / (1.0 - std::conj(a) * z);
        Complex dphi = (1.0 - std::norm(a)) / std::pow(1.0 - std::conj(a) * z, 2);
        auto mi1 = kobayashi_metric(disk, cpt({z}), cpt({v}));
        auto mi2 = kobayashi_metric(disk, cpt({w}), cpt({dphi * v}));
        CHECK(mi1.lower == doctest::Approx(mi2.lower).epsilon(1e-8));
        CHECK(mi1.upper == doctest::Approx(mi2.upper).epsilon(1e-8));
    }
}

TEST_CASE("kobayashi distance upper bounds") {
    auto disk = DomainSpec::ball(1, 1.0);
    // identity disc chain realizes the Poincare distance
    CHECK(kobayashi_distance_upper(disk, cpt({0.0}), cpt({0.5})) ==
          doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-12));
    CHECK(kobayashi_distance_upper(disk, cpt({0.3}), cpt({0.3})) == doctest::Approx(0.0));

    auto ball = DomainSpec::ball(2, 1.0);
    CHECK(kobayashi_distance_upper(ball, cpt({0.0, 0.0}), cpt({0.5, 0.0})) ==
          doctest::Approx(0.5 * std::log(3.0)).epsilon(1e-12));

    // monotone nonincreasing in the budget
    auto ell = DomainSpec::ellipsoid({1.0, 2.0});
    CVec p = cpt({0.2, 0.5}), q = cpt({-0.3, Complex(0.0, 0.8)});
    double prev = 1e300;
    for (int budget : {0, 1, 2, 3}) {
        double d = kobayashi_distance_upper(ell, p, q, budget);
        CHECK(d <= prev + 1e-12);
        prev = d;
    }
    // chain through intermediate points never beats the direct bound's triangle
    double direct = kobayashi_distance_upper(disk, cpt({Complex(0.3, 0)}), cpt({Complex(0, 0.3)}));
    double via0 = kobayashi_distance_upper(disk, cpt({Complex(0.3, 0)}), cpt({0.0})) +
                  kobayashi_distance_upper(disk, cpt({0.0}), cpt({Complex(0, 0.3)}));
    CHECK(direct <= via0 + 1e-12);
}

TEST_CASE("hyperbolicity certificates") {
    SUBCASE("disk with the Poincare metric, B = 4: margin 0") {
        auto disk = DomainSpec::ball(1, 1.0);
        auto rep = hyperbolicity_check(disk, *poincare_model(), 4.0, 100, 21);
        CHECK(rep.pass);
        CHECK(std::abs(rep.min_margin) < 1e-9);
    }
    SUBCASE("ball C^2 with the Bergman metric, B = 4/3: margin 0") {
        auto ball = DomainSpec::ball(2, 1.0);
        auto bb = hermitian_finsler(ball_bergman_field(2, 1.0));
        auto rep = hyperbolicity_check(ball, *bb, 4.0 / 3.0, 100, 22);
        CHECK(rep.pass);
        CHECK(std::abs(rep.min_margin) < 1e-9);
    }
    SUBCASE("flat metric rejected: no negative curvature bound") {
        auto ball = DomainSpec::ball(2, 1.0);
        CHECK_THROWS_AS(hyperbolicity_check(ball, *flat_model(2), 0.0, 10, 23), std::invalid_argument);
        CHECK_THROWS_AS(hyperbolicity_check(ball, *flat_model(2), -1.0, 10, 23), std::invalid_argument);
    }
}
