#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "invmet/finsler.hpp"
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

HermitianKernelPoly perturbed_potential() {
    return make_real_poly(2, {
        {Complex(1, 0), {1, 0}, {1, 0}},
        {Complex(1, 0), {0, 1}, {0, 1}},
        {Complex(0.2, 0), {1, 1}, {1, 1}},
        {Complex(0.1, 0), {2, 0}, {2, 0}},
    });
}
} // namespace

TEST_CASE("explicit family values") {
    auto g = explicit_family(1.0, 1.0, 1.0, /*enforce=*/false);
    // at the origin t = s = 0, so G = |v|^2
    CVec v = cpt({Complex(0.3, 0.4), Complex(-0.5, 0.2)});
    CHECK(g->value(cpt({0.0, 0.0}), v) == doctest::Approx(v.squaredNorm()).epsilon(1e-15));
    // r = 1, t = s = 0.25 -> e^{0.5}
    CHECK(g->value(cpt({0.5, 0.0}), cpt({1.0, 0.0})) == doctest::Approx(std::exp(0.5)).epsilon(1e-14));
}

TEST_CASE("homogeneity G(z, zeta v) = |zeta|^2 G(z, v)") {
    auto g = explicit_family(1.0, 0.5, 1.0);
    SampleRng rng(3);
    auto dom = DomainSpec::ball(2, 1.0);
    for (int rep = 0; rep < 200; ++rep) {
        CVec z = dom.sample_interior(rng);
        CVec v = rng.cvec_gaussian(2);
        Complex zeta = rng.complex_gaussian();
        double lhs = g->value(z, zeta * v);
        double rhs = std::norm(zeta) * g->value(z, v);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}

TEST_CASE("window enforcement") {
    CHECK_THROWS_AS(explicit_family(1.0, 2.0, 1.0), config_error);           // b >= 1/M0
    CHECK_NOTHROW(explicit_family(1.0, 2.0, 1.0, /*enforce=*/false));        // probe allowed
    CHECK_NOTHROW(explicit_family(1.0, 0.5, 1.0));
    CHECK_THROWS_AS(explicit_family(-1.0, 0.5, 1.0), std::invalid_argument); // a > 0 required
}

TEST_CASE("closed-form jet matches finite differences") {
    auto g = explicit_family(1.3, 0.4, 1.5, false);
    SampleRng rng(7);
    auto dom = DomainSpec::ball(2, 1.5);
    for (int rep = 0; rep < 5; ++rep) {
        CVec z = dom.sample_interior(rng, 0.2);
        CVec v = rng.cvec_gaussian(2);
        FinslerJet a = g->jet(z, v);
        FinslerJet b = fd_jet(*g, z, v);
        CHECK(std::abs(a.G - b.G) < 1e-9 * (1 + std::abs(a.G)));
        CHECK((a.dG_dz - b.dG_dz).norm() < 1e-7 * (1 + a.dG_dz.norm()));
        CHECK((a.dG_dv - b.dG_dv).norm() < 1e-7 * (1 + a.dG_dv.norm()));
        CHECK((a.levi - b.levi).norm() < 1e-6 * (1 + a.levi.norm()));
        CHECK((a.hess_zz - b.hess_zz).norm() < 1e-6 * (1 + a.hess_zz.norm()));
        CHECK((a.hess_zv - b.hess_zv).norm() < 1e-6 * (1 + a.hess_zv.norm()));
    }
}

TEST_CASE("levi matrix anchors") {
    SUBCASE("identity at the center for any a, b") {
        auto g = explicit_family(1.7, 0.6, 1.0, false);
        CMat L = levi_matrix(*g, cpt({0.0, 0.0}), cpt({0.3, Complex(0.1, -0.2)}));
        CHECK((L - CMat::Identity(2, 2)).norm() < 1e-13);
    }
    SUBCASE("b = 0: Levi matrix independent of v") {
        auto g = explicit_family(0.8, 0.0, 1.0);
        CVec z = cpt({Complex(0.2, 0.3), -0.4});
        CMat l1 = levi_matrix(*g, z, cpt({1.0, 0.0}));
        CMat l2 = levi_matrix(*g, z, cpt({Complex(0.3, 0.7), 2.0}));
        CHECK((l1 - l2).norm() < 1e-13);
        double expected = std::exp(0.8 * z.squaredNorm());
        CHECK(std::abs(l1(0, 0).real() - expected) < 1e-13);
    }
    SUBCASE("zero vector rejected") {
        auto g = explicit_family(1.0, 0.5, 1.0);
        CHECK_THROWS_AS(levi_matrix(*g, cpt({0.0, 0.0}), cpt({0.0, 0.0})), std::invalid_argument);
    }
}

TEST_CASE("strong pseudoconvexity check") {
    auto dom = DomainSpec::ball(2, 1.0);
    SUBCASE("explicit family inside the window is positive definite") {
        auto g = explicit_family(1.0, 0.5, dom.sup_norm());
        auto rep = strong_pseudoconvexity_check(*g, dom, 1000, 42);
        CHECK(rep.pass);
        CHECK(rep.min_eigenvalue > 0.0);
        CHECK(rep.max_hermiticity_error < 1e-10);
    }
    SUBCASE("flat metric: minimum eigenvalue exactly 1") {
        auto rep = strong_pseudoconvexity_check(*flat_model(2), dom, 50, 1);
        CHECK(rep.min_eigenvalue == doctest::Approx(1.0).epsilon(1e-14));
    }
    SUBCASE("b = 0: minimum eigenvalue e^{a t} >= 1, approaches 1 at the center") {
        auto g = explicit_family(1.0, 0.0, dom.sup_norm());
        auto rep = strong_pseudoconvexity_check(*g, dom, 400, 3);
        CHECK(rep.min_eigenvalue >= 1.0 - 1e-12);
    }
    SUBCASE("outside the window: recorded, not crashing") {
        auto g = explicit_family(1.0, 2.0, dom.sup_norm(), false);
        auto rep = strong_pseudoconvexity_check(*g, dom, 200, 5);
        CHECK(rep.samples == 200);  // verdict recorded either way
    }
}

TEST_CASE("chern-finsler curvature anchors") {
    SUBCASE("poincare disk: constant -4") {
        auto p = poincare_model();
        for (double x : {0.0, 0.3, -0.6}) {
            CHECK(hsc_chern_finsler(*p, cpt({x}), cpt({1.0})) == doctest::Approx(-4.0).epsilon(1e-9));
        }
    }
    SUBCASE("explicit family at the center: -2(a+b)") {
        auto g = explicit_family(1.0, 0.0, 1.0);
        CHECK(hsc_chern_finsler(*g, cpt({0.0, 0.0}), cpt({1.0, 0.0})) == doctest::Approx(-2.0).epsilon(1e-9));
        auto g2 = explicit_family(1.0, 0.5, 1.0);
        CHECK(hsc_chern_finsler(*g2, cpt({0.0, 0.0}), cpt({1.0, 0.0})) == doctest::Approx(-3.0).epsilon(1e-9));
    }
    SUBCASE("scale invariance in v") {
        auto g = explicit_family(1.0, 0.5, 1.0);
        SampleRng rng(9);
        CVec z = cpt({Complex(0.2, -0.3), Complex(0.4, 0.1)});
        CVec v = rng.cvec_gaussian(2);
        double base = hsc_chern_finsler(*g, z, v);
        for (int rep = 0; rep < 5; ++rep) {
            Complex zeta = rng.complex_gaussian();
            if (std::abs(zeta) < 0.2) continue;
            CHECK(hsc_chern_finsler(*g, z, zeta * v) == doctest::Approx(base).epsilon(1e-8));
        }
    }
    SUBCASE("hermitian reduction: twice the kernel-convention value") {
        // non-trivial Kaehler metric: exact potential field
        auto field = potential_field(perturbed_potential());
        auto model = hermitian_finsler(field);
        SampleRng rng(11);
        auto dom = DomainSpec::ball(2, 0.8);
        for (int rep = 0; rep < 8; ++rep) {
            CVec z = dom.sample_interior(rng);
            CVec v = rng.unit_tangent(2);
            double cf = hsc_chern_finsler(*model, z, v);
            double kk = hsc(*field, z, v);
            CHECK(cf == doctest::Approx(2.0 * kk).epsilon(1e-6));
        }
        // ball Bergman as a Finsler model: -4/(n+1)
        auto bb = hermitian_finsler(ball_bergman_field(2, 1.0));
        CHECK(hsc_chern_finsler(*bb, cpt({0.2, Complex(0.0, 0.3)}), cpt({1.0, 0.5})) ==
              doctest::Approx(-4.0 / 3.0).epsilon(1e-9));
    }
    SUBCASE("explicit family on the ball: strictly negative everywhere sampled") {
        auto g = explicit_family(1.0, 0.5, 1.0);
        auto dom = DomainSpec::ball(2, 1.0);
        SampleRng rng(13);
        double worst = -1e300;
        for (int rep = 0; rep < 400; ++rep) {
            CVec z = dom.sample_interior(rng);
            CVec v = rng.unit_tangent(2);
            worst = std::max(worst, hsc_chern_finsler(*g, z, v));
        }
        CHECK(worst < 0.0);
    }
}

TEST_CASE("disc lower bounds") {
    SUBCASE("poincare identity disc is extremal: -4") {
        auto p = poincare_model();
        auto dom = DomainSpec::ball(1, 1.0);
        // the affine disc through 0 with the implementation's safety factor is
        // not the extremal rescaling, so compare against the true sup with slack
        double val = hsc_disc_lower(*p, dom, cpt({0.0}), cpt({1.0}));
        CHECK(val <= -4.0 + 1e-6);
    }
    SUBCASE("flat pullback is flat") {
        auto f = flat_model(2);
        auto dom = DomainSpec::ball(2, 1.0);
        double val = hsc_disc_lower(*f, dom, cpt({0.1, 0.2}), cpt({1.0, 0.0}));
        CHECK(std::abs(val) < 1e-8);
    }
    SUBCASE("disc values never exceed the chern-finsler curvature") {
        auto g = explicit_family(1.0, 1.0, 1.0, false);
        auto dom = DomainSpec::ball(2, 1.0);
        SampleRng rng(17);
        for (int rep = 0; rep < 10; ++rep) {
            CVec z = dom.sample_interior(rng, 0.1);
            CVec v = rng.unit_tangent(2);
            double lower = hsc_disc_lower(*g, dom, z, v);
            double upper = hsc_chern_finsler(*g, z, v);
            CHECK(lower <= upper + 1e-6);
        }
    }
    SUBCASE("polynomial improvement stays a lower bound") {
        auto g = explicit_family(1.0, 0.5, 1.0);
        auto dom = DomainSpec::ball(2, 1.0);
        CVec z = cpt({0.3, 0.0}), v = cpt({0.0, 1.0});
        double affine = hsc_disc_lower(*g, dom, z, v, 1);
        double poly = hsc_disc_lower(*g, dom, z, v, 3, 99);
        double cf = hsc_chern_finsler(*g, z, v);
        CHECK(poly >= affine - 1e-9);
        CHECK(poly <= cf + 1e-6);
    }
}

TEST_CASE("sum model: levi matrices add") {
    auto g = explicit_family(1.0, 0.5, 1.0);
    auto b = hermitian_finsler(ball_bergman_field(2, 1.0));
    auto h = sum_model(0.7, g, 1.0, b);
    CVec z = cpt({0.2, Complex(0.1, 0.4)}), v = cpt({Complex(0.5, -0.1), 1.0});
    CHECK(h->value(z, v) == doctest::Approx(0.7 * g->value(z, v) + b->value(z, v)).epsilon(1e-14));
    CMat L = levi_matrix(*h, z, v);
    CMat expect = 0.7 * levi_matrix(*g, z, v) + levi_matrix(*b, z, v);
    CHECK((L - expect).norm() < 1e-12);
}

TEST_CASE("metric spec round trip") {
    auto dom = DomainSpec::ball(2, 1.0);
    auto j = metric_spec_to_json("explicit-family", 1.0, 0.5);
    auto m = metric_from_spec(j, dom);
    // t = 0.25, s = 0.25: G = exp(a t + b s) = exp(0.375)
    CHECK(m->value(cpt({0.5, 0.0}), cpt({1.0, 0.0})) == doctest::Approx(std::exp(0.375)).epsilon(1e-12));

    auto jd = metric_spec_to_json("hermitian-diagonal", 2.0, 0.0);
    auto md = metric_from_spec(jd, dom);
    CHECK(md->value(cpt({0.5, 0.0}), cpt({0.0, 1.0})) == doctest::Approx(std::exp(2.0 * 0.25)).epsilon(1e-12));

    auto disk = DomainSpec::ball(1, 1.0);
    auto mp = metric_from_spec(metric_spec_to_json("poincare", 0, 0), disk);
    CHECK(mp->value(cpt({0.5}), cpt({1.0})) == doctest::Approx(1.0 / std::pow(0.75, 2)).epsilon(1e-12));
}
