#include "invmet/finsler.hpp"

#include "invmet/optim.hpp"
#include "invmet/rng.hpp"
#include "invmet/wirtinger.hpp"

#include <cmath>

namespace invmet {

// ---------------------------------------------------------------------------
// jets
// ---------------------------------------------------------------------------

FinslerJet fd_jet(const FinslerModel& model, const CPoint& z, const CTangent& v) {
    const int n = static_cast<int>(z.size());
    require_nonzero(v, "fd_jet");
    WirtingerFD fd;
    // concatenate (z, v) into one coordinate vector
    auto F = [&](const CVec& w) {
        return model.value(w.head(n), w.tail(n));
    };
    CVec w(2 * n);
    w << z, v;
    std::vector<int> zi(n), vi(n);
    for (int i = 0; i < n; ++i) {
        zi[i] = i;
        vi[i] = n + i;
    }
    FinslerJet J;
    J.G = model.value(z, v);
    J.dG_dz = CVec(n);
    J.dG_dv = CVec(n);
    for (int i = 0; i < n; ++i) {
        J.dG_dz(i) = fd.dz(F, w, i);
        J.dG_dv(i) = fd.dz(F, w, n + i);
    }
    J.levi = fd.mixed_block(F, w, vi, vi);
    J.hess_zz = fd.mixed_block(F, w, zi, zi);
    J.hess_zv = fd.mixed_block(F, w, zi, vi);
    return J;
}

FinslerJet FinslerModel::jet(const CPoint& z, const CTangent& v) const { return fd_jet(*this, z, v); }

// ---------------------------------------------------------------------------
// models
// ---------------------------------------------------------------------------

namespace {

// G = r phi(t, s), phi = exp(a t + b s), t = |z|^2, r = |v|^2, s = |<z,v>|^2/r
class ExplicitFamilyModel final : public FinslerModel {
public:
    ExplicitFamilyModel(double a, double b, double sup_norm, bool enforce)
        : a_(a), b_(b), m0_(sup_norm) {
        require(a > 0, "explicit family: a must be positive");
        require(b >= 0, "explicit family: b must be nonnegative");
        if (enforce && b > 0 && !(b < 1.0 / m0_))
            throw config_error("explicit family: strong pseudoconvexity window requires 0 < b < 1/M0 = " +
                               fmt17(1.0 / m0_));
    }
    int dim() const override { return -1; }  // dimension-generic; set by inputs

    double value(const CPoint& z, const CTangent& v) const override {
        double r = v.squaredNorm();
        if (r == 0.0) return 0.0;  // continuous extension at the zero section
        double t = z.squaredNorm();
        Complex p = z.dot(v);  // sum v_i conj(z_i)
        double s = std::norm(p) / r;
        return r * std::exp(a_ * t + b_ * s);
    }

    FinslerJet jet(const CPoint& z, const CTangent& v) const override {
        require_nonzero(v, "explicit family jet");
        const int n = static_cast<int>(z.size());
        double r = v.squaredNorm();
        double t = z.squaredNorm();
        Complex p = z.dot(v);
        double s = std::norm(p) / r;
        double phi = std::exp(a_ * t + b_ * s);

        CVec zbar = z.conjugate(), vbar = v.conjugate();
        // q_a = ds/dv_a = (conj(p) zbar_a - s vbar_a)/r
        CVec q = (std::conj(p) * zbar - s * vbar) / r;

        FinslerJet J;
        J.G = r * phi;
        J.dG_dz = phi * (a_ * r * zbar + b_ * p * vbar);
        J.dG_dv = phi * (vbar + b_ * r * q);
        J.levi = phi * ((1.0 - b_ * s) * CMat::Identity(n, n) +
                        b_ * (zbar * z.transpose()) + (b_ * b_ * r) * (q * q.adjoint()));
        // d2G/dz_mu dzbar_nu
        CVec A = a_ * r * zbar + b_ * p * vbar;                  // index mu
        CVec Bv = a_ * z + b_ * std::conj(p) * v / r;            // index nu
        J.hess_zz = phi * (A * Bv.transpose() + a_ * r * CMat::Identity(n, n) + b_ * (vbar * v.transpose()));
        // d2G/dz_mu dvbar_b
        J.hess_zv = phi * (A * q.conjugate().transpose() * b_ + a_ * (zbar * v.transpose()) +
                           b_ * p * CMat::Identity(n, n));
        return J;
    }

    std::string describe() const override {
        return "explicit-family(a=" + fmt17(a_) + ", b=" + fmt17(b_) + ")";
    }

    double a() const { return a_; }
    double b() const { return b_; }

private:
    double a_, b_, m0_;
};

class HermitianFinslerModel final : public FinslerModel {
public:
    explicit HermitianFinslerModel(std::shared_ptr<KahlerMetricField> f) : f_(std::move(f)) {}
    int dim() const override { return f_->dim(); }

    double value(const CPoint& z, const CTangent& v) const override {
        return ((v.transpose() * f_->metric(z) * v.conjugate())(0, 0)).real();
    }

    FinslerJet jet(const CPoint& z, const CTangent& v) const override {
        require_nonzero(v, "hermitian jet");
        const int n = dim();
        CMat H = f_->metric(z);
        std::vector<CMat> dh;
        std::vector<std::vector<CMat>> ddh;
        f_->derivatives(z, dh, ddh);
        FinslerJet J;
        J.G = ((v.transpose() * H * v.conjugate())(0, 0)).real();
        J.levi = H;
        J.dG_dz = CVec(n);
        J.dG_dv = H * v.conjugate();
        J.hess_zz = CMat(n, n);
        J.hess_zv = CMat(n, n);
        for (int mu = 0; mu < n; ++mu) {
            J.dG_dz(mu) = (v.transpose() * dh[mu] * v.conjugate())(0, 0);
            for (int nu = 0; nu < n; ++nu)
                J.hess_zz(mu, nu) = (v.transpose() * ddh[mu][nu] * v.conjugate())(0, 0);
            for (int b = 0; b < n; ++b) {
                Complex s(0, 0);
                for (int a = 0; a < n; ++a) s += dh[mu](a, b) * v(a);
                J.hess_zv(mu, b) = s;
            }
        }
        return J;
    }

    std::string describe() const override { return "hermitian"; }

private:
    std::shared_ptr<KahlerMetricField> f_;
};

class SumFinslerModel final : public FinslerModel {
public:
    SumFinslerModel(double c1, std::shared_ptr<FinslerModel> m1, double c2, std::shared_ptr<FinslerModel> m2)
        : c1_(c1), m1_(std::move(m1)), c2_(c2), m2_(std::move(m2)) {}
    int dim() const override {
        int d1 = m1_->dim();
        return d1 >= 0 ? d1 : m2_->dim();
    }
    double value(const CPoint& z, const CTangent& v) const override {
        return c1_ * m1_->value(z, v) + c2_ * m2_->value(z, v);
    }
    FinslerJet jet(const CPoint& z, const CTangent& v) const override {
        FinslerJet a = m1_->jet(z, v), b = m2_->jet(z, v);
        FinslerJet J;
        J.G = c1_ * a.G + c2_ * b.G;
        J.dG_dz = c1_ * a.dG_dz + c2_ * b.dG_dz;
        J.dG_dv = c1_ * a.dG_dv + c2_ * b.dG_dv;
        J.levi = c1_ * a.levi + c2_ * b.levi;
        J.hess_zz = c1_ * a.hess_zz + c2_ * b.hess_zz;
        J.hess_zv = c1_ * a.hess_zv + c2_ * b.hess_zv;
        return J;
    }
    std::string describe() const override {
        return fmt17(c1_) + "*" + m1_->describe() + " + " + fmt17(c2_) + "*" + m2_->describe();
    }

private:
    double c1_;
    std::shared_ptr<FinslerModel> m1_;
    double c2_;
    std::shared_ptr<FinslerModel> m2_;
};

} // namespace

std::shared_ptr<FinslerModel> explicit_family(double a, double b, double sup_norm, bool enforce_window) {
    return std::make_shared<ExplicitFamilyModel>(a, b, sup_norm, enforce_window);
}
std::shared_ptr<FinslerModel> hermitian_finsler(std::shared_ptr<KahlerMetricField> field) {
    return std::make_shared<HermitianFinslerModel>(std::move(field));
}
std::shared_ptr<FinslerModel> poincare_model() { return hermitian_finsler(poincare_disk_field()); }
std::shared_ptr<FinslerModel> flat_model(int n) { return hermitian_finsler(flat_field(n)); }
std::shared_ptr<FinslerModel> sum_model(double c1, std::shared_ptr<FinslerModel> m1, double c2,
                                        std::shared_ptr<FinslerModel> m2) {
    return std::make_shared<SumFinslerModel>(c1, std::move(m1), c2, std::move(m2));
}
std::shared_ptr<FinslerModel> ball_kobayashi_sq_model(int n, double radius) {
    return hermitian_finsler(scaled_field(ball_bergman_field(n, radius), 1.0 / (n + 1)));
}

// ---------------------------------------------------------------------------
// operations
// ---------------------------------------------------------------------------

CMat levi_matrix(const FinslerModel& model, const CPoint& z, const CTangent& v) {
    require_nonzero(v, "levi_matrix");
    return model.jet(z, v).levi;
}

double hsc_chern_finsler(const FinslerModel& model, const CPoint& z, const CTangent& v) {
    require_nonzero(v, "hsc_chern_finsler");
    FinslerJet J = model.jet(z, v);
    Eigen::FullPivLU<CMat> lu(J.levi);
    if (!lu.isInvertible())
        throw degeneracy_error("hsc_chern_finsler: singular Levi matrix at evaluation point");
    CVec u = J.hess_zv.transpose() * v;                       // u_b = v^mu d2G/dz^mu dvbar^b
    Complex zz = (v.transpose() * J.hess_zz * v.conjugate())(0, 0);
    Complex term = (u.transpose() * lu.solve(u.conjugate()))(0, 0);
    return 2.0 * (term - zz).real() / (J.G * J.G);
}

namespace {

// Gaussian curvature at 0 of the conformal metric lambda2(zeta) on the disc:
// K = -(2/lambda2) d dbar log lambda2, with d dbar = Laplacian/4; five-point
// stencil plus one Richardson step.
double disc_gaussian_curvature_at_0(const std::function<double(Complex)>& lambda2) {
    auto loglam = [&](double x, double y) { return std::log(lambda2(Complex(x, y))); };
    auto lap = [&](double h) {
        return (loglam(h, 0) + loglam(-h, 0) + loglam(0, h) + loglam(0, -h) - 4.0 * loglam(0, 0)) / (h * h);
    };
    double h = 5e-3;
    double lap_r = (4.0 * lap(h / 2) - lap(h)) / 3.0;
    return -2.0 * (lap_r / 4.0) / lambda2(Complex(0, 0));
}

} // namespace

double hsc_disc_lower(const FinslerModel& model, const DomainSpec& domain, const CPoint& z,
                      const CTangent& v, int disc_degree, std::uint64_t seed) {
    require_nonzero(v, "hsc_disc_lower");
    const int n = domain.dim();
    double radius = domain.affine_disc_radius(z, v);
    double rho = 0.5 * radius;  // stay clear of the boundary

    auto disc_ok = [&](const std::vector<CVec>& coeff) {
        for (double rr : {0.5, 0.8, 0.95, 0.995}) {
            for (int k = 0; k < 32; ++k) {
                double th = 2.0 * kPi * k / 32.0;
                Complex zeta = rr * Complex(std::cos(th), std::sin(th));
                CVec w = z + rho * zeta * v;
                Complex zp = zeta;
                for (const auto& c : coeff) {
                    zp *= zeta;
                    w += zp * c;
                }
                if (!domain.contains(w)) return false;
            }
        }
        return true;
    };

    auto curvature_of = [&](const std::vector<CVec>& coeff) {
        auto lam2 = [&](Complex zeta) {
            CVec w = z + rho * zeta * v;
            CVec dw = rho * v;
            Complex zp = zeta;
            for (size_t k = 0; k < coeff.size(); ++k) {
                double deg = static_cast<double>(k + 2);
                dw += deg * zp * coeff[k];
                zp *= zeta;
                w += zp * coeff[k];
            }
            return model.value(w, dw);
        };
        return disc_gaussian_curvature_at_0(lam2);
    };

    double best = curvature_of({});

    if (disc_degree >= 2) {
        // local polynomial improvement over the extra coefficients
        const int extra = disc_degree - 1;
        SampleRng rng(seed ^ 0x5eedULL);
        auto unpack = [&](const RVec& x) {
            std::vector<CVec> coeff(extra, CVec::Zero(n));
            for (int k = 0; k < extra; ++k)
                for (int i = 0; i < n; ++i)
                    coeff[k](i) = Complex(x(2 * (k * n + i)), x(2 * (k * n + i) + 1));
            return coeff;
        };
        auto objective = [&](const RVec& x) {
            auto coeff = unpack(x);
            if (!disc_ok(coeff)) return 1e6;  // stay feasible
            return -curvature_of(coeff);
        };
        for (int restart = 0; restart < 4; ++restart) {
            RVec x0 = RVec::Zero(2 * extra * n);
            if (restart > 0)
                for (int i = 0; i < x0.size(); ++i) x0(i) = 0.05 * rho * rng.gaussian();
            RVec xbest = nelder_mead(objective, x0, 0.05 * rho, 150);
            auto coeff = unpack(xbest);
            if (disc_ok(coeff)) best = std::max(best, curvature_of(coeff));
        }
    }
    return best;
}

PseudoconvexityReport strong_pseudoconvexity_check(const FinslerModel& model, const DomainSpec& domain,
                                                   int sample_count, std::uint64_t seed, double tolerance) {
    require(sample_count >= 1, "strong_pseudoconvexity_check: sample_count >= 1");
    SampleRng rng(seed);
    PseudoconvexityReport rep;
    rep.samples = sample_count;
    rep.tolerance = tolerance;
    rep.min_eigenvalue = std::numeric_limits<double>::infinity();
    const int n = domain.dim();
    for (int k = 0; k < sample_count; ++k) {
        CPoint z = domain.sample_interior(rng);
        CTangent v = rng.unit_tangent(n);
        CMat L = model.jet(z, v).levi;
        rep.max_hermiticity_error = std::max(rep.max_hermiticity_error, (L - CMat(L.adjoint())).norm());
        Eigen::SelfAdjointEigenSolver<CMat> es(0.5 * (L + CMat(L.adjoint())));
        double lo = es.eigenvalues().minCoeff();
        if (lo < rep.min_eigenvalue) {
            rep.min_eigenvalue = lo;
            rep.worst_point = z;
            rep.worst_direction = v;
        }
    }
    rep.pass = rep.min_eigenvalue > tolerance;
    return rep;
}

// ---------------------------------------------------------------------------
// metric spec files
// ---------------------------------------------------------------------------

nlohmann::json metric_spec_to_json(const std::string& kind, double a, double b) {
    nlohmann::json j;
    j["kind"] = kind;
    if (kind == "explicit-family") {
        j["a"] = a;
        j["b"] = b;
    } else if (kind == "hermitian-diagonal") {
        j["a"] = a;
    } else if (kind != "poincare") {
        throw std::invalid_argument("metric spec: unknown kind " + kind);
    }
    return j;
}

std::shared_ptr<FinslerModel> metric_from_spec(const nlohmann::json& spec, const DomainSpec& domain) {
    std::string kind = spec.at("kind").get<std::string>();
    if (kind == "explicit-family")
        return explicit_family(spec.at("a").get<double>(), spec.at("b").get<double>(), domain.sup_norm());
    if (kind == "hermitian-diagonal")
        return explicit_family(spec.at("a").get<double>(), 0.0, domain.sup_norm());
    if (kind == "poincare") {
        require(domain.dim() == 1, "poincare metric spec requires a one-dimensional domain");
        return poincare_model();
    }
    throw std::invalid_argument("metric spec: unknown kind " + kind);
}

} // namespace invmet
