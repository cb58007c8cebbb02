#include "invmet/domain.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

namespace invmet {

std::string to_string(DomainKind k) {
    switch (k) {
        case DomainKind::Ball: return "ball";
        case DomainKind::Polydisk: return "polydisk";
        case DomainKind::Ellipsoid: return "ellipsoid";
        case DomainKind::ConvexSmooth: return "convex-smooth";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// construction
// ---------------------------------------------------------------------------

DomainSpec DomainSpec::ball(int n, double radius, const CVec& center) {
    require(n >= 1, "ball: dimension must be >= 1");
    require(radius > 0, "ball: radius must be positive");
    DomainSpec d;
    d.kind_ = DomainKind::Ball;
    d.n_ = n;
    d.radii_ = {radius};
    d.recenter_ = center.size() ? center : CVec::Zero(n);
    require_dim(d.recenter_, n, "ball center");
    d.sup_norm_ = radius;
    return d;
}

DomainSpec DomainSpec::polydisk(const std::vector<double>& radii, const CVec& center) {
    require(!radii.empty(), "polydisk: need at least one radius");
    for (double r : radii) require(r > 0, "polydisk: radii must be positive");
    DomainSpec d;
    d.kind_ = DomainKind::Polydisk;
    d.n_ = static_cast<int>(radii.size());
    d.radii_ = radii;
    d.recenter_ = center.size() ? center : CVec::Zero(d.n_);
    require_dim(d.recenter_, d.n_, "polydisk center");
    double s = 0;
    for (double r : radii) s += r * r;
    d.sup_norm_ = std::sqrt(s);
    return d;
}

DomainSpec DomainSpec::ellipsoid(const std::vector<double>& semiaxes, const CVec& center) {
    require(!semiaxes.empty(), "ellipsoid: need at least one semiaxis");
    for (double a : semiaxes) require(a > 0, "ellipsoid: semiaxes must be positive");
    DomainSpec d;
    d.kind_ = DomainKind::Ellipsoid;
    d.n_ = static_cast<int>(semiaxes.size());
    d.radii_ = semiaxes;
    d.recenter_ = center.size() ? center : CVec::Zero(d.n_);
    require_dim(d.recenter_, d.n_, "ellipsoid center");
    d.sup_norm_ = *std::max_element(semiaxes.begin(), semiaxes.end());
    return d;
}

DomainSpec DomainSpec::convex_smooth(int n, ConvexSmoothOracles oracles) {
    require(n >= 1, "convex_smooth: dimension must be >= 1");
    require(static_cast<bool>(oracles.rho) && static_cast<bool>(oracles.grad),
            "convex_smooth: rho and grad oracles required");
    DomainSpec d;
    d.kind_ = DomainKind::ConvexSmooth;
    d.n_ = n;
    d.recenter_ = CVec::Zero(n);
    d.oracles_ = std::make_shared<ConvexSmoothOracles>(std::move(oracles));
    require(d.oracles_->rho(CVec::Zero(n)) < 0, "convex_smooth: 0 must be interior (rho(0) < 0)");
    // M0 from support sampling, inflated by the covering-angle correction
    const auto& dirs = direction_set(2 * n, 2048);
    double m = 0;
    for (const auto& u : dirs) m = std::max(m, d.support(u));
    double sin_delta = std::min(0.5, 2.0 * std::pow(2048.0, -1.0 / (2.0 * n - 1.0)));
    d.sup_norm_ = m / std::sqrt(1.0 - sin_delta * sin_delta);
    return d;
}

// ---------------------------------------------------------------------------
// containment and distances
// ---------------------------------------------------------------------------

bool DomainSpec::contains(const CPoint& z) const {
    require_dim(z, n_, "contains");
    switch (kind_) {
        case DomainKind::Ball:
            return z.norm() < radii_[0];
        case DomainKind::Polydisk: {
            for (int i = 0; i < n_; ++i)
                if (std::abs(z(i)) >= radii_[i]) return false;
            return true;
        }
        case DomainKind::Ellipsoid: {
            double s = 0;
            for (int i = 0; i < n_; ++i) s += std::norm(z(i)) / (radii_[i] * radii_[i]);
            return s < 1.0;
        }
        case DomainKind::ConvexSmooth:
            return oracles_->rho(z) < 0;
    }
    return false;
}

namespace {

RVec duplicate_semiaxes(const std::vector<double>& a) {
    RVec s(2 * a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        s(2 * i) = a[i];
        s(2 * i + 1) = a[i];
    }
    return s;
}

} // namespace

double ellipsoid_boundary_distance(const RVec& a, const RVec& p) {
    const int d = static_cast<int>(a.size());
    double amin = a.minCoeff();
    // nearest boundary point: x_i = p_i a_i^2/(a_i^2 + t), g(t) = sum x_i^2/a_i^2 = 1,
    // t in (-amin^2, 0] for interior p
    auto g = [&](double t) {
        double s = 0;
        for (int i = 0; i < d; ++i) {
            double q = a(i) * a(i) * p(i) / (a(i) * a(i) + t);
            s += q * q / (a(i) * a(i));
        }
        return s;
    };
    double lo = -amin * amin, hi = 0.0;
    // hard case: every coordinate on the smallest axis vanishes
    double glim = 0;
    bool min_axis_free = true;
    for (int i = 0; i < d; ++i) {
        if (std::abs(a(i) - amin) < 1e-14 && std::abs(p(i)) > 1e-300) min_axis_free = false;
    }
    if (min_axis_free) {
        for (int i = 0; i < d; ++i) {
            if (std::abs(a(i) - amin) < 1e-14) continue;
            double q = a(i) * a(i) * p(i) / (a(i) * a(i) - amin * amin);
            glim += q * q / (a(i) * a(i));
        }
        if (glim < 1.0) {
            // nearest point keeps a free component on the small axis
            double dist2 = 0, fill2 = amin * amin * (1.0 - glim);
            for (int i = 0; i < d; ++i) {
                if (std::abs(a(i) - amin) < 1e-14) continue;
                double x = a(i) * a(i) * p(i) / (a(i) * a(i) - amin * amin);
                dist2 += (x - p(i)) * (x - p(i));
            }
            return std::sqrt(dist2 + fill2);
        }
    }
    // bisection on g(t) = 1, g decreasing on (lo, hi]
    if (g(hi) >= 1.0) return 0.0;  // boundary point
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (g(mid) > 1.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-16 * amin * amin) break;
    }
    double t = 0.5 * (lo + hi);
    double dist2 = 0;
    for (int i = 0; i < d; ++i) {
        double x = a(i) * a(i) * p(i) / (a(i) * a(i) + t);
        dist2 += (x - p(i)) * (x - p(i));
    }
    return std::sqrt(dist2);
}

double ellipsoid_farthest_distance(const RVec& a, const RVec& p) {
    const int d = static_cast<int>(a.size());
    double amax = a.maxCoeff();
    auto g = [&](double t) {
        double s = 0;
        for (int i = 0; i < d; ++i) {
            double q = a(i) * a(i) * p(i) / (a(i) * a(i) + t);
            s += q * q / (a(i) * a(i));
        }
        return s;
    };
    // farthest branch: t < -amax^2
    bool max_axis_free = true;
    for (int i = 0; i < d; ++i)
        if (std::abs(a(i) - amax) < 1e-14 && std::abs(p(i)) > 1e-300) max_axis_free = false;
    if (max_axis_free) {
        double glim = 0;
        for (int i = 0; i < d; ++i) {
            if (std::abs(a(i) - amax) < 1e-14) continue;
            double q = a(i) * a(i) * p(i) / (a(i) * a(i) - amax * amax);
            glim += q * q / (a(i) * a(i));
        }
        if (glim < 1.0) {
            double dist2 = 0, fill2 = amax * amax * (1.0 - glim);
            for (int i = 0; i < d; ++i) {
                if (std::abs(a(i) - amax) < 1e-14) continue;
                double x = a(i) * a(i) * p(i) / (a(i) * a(i) - amax * amax);
                dist2 += (x - p(i)) * (x - p(i));
            }
            return std::sqrt(dist2 + fill2);
        }
    }
    // g increasing toward the pole at t -> (-amax^2)-, g -> 0 as t -> -inf
    double hi = -amax * amax;
    double lo = hi - std::max(1.0, p.norm() * a.maxCoeff()) * 10.0;
    while (g(lo) > 1.0) lo *= 2.0;
    for (int it = 0; it < 200; ++it) {
        double mid = 0.5 * (lo + hi);
        if (g(mid) < 1.0)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-16 * amax * amax) break;
    }
    double t = 0.5 * (lo + hi);
    double dist2 = 0;
    for (int i = 0; i < d; ++i) {
        double x = a(i) * a(i) * p(i) / (a(i) * a(i) + t);
        dist2 += (x - p(i)) * (x - p(i));
    }
    return std::sqrt(dist2);
}

double DomainSpec::convex_boundary_distance(const CPoint& z) const {
    // projected-gradient descent of ||w - z|| over rho(w) = 0
    const double tol = 1e-10;
    const int cap = 10000;
    RVec zr = realify(z);
    auto rho_r = [&](const RVec& x) { return oracles_->rho(complexify_direction(x)); };
    auto grad_r = [&](const RVec& x) { return oracles_->grad(complexify_direction(x)); };

    auto boundary_along = [&](const RVec& dir) {
        double step = std::max(1.0, sup_norm_);
        double t_lo = 0.0, t_hi = step;
        while (rho_r(zr + t_hi * dir) < 0) {
            t_lo = t_hi;
            t_hi *= 2.0;
            if (t_hi > 1e6 * step) throw config_error("convex_smooth: boundary not found along ray");
        }
        for (int i = 0; i < 80; ++i) {
            double mid = 0.5 * (t_lo + t_hi);
            (rho_r(zr + mid * dir) < 0 ? t_lo : t_hi) = mid;
        }
        return RVec(zr + 0.5 * (t_lo + t_hi) * dir);
    };

    // multi-start: the distance to the boundary has several critical points
    // (near/far vertices), so seed with a deterministic direction sweep
    const auto& seeds = direction_set(2 * n_, 64);
    RVec w = boundary_along(seeds[0]);
    for (const auto& dir : seeds) {
        RVec cand = boundary_along(dir);
        if ((cand - zr).norm() < (w - zr).norm()) w = cand;
    }

    auto project_to_boundary = [&](RVec x) {
        for (int i = 0; i < 60; ++i) {
            double r = rho_r(x);
            RVec gvec = grad_r(x);
            double g2 = gvec.squaredNorm();
            if (g2 < 1e-28) break;
            x -= (r / g2) * gvec;
            if (std::abs(rho_r(x)) < 1e-14) break;
        }
        return x;
    };
    w = project_to_boundary(w);

    double eta = 0.5;
    double best = (w - zr).norm();
    for (int it = 0; it < cap; ++it) {
        RVec n = grad_r(w);
        n.normalize();
        RVec d = w - zr;
        RVec dt = d - d.dot(n) * n;  // tangential component of the objective gradient
        if (dt.norm() < tol) break;
        RVec w_try = project_to_boundary(w - eta * dt);
        double val = (w_try - zr).norm();
        if (val < best) {
            w = w_try;
            best = val;
        } else {
            eta *= 0.5;
            if (eta < 1e-14) break;
        }
    }
    return best;
}

double DomainSpec::boundary_distance(const CPoint& z) const {
    require_dim(z, n_, "boundary_distance");
    if (!contains(z)) {
        // allow closure points (distance 0); reject genuinely exterior input
        double margin = 0.0;
        switch (kind_) {
            case DomainKind::Ball: margin = z.norm() - radii_[0]; break;
            case DomainKind::Polydisk: {
                margin = -1e300;
                for (int i = 0; i < n_; ++i) margin = std::max(margin, std::abs(z(i)) - radii_[i]);
                break;
            }
            case DomainKind::Ellipsoid: {
                double s = 0;
                for (int i = 0; i < n_; ++i) s += std::norm(z(i)) / (radii_[i] * radii_[i]);
                margin = std::sqrt(std::max(s, 0.0)) - 1.0;
                break;
            }
            case DomainKind::ConvexSmooth: margin = oracles_->rho(z); break;
        }
        if (margin > 1e-12) throw std::domain_error("boundary_distance: point outside the domain closure");
        return 0.0;
    }
    switch (kind_) {
        case DomainKind::Ball:
            return radii_[0] - z.norm();
        case DomainKind::Polydisk: {
            double m = 1e300;
            for (int i = 0; i < n_; ++i) m = std::min(m, radii_[i] - std::abs(z(i)));
            return m;
        }
        case DomainKind::Ellipsoid:
            return ellipsoid_boundary_distance(duplicate_semiaxes(radii_), realify(z));
        case DomainKind::ConvexSmooth:
            return convex_boundary_distance(z);
    }
    return 0.0;
}

double DomainSpec::enclosing_radius(const CPoint& z) const {
    require_dim(z, n_, "enclosing_radius");
    if (!contains(z)) throw std::domain_error("enclosing_radius: point outside the domain");
    switch (kind_) {
        case DomainKind::Ball:
            return radii_[0] + z.norm();
        case DomainKind::Polydisk: {
            double s = 0;
            for (int i = 0; i < n_; ++i) {
                double m = radii_[i] + std::abs(z(i));
                s += m * m;
            }
            return std::sqrt(s);
        }
        case DomainKind::Ellipsoid:
            return ellipsoid_farthest_distance(duplicate_semiaxes(radii_), realify(z));
        case DomainKind::ConvexSmooth: {
            const int count = 4096;
            const auto& dirs = direction_set(2 * n_, count);
            RVec zr = realify(z);
            double m = 0;
            for (const auto& u : dirs) m = std::max(m, support(u) - zr.dot(u));
            double sin_delta = std::min(0.5, 2.0 * std::pow(static_cast<double>(count), -1.0 / (2.0 * n_ - 1.0)));
            if (!std::isfinite(m)) throw config_error("enclosing_radius: unbounded support oracle");
            return m / std::sqrt(1.0 - sin_delta * sin_delta);
        }
    }
    return 0.0;
}

CVec DomainSpec::convex_support_point(const RVec& u) const {
    // maximize <w,u> over the body by ascent along u with boundary projection
    RVec x = RVec::Zero(2 * n_);
    auto rho_r = [&](const RVec& y) { return oracles_->rho(complexify_direction(y)); };
    auto grad_r = [&](const RVec& y) { return oracles_->grad(complexify_direction(y)); };
    // march to the boundary along u
    double t_lo = 0, t_hi = std::max(1.0, sup_norm_ > 0 ? sup_norm_ : 1.0);
    while (rho_r(t_hi * u) < 0) {
        t_lo = t_hi;
        t_hi *= 2;
        if (t_hi > 1e9) throw config_error("convex_smooth: unbounded along direction");
    }
    for (int i = 0; i < 80; ++i) {
        double mid = 0.5 * (t_lo + t_hi);
        (rho_r(mid * u) < 0 ? t_lo : t_hi) = mid;
    }
    x = t_lo * u;
    // sliding ascent: move along the tangential part of u, re-project
    double eta = 0.25;
    double best = x.dot(u);
    for (int it = 0; it < 2000; ++it) {
        RVec n = grad_r(x);
        n.normalize();
        RVec tang = u - u.dot(n) * n;
        if (tang.norm() < 1e-12) break;
        RVec y = x + eta * tang;
        // project back to the boundary along the ray from origin
        double lo = 0, hi = 2;
        if (rho_r(y) < 0) {
            while (rho_r(hi * y) < 0 && hi < 1e6) hi *= 2;
        }
        for (int i = 0; i < 60; ++i) {
            double mid = 0.5 * (lo + hi);
            (rho_r(mid * y) < 0 ? lo : hi) = mid;
        }
        y = lo * y;
        double val = y.dot(u);
        if (val > best + 1e-15) {
            x = y;
            best = val;
        } else {
            eta *= 0.5;
            if (eta < 1e-12) break;
        }
    }
    return complexify_direction(x);
}

double DomainSpec::support(const RVec& u) const {
    require(static_cast<int>(u.size()) == 2 * n_, "support: direction dimension mismatch");
    CVec c = complexify_direction(u);
    switch (kind_) {
        case DomainKind::Ball:
            return radii_[0] * c.norm();
        case DomainKind::Polydisk: {
            double s = 0;
            for (int i = 0; i < n_; ++i) s += radii_[i] * std::abs(c(i));
            return s;
        }
        case DomainKind::Ellipsoid: {
            double s = 0;
            for (int i = 0; i < n_; ++i) s += radii_[i] * radii_[i] * std::norm(c(i));
            return std::sqrt(s);
        }
        case DomainKind::ConvexSmooth: {
            CVec w = convex_support_point(u);
            return realify(w).dot(u);
        }
    }
    return 0.0;
}

double DomainSpec::affine_disc_radius(const CPoint& z, const CTangent& v) const {
    require_dim(z, n_, "affine_disc_radius");
    require_nonzero(v, "affine_disc_radius");
    if (!contains(z)) throw std::domain_error("affine_disc_radius: base point outside the domain");
    switch (kind_) {
        case DomainKind::Ball:
        case DomainKind::Ellipsoid: {
            // scale to the unit ball; for the ball this is the identity/l
            CVec zs = z, vs = v;
            if (kind_ == DomainKind::Ellipsoid) {
                zs = z;
                vs = v;
                for (int i = 0; i < n_; ++i) {
                    zs(i) /= radii_[i];
                    vs(i) /= radii_[i];
                }
            } else {
                zs /= radii_[0];
                vs /= radii_[0];
            }
            double t = zs.squaredNorm(), r = vs.squaredNorm();
            double c = std::abs(herm(vs, zs));
            // max_phase |z + r0 e^{i th} v|^2 = t + 2 r0 c + r0^2 r = 1
            return (-c + std::sqrt(c * c + r * (1.0 - t))) / r;
        }
        case DomainKind::Polydisk: {
            double m = 1e300;
            for (int i = 0; i < n_; ++i) {
                double vi = std::abs(v(i));
                if (vi < 1e-300) continue;
                m = std::min(m, (radii_[i] - std::abs(z(i))) / vi);
            }
            return m;
        }
        case DomainKind::ConvexSmooth: {
            // bisection on containment of a sampled circle; the certified radius
            // is shrunk by cos(pi/K) so the full disc is inside the sampled hull
            const int K = 256;
            auto circle_inside = [&](double r) {
                for (int k = 0; k < K; ++k) {
                    double th = 2.0 * kPi * k / K;
                    if (!contains(z + r * Complex(std::cos(th), std::sin(th)) * v)) return false;
                }
                return true;
            };
            double hi = boundary_distance(z) / v.norm();  // certainly inside
            while (circle_inside(hi * 2.0)) hi *= 2.0;
            double lo = hi;
            hi *= 2.0;
            for (int i = 0; i < 60; ++i) {
                double mid = 0.5 * (lo + hi);
                (circle_inside(mid) ? lo : hi) = mid;
            }
            return lo * std::cos(kPi / K);
        }
    }
    return 0.0;
}

// ---------------------------------------------------------------------------
// sampling
// ---------------------------------------------------------------------------

CPoint DomainSpec::sample_interior(SampleRng& rng, double min_boundary_dist) const {
    for (int attempt = 0; attempt < 100000; ++attempt) {
        CVec z(n_);
        switch (kind_) {
            case DomainKind::Ball: {
                CVec u = rng.unit_tangent(n_);
                double r = radii_[0] * std::pow(rng.uniform(), 1.0 / (2.0 * n_));
                z = r * u;
                break;
            }
            case DomainKind::Polydisk: {
                for (int i = 0; i < n_; ++i) {
                    double r = radii_[i] * std::sqrt(rng.uniform());
                    double th = rng.uniform(0, 2 * kPi);
                    z(i) = r * Complex(std::cos(th), std::sin(th));
                }
                break;
            }
            case DomainKind::Ellipsoid: {
                CVec u = rng.unit_tangent(n_);
                double r = std::pow(rng.uniform(), 1.0 / (2.0 * n_));
                for (int i = 0; i < n_; ++i) z(i) = radii_[i] * r * u(i);
                break;
            }
            case DomainKind::ConvexSmooth: {
                CVec u = rng.unit_tangent(n_);
                double r = sup_norm_ * std::pow(rng.uniform(), 1.0 / (2.0 * n_));
                z = r * u;
                if (!contains(z)) continue;
                break;
            }
        }
        if (min_boundary_dist > 0.0 && boundary_distance(z) < min_boundary_dist) continue;
        return z;
    }
    throw config_error("sample_interior: rejection sampling failed (margin too large?)");
}

CPoint DomainSpec::sample_boundary(SampleRng& rng) const {
    switch (kind_) {
        case DomainKind::Ball:
            return radii_[0] * rng.unit_tangent(n_);
        case DomainKind::Polydisk: {
            CVec z(n_);
            int j = static_cast<int>(rng.uniform(0, n_));
            j = std::min(j, n_ - 1);
            for (int i = 0; i < n_; ++i) {
                double th = rng.uniform(0, 2 * kPi);
                double r = (i == j) ? radii_[i] : radii_[i] * std::sqrt(rng.uniform());
                z(i) = r * Complex(std::cos(th), std::sin(th));
            }
            return z;
        }
        case DomainKind::Ellipsoid: {
            CVec u = rng.unit_tangent(n_);
            CVec z(n_);
            double s = 0;
            for (int i = 0; i < n_; ++i) s += std::norm(u(i)) / (radii_[i] * radii_[i]);
            double scale = 1.0 / std::sqrt(s);
            for (int i = 0; i < n_; ++i) z(i) = scale * u(i);
            return z;
        }
        case DomainKind::ConvexSmooth: {
            CVec u = rng.unit_tangent(n_);
            double lo = 0, hi = sup_norm_ * 1.5;
            while (oracles_->rho(hi * u) < 0) hi *= 2;
            for (int i = 0; i < 80; ++i) {
                double mid = 0.5 * (lo + hi);
                (oracles_->rho(mid * u) < 0 ? lo : hi) = mid;
            }
            return lo * u;
        }
    }
    return CVec::Zero(n_);
}

// ---------------------------------------------------------------------------
// serialization
// ---------------------------------------------------------------------------

namespace {
nlohmann::json cvec_to_json(const CVec& v) {
    nlohmann::json a = nlohmann::json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back({v(i).real(), v(i).imag()});
    return a;
}
CVec cvec_from_json(const nlohmann::json& a) {
    CVec v(a.size());
    for (size_t i = 0; i < a.size(); ++i) v(i) = Complex(a[i][0].get<double>(), a[i][1].get<double>());
    return v;
}

std::map<std::string, std::function<ConvexSmoothOracles()>>& convex_registry() {
    static std::map<std::string, std::function<ConvexSmoothOracles()>> reg;
    return reg;
}
} // namespace

void register_convex_smooth(const std::string& tag, std::function<ConvexSmoothOracles()> factory) {
    convex_registry()[tag] = std::move(factory);
}

ConvexSmoothOracles make_registered_convex_smooth(const std::string& tag) {
    auto it = convex_registry().find(tag);
    require(it != convex_registry().end(), "unknown convex-smooth tag: " + tag);
    ConvexSmoothOracles o = it->second();
    o.tag = tag;
    return o;
}

nlohmann::json DomainSpec::to_json() const {
    nlohmann::json j;
    j["kind"] = to_string(kind_);
    j["dimension"] = n_;
    switch (kind_) {
        case DomainKind::Ball: j["radius"] = radii_[0]; break;
        case DomainKind::Polydisk: j["radii"] = radii_; break;
        case DomainKind::Ellipsoid: j["semiaxes"] = radii_; break;
        case DomainKind::ConvexSmooth:
            require(!oracles_->tag.empty(), "convex-smooth domain has no registered tag; cannot serialize");
            j["tag"] = oracles_->tag;
            break;
    }
    if (recenter_.size() && recenter_.norm() > 0) j["recenter"] = cvec_to_json(recenter_);
    return j;
}

DomainSpec DomainSpec::from_json(const nlohmann::json& j) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        static const std::vector<std::string> known = {"kind", "dimension", "radius", "radii", "semiaxes", "tag", "recenter"};
        require(std::find(known.begin(), known.end(), it.key()) != known.end(),
                "domain spec: unknown field '" + it.key() + "'");
    }
    std::string kind = j.at("kind").get<std::string>();
    int n = j.at("dimension").get<int>();
    CVec center = j.contains("recenter") ? cvec_from_json(j["recenter"]) : CVec();
    if (kind == "ball") return ball(n, j.at("radius").get<double>(), center);
    if (kind == "polydisk") return polydisk(j.at("radii").get<std::vector<double>>(), center);
    if (kind == "ellipsoid") return ellipsoid(j.at("semiaxes").get<std::vector<double>>(), center);
    if (kind == "convex-smooth") return convex_smooth(n, make_registered_convex_smooth(j.at("tag").get<std::string>()));
    throw std::invalid_argument("domain spec: unknown kind '" + kind + "'");
}

std::uint64_t DomainSpec::hash() const { return fnv1a(to_json().dump()); }

const std::vector<RVec>& DomainSpec::direction_set(int real_dim, int count) {
    static std::mutex mu;
    static std::map<std::pair<int, int>, std::vector<RVec>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_pair(real_dim, count);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, sphere_directions(real_dim, count)).first;
    return it->second;
}

} // namespace invmet
