#include "invmet/bergman.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace invmet {

// ---------------------------------------------------------------------------
// quadrature
// ---------------------------------------------------------------------------

nlohmann::json QuadratureSpec::to_json() const {
    return {{"radial", radial}, {"angular", angular}, {"rejection", rejection}};
}

QuadratureSpec QuadratureSpec::from_json(const nlohmann::json& j) {
    QuadratureSpec q;
    q.radial = j.value("radial", 0);
    q.angular = j.value("angular", 0);
    q.rejection = j.value("rejection", 65536);
    return q;
}

void gauss_legendre_01(int n, std::vector<double>& nodes, std::vector<double>& weights) {
    // Newton iteration on P_n over [-1,1], then map to [0,1]
    nodes.assign(n, 0.0);
    weights.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double pp = 0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        nodes[i] = 0.5 * (1.0 - x);
        nodes[n - 1 - i] = 0.5 * (1.0 + x);
        weights[i] = 0.5 * w;
        weights[n - 1 - i] = 0.5 * w;
    }
}

namespace {

// nested polar quadrature over the unit ball of C^n, polynomial-exact in the
// Reinhardt sense: GL in each scaled radius, uniform angles
void unit_ball_nodes(int n, int nr, int na, VolumeQuadrature& out) {
    std::vector<double> gx, gw;
    gauss_legendre_01(nr, gx, gw);
    std::vector<double> rho(n), wcum(n + 1);
    std::vector<int> idx(n, 0);
    // iterate over the radial multi-grid
    std::vector<double> rem(n + 1);
    rem[0] = 1.0;
    wcum[0] = 1.0;
    std::vector<CVec> radial_nodes;
    std::vector<double> radial_weights;
    while (true) {
        // fill rho/weights from current idx
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            double x = gx[idx[i]];
            rho[i] = std::sqrt(rem[i]) * x;
            wcum[i + 1] = wcum[i] * rem[i] * gw[idx[i]] * x;
            rem[i + 1] = rem[i] * (1.0 - x * x);
            if (rem[i + 1] < 0) { ok = false; break; }
        }
        if (ok) {
            CVec r(n);
            for (int i = 0; i < n; ++i) r(i) = rho[i];
            radial_nodes.push_back(r);
            radial_weights.push_back(wcum[n]);
        }
        // increment odometer
        int p = n - 1;
        while (p >= 0 && ++idx[p] == nr) idx[p--] = 0;
        if (p < 0) break;
    }
    // tensor the angular grid
    double dth = 2.0 * kPi / na;
    std::vector<int> aidx(n, 0);
    for (size_t rn = 0; rn < radial_nodes.size(); ++rn) {
        std::fill(aidx.begin(), aidx.end(), 0);
        while (true) {
            CVec z(n);
            for (int i = 0; i < n; ++i) {
                double th = dth * aidx[i];
                z(i) = radial_nodes[rn](i).real() * Complex(std::cos(th), std::sin(th));
            }
            out.nodes.push_back(z);
            out.weights.push_back(radial_weights[rn] * std::pow(dth, n));
            int p = n - 1;
            while (p >= 0 && ++aidx[p] == na) aidx[p--] = 0;
            if (p < 0) break;
        }
    }
}

void polydisk_nodes(const std::vector<double>& radii, int nr, int na, VolumeQuadrature& out) {
    const int n = static_cast<int>(radii.size());
    std::vector<double> gx, gw;
    gauss_legendre_01(nr, gx, gw);
    double dth = 2.0 * kPi / na;
    std::vector<int> ridx(n, 0), aidx(n, 0);
    while (true) {
        std::fill(aidx.begin(), aidx.end(), 0);
        while (true) {
            CVec z(n);
            double w = 1.0;
            for (int i = 0; i < n; ++i) {
                double r = radii[i] * gx[ridx[i]];
                double th = dth * aidx[i];
                z(i) = r * Complex(std::cos(th), std::sin(th));
                // int_0^R rho drho = R^2 int_0^1 x dx
                w *= radii[i] * radii[i] * gw[ridx[i]] * gx[ridx[i]] * dth;
            }
            out.nodes.push_back(z);
            out.weights.push_back(w);
            int p = n - 1;
            while (p >= 0 && ++aidx[p] == na) aidx[p--] = 0;
            if (p < 0) break;
        }
        int p = n - 1;
        while (p >= 0 && ++ridx[p] == nr) ridx[p--] = 0;
        if (p < 0) break;
    }
}

int nth_prime(int i) {
    static const int p[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
    return p[i % 12];
}

} // namespace

VolumeQuadrature domain_quadrature(const DomainSpec& domain, int degree, const QuadratureSpec& spec) {
    // `degree` is the basis degree: products of two monomials of total degree
    // <= degree must integrate exactly, so angular frequencies reach degree and
    // radial polynomials reach 2*degree per coordinate.
    const int n = domain.dim();
    int nr = spec.radial > 0 ? spec.radial : 2 * degree + n + 2;
    int na = spec.angular > 0 ? spec.angular : degree + 3;
    VolumeQuadrature q;
    switch (domain.kind()) {
        case DomainKind::Ball: {
            unit_ball_nodes(n, nr, na, q);
            double l = domain.radii()[0];
            for (auto& z : q.nodes) z *= l;
            for (auto& w : q.weights) w *= std::pow(l * l, n);
            break;
        }
        case DomainKind::Ellipsoid: {
            unit_ball_nodes(n, nr, na, q);
            double jac = 1.0;
            for (double a : domain.radii()) jac *= a * a;
            for (auto& z : q.nodes)
                for (int i = 0; i < n; ++i) z(i) *= domain.radii()[i];
            for (auto& w : q.weights) w *= jac;
            break;
        }
        case DomainKind::Polydisk:
            polydisk_nodes(domain.radii(), nr, na, q);
            break;
        case DomainKind::ConvexSmooth: {
            // rejection-weighted low-discrepancy quadrature on the bounding box
            const double m0 = domain.sup_norm();
            const int budget = spec.rejection;
            double cell = std::pow(2.0 * m0, 2 * n) / budget;
            for (int k = 1; k <= budget; ++k) {
                CVec z(n);
                for (int i = 0; i < n; ++i) {
                    double re = 2.0 * m0 * (halton(k, nth_prime(2 * i)) - 0.5);
                    double im = 2.0 * m0 * (halton(k, nth_prime(2 * i + 1)) - 0.5);
                    z(i) = Complex(re, im);
                }
                if (domain.contains(z)) {
                    q.nodes.push_back(z);
                    q.weights.push_back(cell);
                }
            }
            break;
        }
    }
    return q;
}

// ---------------------------------------------------------------------------
// kernels
// ---------------------------------------------------------------------------

BergmanKernel BergmanKernel::closed_form(const DomainSpec& domain) {
    BergmanKernel k;
    k.domain_ = domain;
    if (domain.kind() == DomainKind::Ball)
        k.kind_ = Kind::BallClosed;
    else if (domain.kind() == DomainKind::Polydisk)
        k.kind_ = Kind::PolydiskClosed;
    else
        throw config_error("closed-form Bergman kernel: only ball and polydisk have closed forms here");
    return k;
}

BergmanKernel BergmanKernel::numerical(DomainSpec domain, int max_degree, std::vector<MultiIndex> monos,
                                       CMat orthonormal_coeff, QuadratureSpec spec,
                                       std::vector<std::string> warnings) {
    BergmanKernel k;
    k.kind_ = Kind::Numerical;
    k.domain_ = std::move(domain);
    k.degree_ = max_degree;
    k.monos_ = std::move(monos);
    k.coeff_ = std::move(orthonormal_coeff);
    k.quad_ = spec;
    k.warnings_ = std::move(warnings);
    return k;
}

double BergmanKernel::diag(const CPoint& z) const {
    require_dim(z, domain_.dim(), "kernel diag");
    if (!domain_.contains(z)) throw std::domain_error("kernel diag: point outside the domain");
    const int n = domain_.dim();
    switch (kind_) {
        case Kind::BallClosed: {
            double l2 = domain_.radii()[0] * domain_.radii()[0];
            double u = 1.0 - z.squaredNorm() / l2;
            double fact = 1.0;
            for (int i = 2; i <= n; ++i) fact *= i;
            return fact / (std::pow(kPi * l2, n) * std::pow(u, n + 1));
        }
        case Kind::PolydiskClosed: {
            double v = 1.0;
            for (int i = 0; i < n; ++i) {
                double r2 = domain_.radii()[i] * domain_.radii()[i];
                double u = r2 - std::norm(z(i));
                v *= r2 / (kPi * u * u);
            }
            return v;
        }
        case Kind::Numerical: {
            double s = 0;
            for (Eigen::Index b = 0; b < coeff_.cols(); ++b) {
                Complex f(0, 0);
                for (Eigen::Index j = 0; j < coeff_.rows(); ++j)
                    f += coeff_(j, b) * monomial_eval(z, monos_[j]);
                s += std::norm(f);
            }
            return s;
        }
    }
    return 0;
}

std::shared_ptr<KahlerMetricField> BergmanKernel::metric_field() const {
    switch (kind_) {
        case Kind::BallClosed:
            return ball_bergman_field(domain_.dim(), domain_.radii()[0]);
        case Kind::PolydiskClosed:
            return polydisk_bergman_field(domain_.radii());
        case Kind::Numerical: {
            CMat M = coeff_ * coeff_.adjoint();
            return kernel_log_field(HermitianKernelPoly(domain_.dim(), monos_, M));
        }
    }
    return nullptr;
}

nlohmann::json BergmanKernel::to_json() const {
    nlohmann::json j;
    j["domain"] = domain_.to_json();
    j["domain_hash"] = domain_.hash();
    switch (kind_) {
        case Kind::BallClosed: j["kind"] = "ball-closed"; break;
        case Kind::PolydiskClosed: j["kind"] = "polydisk-closed"; break;
        case Kind::Numerical: {
            j["kind"] = "numerical";
            j["degree"] = degree_;
            j["quadrature"] = quad_.to_json();
            j["warnings"] = warnings_;
            nlohmann::json re = nlohmann::json::array(), im = nlohmann::json::array();
            for (Eigen::Index r = 0; r < coeff_.rows(); ++r) {
                nlohmann::json rowr = nlohmann::json::array(), rowi = nlohmann::json::array();
                for (Eigen::Index c = 0; c < coeff_.cols(); ++c) {
                    rowr.push_back(coeff_(r, c).real());
                    rowi.push_back(coeff_(r, c).imag());
                }
                re.push_back(rowr);
                im.push_back(rowi);
            }
            j["coeff_re"] = re;
            j["coeff_im"] = im;
            break;
        }
    }
    return j;
}

BergmanKernel BergmanKernel::from_json(const nlohmann::json& j) {
    DomainSpec dom = DomainSpec::from_json(j.at("domain"));
    require(j.at("domain_hash").get<std::uint64_t>() == dom.hash(),
            "kernel cache: domain hash mismatch");
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "ball-closed" || kind == "polydisk-closed") return closed_form(dom);
    int degree = j.at("degree").get<int>();
    auto monos = multi_indices_up_to(dom.dim(), degree);
    const auto& re = j.at("coeff_re");
    const auto& im = j.at("coeff_im");
    CMat C(re.size(), re.empty() ? 0 : re[0].size());
    for (Eigen::Index r = 0; r < C.rows(); ++r)
        for (Eigen::Index c = 0; c < C.cols(); ++c)
            C(r, c) = Complex(re[r][c].get<double>(), im[r][c].get<double>());
    require(C.rows() == static_cast<Eigen::Index>(monos.size()), "kernel cache: coefficient shape mismatch");
    return numerical(dom, degree, monos, C, QuadratureSpec::from_json(j.at("quadrature")),
                     j.value("warnings", std::vector<std::string>{}));
}

BergmanKernel build_numerical_kernel(const DomainSpec& domain, int max_degree, const QuadratureSpec& spec) {
    require(max_degree >= 0, "build_numerical_kernel: max_degree must be >= 0");
    const int n = domain.dim();
    auto monos = multi_indices_up_to(n, max_degree);
    const int m = static_cast<int>(monos.size());

    VolumeQuadrature q = domain_quadrature(domain, max_degree, spec);
    require(!q.nodes.empty(), "build_numerical_kernel: empty quadrature");

    // Gram matrix via chunked evaluation; per-node coordinate power tables
    CMat G = CMat::Zero(m, m);
    const size_t chunk = 2048;
    CMat B(chunk, m);
    RVec W(chunk);
    CMat pw(n, max_degree + 1);
    size_t pos = 0;
    while (pos < q.nodes.size()) {
        size_t count = std::min(chunk, q.nodes.size() - pos);
        for (size_t r = 0; r < count; ++r) {
            const CVec& z = q.nodes[pos + r];
            W(r) = q.weights[pos + r];
            for (int i = 0; i < n; ++i) {
                pw(i, 0) = 1.0;
                for (int d = 1; d <= max_degree; ++d) pw(i, d) = pw(i, d - 1) * z(i);
            }
            for (int jm = 0; jm < m; ++jm) {
                Complex val(1.0, 0.0);
                for (int i = 0; i < n; ++i) val *= pw(i, monos[jm][i]);
                B(r, jm) = val;
            }
        }
        G += B.topRows(count).adjoint() * W.head(count).asDiagonal() * B.topRows(count);
        pos += count;
    }
    G = 0.5 * (G + CMat(G.adjoint()));  // enforce Hermitian symmetry

    // inner product of coefficient vectors: <a, b> = sum G_{jk} a_j conj(b_k)
    auto ip = [&](const CVec& a, const CVec& b) -> Complex {
        return (a.transpose() * G * b.conjugate())(0, 0);
    };

    // modified Gram-Schmidt with one re-orthogonalization pass
    std::vector<CVec> basis;
    std::vector<std::string> warnings;
    const double drop_tol = 1e-7;
    for (int jcol = 0; jcol < m; ++jcol) {
        CVec v = CVec::Zero(m);
        v(jcol) = 1.0;
        double orig = std::sqrt(std::abs(ip(v, v).real()));
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& qv : basis) v -= ip(v, qv) * qv;
        double nrm = std::sqrt(std::max(ip(v, v).real(), 0.0));
        if (nrm < drop_tol * orig) {
            warnings.push_back("dropped monomial index " + std::to_string(jcol) +
                               " (conditioning cliff: residual " + fmt17(nrm / (orig > 0 ? orig : 1.0)) + ")");
            continue;
        }
        basis.push_back(v / nrm);
    }
    CMat C(m, basis.size());
    for (size_t c = 0; c < basis.size(); ++c) C.col(c) = basis[c];

    return BergmanKernel::numerical(domain, max_degree, monos, C, spec, warnings);
}

double bergman_metric(const KahlerMetricField& field, const CPoint& z, const CTangent& v) {
    require_nonzero(v, "bergman_metric");
    double g = field.length2(z, v);
    if (!(g > 0)) throw degeneracy_error("bergman_metric: metric not positive at evaluation point");
    return g;
}

double bergman_metric(const BergmanKernel& kernel, const CPoint& z, const CTangent& v) {
    return bergman_metric(*kernel.metric_field(), z, v);
}

// ---------------------------------------------------------------------------
// curvature bounds and reports
// ---------------------------------------------------------------------------

ZhangBounds zhang_bounds(int n, double s) {
    require(n >= 1, "zhang_bounds: n >= 1");
    require(s > 0.0 && s <= 1.0, "zhang_bounds: squeezing value must lie in (0, 1]");
    ZhangBounds b;
    double np2_over_np1 = (n + 2.0) / (n + 1.0);
    b.sec_lo = 2.0 - 2.0 * np2_over_np1 * std::pow(s, -4.0 * n);
    b.sec_hi = 2.0 - 2.0 * np2_over_np1 * std::pow(s, 4.0 * n);
    b.ric_lo = (n + 1.0) - 2.0 * (n + 2.0) * std::pow(s, -2.0 * n);
    b.ric_hi = (n + 1.0) - (n + 2.0) * std::pow(s, 2.0 * n);
    b.scal_lo = n * (n + 1.0) - n * (n + 2.0) * std::pow(s, -2.0 * n);
    b.scal_hi = n * (n + 1.0) - n * (n + 2.0) * std::pow(s, 2.0 * n);
    return b;
}

CurvatureReport bergman_curvatures(const KahlerMetricField& field, const CPoint& z, const CTangent& v) {
    require_nonzero(v, "bergman_curvatures");
    CurvatureReport rep;
    rep.z = z;
    rep.v = v;
    double g = field.length2(z, v);
    if (!(g > 0)) throw degeneracy_error("bergman_curvatures: metric degenerate at point");
    CurvatureTensor R = curvature_tensor(field, z);
    rep.sec = R.eval(v, v, v, v).real() / (g * g);
    CMat ric = ricci_matrix(field, z);
    rep.ric = ((v.transpose() * ric * v.conjugate())(0, 0)).real() / g;
    CMat Hinv = field.metric(z).inverse();
    Complex s(0, 0);
    for (int i = 0; i < Hinv.rows(); ++i)
        for (int j = 0; j < Hinv.cols(); ++j) s += Hinv(j, i) * ric(i, j);
    rep.scal = s.real();
    return rep;
}

GrowthReport yeung_growth_check(const std::function<double(const CPoint&)>& kernel_diag,
                                const DomainSpec& domain, const std::vector<CPoint>& path,
                                double threshold) {
    require(!path.empty(), "yeung_growth_check: empty path");
    GrowthReport rep;
    rep.threshold = threshold;
    double dmax = -1, dmin = 2;
    rep.inf_value = std::numeric_limits<double>::infinity();
    for (const auto& z : path) {
        double d = domain.boundary_distance(z);
        require(d > 0.0, "yeung_growth_check: path point on the boundary");
        if (d >= 1.0) throw std::invalid_argument("yeung_growth_check: need d < 1 so that -log d > 0");
        double m = kernel_diag(z) * d * d * std::pow(std::log(1.0 / d), 2);
        rep.inf_value = std::min(rep.inf_value, m);
        if (d > dmax) { dmax = d; rep.at_largest_d = m; }
        if (d < dmin) { dmin = d; rep.at_smallest_d = m; }
    }
    rep.pass = rep.inf_value >= threshold;
    return rep;
}

} // namespace invmet
