#include "invmet/kahler.hpp"

#include <cmath>

namespace invmet {

// ---------------------------------------------------------------------------
// base-class helpers
// ---------------------------------------------------------------------------

Complex KahlerMetricField::pair(const CPoint& z, const CTangent& u, const CTangent& w) const {
    CMat H = metric(z);
    return (u.transpose() * H * w.conjugate())(0, 0);
}

double KahlerMetricField::length2(const CPoint& z, const CTangent& u) const {
    return pair(z, u, u).real();
}

void KahlerMetricField::derivatives(const CPoint& z, std::vector<CMat>& dh,
                                    std::vector<std::vector<CMat>>& ddh) const {
    // finite-difference fallback, component-wise on Re/Im of h_{i jbar}
    const int n = dim();
    WirtingerFD fd;
    dh.assign(n, CMat::Zero(n, n));
    ddh.assign(n, std::vector<CMat>(n, CMat::Zero(n, n)));
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            auto re = [&](const CVec& w) { return metric(w)(i, j).real(); };
            auto im = [&](const CVec& w) { return metric(w)(i, j).imag(); };
            for (int k = 0; k < n; ++k)
                dh[k](i, j) = fd.dz(re, z, k) + Complex(0, 1) * fd.dz(im, z, k);
            CMat mre = fd.mixed_block(re, z, all, all);
            CMat mim = fd.mixed_block(im, z, all, all);
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) ddh[k][l](i, j) = mre(k, l) + Complex(0, 1) * mim(k, l);
        }
    }
}

// ---------------------------------------------------------------------------
// concrete fields
// ---------------------------------------------------------------------------

namespace {

class FlatField final : public KahlerMetricField {
public:
    explicit FlatField(int n) : n_(n) {}
    int dim() const override { return n_; }
    CMat metric(const CPoint&) const override { return CMat::Identity(n_, n_); }
    void derivatives(const CPoint&, std::vector<CMat>& dh, std::vector<std::vector<CMat>>& ddh) const override {
        dh.assign(n_, CMat::Zero(n_, n_));
        ddh.assign(n_, std::vector<CMat>(n_, CMat::Zero(n_, n_)));
    }

private:
    int n_;
};

// g = (n+1)[delta_{ij}/u + zbar_i z_j/u^2], u = l^2 - |z|^2
class BallBergmanField final : public KahlerMetricField {
public:
    BallBergmanField(int n, double radius) : n_(n), l2_(radius * radius) {}
    int dim() const override { return n_; }

    CMat metric(const CPoint& z) const override {
        double u = l2_ - z.squaredNorm();
        if (u <= 0) throw std::domain_error("ball Bergman metric: point outside the ball");
        CMat h = CMat::Identity(n_, n_) / u;
        h += (z.conjugate() * z.transpose()) / (u * u);
        return (n_ + 1.0) * h;
    }

    void derivatives(const CPoint& z, std::vector<CMat>& dh, std::vector<std::vector<CMat>>& ddh) const override {
        const int n = n_;
        double u = l2_ - z.squaredNorm();
        if (u <= 0) throw std::domain_error("ball Bergman metric: point outside the ball");
        double u2 = u * u, u3 = u2 * u, u4 = u3 * u;
        dh.assign(n, CMat::Zero(n, n));
        ddh.assign(n, std::vector<CMat>(n, CMat::Zero(n, n)));
        const double c = n_ + 1.0;
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    Complex v = 2.0 * std::conj(z(i)) * z(j) * std::conj(z(k)) / u3;
                    if (i == j) v += std::conj(z(k)) / u2;
                    if (j == k) v += std::conj(z(i)) / u2;
                    dh[k](i, j) = c * v;
                }
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        Complex v = 6.0 * std::conj(z(i)) * z(j) * std::conj(z(k)) * z(l) / u4;
                        if (i == j && k == l) v += 1.0 / u2;
                        if (i == j) v += 2.0 * std::conj(z(k)) * z(l) / u3;
                        if (j == k && i == l) v += 1.0 / u2;
                        if (j == k) v += 2.0 * std::conj(z(i)) * z(l) / u3;
                        if (i == l) v += 2.0 * z(j) * std::conj(z(k)) / u3;
                        if (k == l) v += 2.0 * std::conj(z(i)) * z(j) / u3;
                        ddh[k][l](i, j) = c * v;
                    }
    }

private:
    int n_;
    double l2_;
};

// diagonal product of one-variable disk Bergman metrics 2 r^2/(r^2-|z|^2)^2
class PolydiskBergmanField final : public KahlerMetricField {
public:
    explicit PolydiskBergmanField(std::vector<double> radii) : r_(std::move(radii)) {}
    int dim() const override { return static_cast<int>(r_.size()); }

    CMat metric(const CPoint& z) const override {
        const int n = dim();
        CMat h = CMat::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            double u = r_[i] * r_[i] - std::norm(z(i));
            if (u <= 0) throw std::domain_error("polydisk Bergman metric: point outside the polydisk");
            h(i, i) = 2.0 * r_[i] * r_[i] / (u * u);
        }
        return h;
    }

    void derivatives(const CPoint& z, std::vector<CMat>& dh, std::vector<std::vector<CMat>>& ddh) const override {
        const int n = dim();
        dh.assign(n, CMat::Zero(n, n));
        ddh.assign(n, std::vector<CMat>(n, CMat::Zero(n, n)));
        for (int i = 0; i < n; ++i) {
            double r2 = r_[i] * r_[i];
            double t = std::norm(z(i));
            double u = r2 - t;
            if (u <= 0) throw std::domain_error("polydisk Bergman metric: point outside the polydisk");
            dh[i](i, i) = 4.0 * r2 * std::conj(z(i)) / (u * u * u);
            ddh[i][i](i, i) = 4.0 * r2 * (r2 + 2.0 * t) / (u * u * u * u);
        }
    }

private:
    std::vector<double> r_;
};

class ScaledField final : public KahlerMetricField {
public:
    ScaledField(std::shared_ptr<KahlerMetricField> base, double f) : base_(std::move(base)), f_(f) {}
    int dim() const override { return base_->dim(); }
    CMat metric(const CPoint& z) const override { return f_ * base_->metric(z); }
    void derivatives(const CPoint& z, std::vector<CMat>& dh, std::vector<std::vector<CMat>>& ddh) const override {
        base_->derivatives(z, dh, ddh);
        for (auto& m : dh) m *= f_;
        for (auto& row : ddh)
            for (auto& m : row) m *= f_;
    }

private:
    std::shared_ptr<KahlerMetricField> base_;
    double f_;
};

class PotentialField final : public KahlerMetricField {
public:
    explicit PotentialField(HermitianKernelPoly p) : p_(std::move(p)) {}
    int dim() const override { return p_.dim(); }

    CMat metric(const CPoint& z) const override {
        const int n = dim();
        CMat h(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) h(i, j) = p_.deriv(z, {i}, {j});
        return h;
    }

    void derivatives(const CPoint& z, std::vector<CMat>& dh, std::vector<std::vector<CMat>>& ddh) const override {
        const int n = dim();
        dh.assign(n, CMat::Zero(n, n));
        ddh.assign(n, std::vector<CMat>(n, CMat::Zero(n, n)));
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) dh[k](i, j) = p_.deriv(z, {i, k}, {j});
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) ddh[k][l](i, j) = p_.deriv(z, {i, k}, {j, l});
    }

private:
    HermitianKernelPoly p_;
};

// h = ddbar log K with K an exact Hermitian kernel polynomial; all derivatives
// expand through the quotient rule on K's exact jet.
class KernelLogField final : public KahlerMetricField {
public:
    explicit KernelLogField(HermitianKernelPoly k) : k_(std::move(k)) {}
    int dim() const override { return k_.dim(); }

    CMat metric(const CPoint& z) const override {
        auto J = k_.jet22(z);
        check(J.K);
        const int n = dim();
        CMat h(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                h(i, j) = J.d11(i, j) / J.K - J.d1(i) * std::conj(J.d1(j)) / (J.K * J.K);
        return h;
    }

    void derivatives(const CPoint& z, std::vector<CMat>& dh, std::vector<std::vector<CMat>>& ddh) const override {
        auto J = k_.jet22(z);
        check(J.K);
        const int n = dim();
        const double K = J.K, K2 = K * K, K3 = K2 * K, K4 = K3 * K;
        auto D1 = [&](int i) { return J.d1(i); };
        auto D1b = [&](int j) { return std::conj(J.d1(j)); };
        auto D11 = [&](int i, int j) { return J.d11(i, j); };
        auto D20 = [&](int i, int k) { return J.d20(i, k); };
        auto D02b = [&](int j, int l) { return std::conj(J.d20(j, l)); };
        auto D21 = [&](int i, int k, int j) { return J.d21[k](i, j); };
        auto D12b = [&](int i, int j, int l) { return std::conj(J.d21[l](j, i)); };  // K_{i jbar lbar}
        auto D22 = [&](int i, int k, int j, int l) { return J.d22[k][l](i, j); };

        dh.assign(n, CMat::Zero(n, n));
        ddh.assign(n, std::vector<CMat>(n, CMat::Zero(n, n)));
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    dh[k](i, j) = D21(i, k, j) / K - D11(i, j) * D1(k) / K2 - D20(i, k) * D1b(j) / K2 -
                                  D1(i) * D11(k, j) / K2 + 2.0 * D1(i) * D1b(j) * D1(k) / K3;
                }
        for (int k = 0; k < n; ++k)
            for (int l = 0; l < n; ++l)
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        Complex v = D22(i, k, j, l) / K - D21(i, k, j) * D1b(l) / K2;
                        v += -(D12b(i, j, l) * D1(k) + D11(i, j) * D11(k, l)) / K2 +
                             2.0 * D11(i, j) * D1(k) * D1b(l) / K3;
                        v += -(D21(i, k, l) * D1b(j) + D20(i, k) * D02b(j, l)) / K2 +
                             2.0 * D20(i, k) * D1b(j) * D1b(l) / K3;
                        v += -(D11(i, l) * D11(k, j) + D1(i) * D12b(k, j, l)) / K2 +
                             2.0 * D1(i) * D11(k, j) * D1b(l) / K3;
                        v += 2.0 * (D11(i, l) * D1b(j) * D1(k) + D1(i) * D02b(j, l) * D1(k) +
                                    D1(i) * D1b(j) * D11(k, l)) / K3 -
                             6.0 * D1(i) * D1b(j) * D1(k) * D1b(l) / K4;
                        ddh[k][l](i, j) = v;
                    }
    }

private:
    static void check(double K) {
        if (!(K > 0))
            throw degeneracy_error("kernel log field: kernel diagonal is not positive at the evaluation point");
    }
    HermitianKernelPoly k_;
};

class MatrixField final : public KahlerMetricField {
public:
    MatrixField(int n, std::function<CMat(const CPoint&)> h) : n_(n), h_(std::move(h)) {}
    int dim() const override { return n_; }
    CMat metric(const CPoint& z) const override { return h_(z); }

private:
    int n_;
    std::function<CMat(const CPoint&)> h_;
};

} // namespace

std::shared_ptr<KahlerMetricField> flat_field(int n) { return std::make_shared<FlatField>(n); }
std::shared_ptr<KahlerMetricField> ball_bergman_field(int n, double radius) {
    return std::make_shared<BallBergmanField>(n, radius);
}
std::shared_ptr<KahlerMetricField> polydisk_bergman_field(const std::vector<double>& radii) {
    return std::make_shared<PolydiskBergmanField>(radii);
}
std::shared_ptr<KahlerMetricField> poincare_disk_field() {
    return scaled_field(ball_bergman_field(1, 1.0), 0.5);
}
std::shared_ptr<KahlerMetricField> scaled_field(std::shared_ptr<KahlerMetricField> base, double factor) {
    return std::make_shared<ScaledField>(std::move(base), factor);
}
std::shared_ptr<KahlerMetricField> potential_field(HermitianKernelPoly potential) {
    return std::make_shared<PotentialField>(std::move(potential));
}
std::shared_ptr<KahlerMetricField> kernel_log_field(HermitianKernelPoly kernel) {
    return std::make_shared<KernelLogField>(std::move(kernel));
}
std::shared_ptr<KahlerMetricField> matrix_field(int n, std::function<CMat(const CPoint&)> h) {
    return std::make_shared<MatrixField>(n, std::move(h));
}

// ---------------------------------------------------------------------------
// curvature tensor
// ---------------------------------------------------------------------------

Complex CurvatureTensor::eval(const CTangent& x, const CTangent& y, const CTangent& z, const CTangent& w) const {
    Complex s(0, 0);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k)
                for (int l = 0; l < n_; ++l)
                    s += c_[idx(i, j, k, l)] * x(i) * std::conj(y(j)) * z(k) * std::conj(w(l));
    return s;
}

double CurvatureTensor::max_abs() const {
    double m = 0;
    for (const auto& v : c_) m = std::max(m, std::abs(v));
    return m;
}

double CurvatureTensor::kahler_symmetry_error() const {
    double m = max_abs();
    if (m == 0) return 0;
    double e = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k)
                for (int l = 0; l < n_; ++l) {
                    e = std::max(e, std::abs(at(i, j, k, l) - at(k, j, i, l)));
                    e = std::max(e, std::abs(at(i, j, k, l) - at(i, l, k, j)));
                }
    return e / m;
}

double CurvatureTensor::hermitian_symmetry_error() const {
    double m = max_abs();
    if (m == 0) return 0;
    double e = 0;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            for (int k = 0; k < n_; ++k)
                for (int l = 0; l < n_; ++l)
                    e = std::max(e, std::abs(at(i, j, k, l) - std::conj(at(j, i, l, k))));
    return e / m;
}

CurvatureTensor curvature_tensor(const KahlerMetricField& field, const CPoint& z) {
    const int n = field.dim();
    CMat H = field.metric(z);
    Eigen::FullPivLU<CMat> lu(H);
    if (!lu.isInvertible()) throw degeneracy_error("curvature_tensor: singular metric at evaluation point");
    CMat Hinv = lu.inverse();

    std::vector<CMat> dh;
    std::vector<std::vector<CMat>> ddh;
    field.derivatives(z, dh, ddh);

    CurvatureTensor R(n);
    for (int k = 0; k < n; ++k) {
        for (int l = 0; l < n; ++l) {
            CMat second = dh[k] * Hinv * dh[l].adjoint();
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) R.at(i, j, k, l) = -ddh[k][l](i, j) + second(i, j);
        }
    }
    return R;
}

double hsc(const KahlerMetricField& field, const CPoint& z, const CTangent& x) {
    require_nonzero(x, "hsc");
    CurvatureTensor R = curvature_tensor(field, z);
    double g = field.length2(z, x);
    Complex q = R.eval(x, x, x, x);
    return q.real() / (g * g);
}

double real_sectional(const KahlerMetricField& field, const CPoint& z, CTangent x, CTangent y) {
    require_nonzero(x, "real_sectional");
    require_nonzero(y, "real_sectional");
    CMat H = field.metric(z);
    auto hp = [&](const CTangent& u, const CTangent& w) -> Complex {
        return (u.transpose() * H * w.conjugate())(0, 0);
    };
    // h-orthonormalize (Gram-Schmidt); reject complex-dependent pairs
    x /= std::sqrt(hp(x, x).real());
    y -= hp(y, x) * x;
    double ny = hp(y, y).real();
    if (ny < 1e-24) throw std::invalid_argument("real_sectional: X and Y span a degenerate complex plane");
    y /= std::sqrt(ny);

    CurvatureTensor R = curvature_tensor(field, z);
    Complex e = 2.0 * R.eval(x, x, y, y) - R.eval(x, y, x, y) - R.eval(y, x, y, x);
    return e.real();
}

CMat ricci_matrix(const KahlerMetricField& field, const CPoint& z) {
    const int n = field.dim();
    CMat Hinv = field.metric(z).inverse();
    CurvatureTensor R = curvature_tensor(field, z);
    CMat ric = CMat::Zero(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) ric(i, j) += Hinv(l, k) * R.at(i, j, k, l);
    return ric;
}

double scalar_curvature(const KahlerMetricField& field, const CPoint& z) {
    CMat Hinv = field.metric(z).inverse();
    CMat ric = ricci_matrix(field, z);
    Complex s(0, 0);
    for (int i = 0; i < Hinv.rows(); ++i)
        for (int j = 0; j < Hinv.cols(); ++j) s += Hinv(j, i) * ric(i, j);
    return s.real();
}

std::array<double, 4> polarization_residuals(const CurvatureTensor& t, const CTangent& x, const CTangent& y) {
    auto Q = [&](const CTangent& w) { return t.eval(w, w, w, w); };
    const Complex I(0, 1);
    Complex qpp = Q(x + y), qmm = Q(x - y);
    Complex qip = Q(x + I * y), qim = Q(x - I * y);
    Complex qx = Q(x), qy = Q(y);
    Complex a = t.eval(x, x, y, y);
    Complex b = t.eval(x, y, x, y);
    Complex c = t.eval(y, x, y, x);

    auto rel = [](Complex lhs, Complex rhs, std::initializer_list<Complex> terms) {
        double scale = 0;
        for (auto v : terms) scale = std::max(scale, std::abs(v));
        scale = std::max(scale, 1e-300);
        return std::abs(lhs - rhs) / scale;
    };

    std::array<double, 4> res{};
    // sum over +-Y polarizations
    res[0] = rel(qpp + qmm, 2.0 * qx + 2.0 * qy + 8.0 * a + 2.0 * b + 2.0 * c,
                 {qpp, qmm, qx, qy, a, b, c});
    // sum over +-iY polarizations
    res[1] = rel(qip + qim, 2.0 * qx + 2.0 * qy + 8.0 * a - 2.0 * b - 2.0 * c,
                 {qip, qim, qx, qy, a, b, c});
    // mixed term from the quarter sum
    res[2] = rel(a, (qpp + qmm + qip + qim - 4.0 * qx - 4.0 * qy) / 16.0,
                 {qpp, qmm, qip, qim, qx, qy, a});
    // bisectional pair from the quarter difference
    res[3] = rel(b + c, (qpp + qmm - qip - qim) / 4.0, {qpp, qmm, qip, qim, b, c});
    return res;
}

CurvatureTensor random_kahler_symmetric_tensor(int n, SampleRng& rng) {
    CurvatureTensor t(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) t.at(i, j, k, l) = rng.complex_gaussian();
    // symmetrize: unbarred swap, barred swap, then Hermitian reality
    CurvatureTensor s1(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) s1.at(i, j, k, l) = 0.5 * (t.at(i, j, k, l) + t.at(k, j, i, l));
    CurvatureTensor s2(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l) s2.at(i, j, k, l) = 0.5 * (s1.at(i, j, k, l) + s1.at(i, l, k, j));
    CurvatureTensor s3(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                for (int l = 0; l < n; ++l)
                    s3.at(i, j, k, l) = 0.5 * (s2.at(i, j, k, l) + std::conj(s2.at(j, i, l, k)));
    return s3;
}

PinchingReport pinching_constants_check(const KahlerMetricField& field, const DomainSpec& domain,
                                        int sample_count, std::uint64_t seed, double boundary_margin) {
    require(sample_count >= 1, "pinching_constants_check: need at least one sample");
    SampleRng rng(seed);
    const int n = field.dim();
    PinchingReport rep;
    rep.samples = sample_count;
    double margin = boundary_margin * domain.sup_norm();

    for (int s = 0; s < sample_count; ++s) {
        CPoint z = domain.sample_interior(rng, margin);
        CMat H = field.metric(z);
        auto hp = [&](const CTangent& u, const CTangent& w) -> Complex {
            return (u.transpose() * H * w.conjugate())(0, 0);
        };
        CTangent x = rng.cvec_gaussian(n), y = rng.cvec_gaussian(n);
        x /= std::sqrt(hp(x, x).real());
        y -= hp(y, x) * x;
        if (hp(y, y).real() < 1e-20) { --s; continue; }
        y /= std::sqrt(hp(y, y).real());

        CurvatureTensor R = curvature_tensor(field, z);
        double qx = R.eval(x, x, x, x).real();
        double qy = R.eval(y, y, y, y).real();
        rep.c = std::max({rep.c, std::abs(qx), std::abs(qy)});
        rep.max_mixed = std::max(rep.max_mixed, std::abs(R.eval(x, x, y, y)));
        rep.max_bisec = std::max(rep.max_bisec, std::abs(R.eval(x, y, x, y) + R.eval(y, x, y, x)));
        Complex e = 2.0 * R.eval(x, x, y, y) - R.eval(x, y, x, y) - R.eval(y, x, y, x);
        rep.max_real_sec = std::max(rep.max_real_sec, std::abs(e.real()));
    }
    if (rep.c == 0.0 && (rep.max_mixed > 0 || rep.max_bisec > 0 || rep.max_real_sec > 0))
        throw degeneracy_error("pinching_constants_check: zero curvature bound with nonzero tensor");
    double tol = 1e-8 * rep.c;
    rep.pass_mixed = rep.max_mixed <= 2.5 * rep.c + tol;
    rep.pass_bisec = rep.max_bisec <= 8.0 * rep.c + tol;
    rep.pass_real_sec = rep.max_real_sec <= 13.0 * rep.c + tol;
    rep.observed_real_sec_ratio = rep.c > 0 ? rep.max_real_sec / rep.c : 0.0;
    return rep;
}

} // namespace invmet
