#include "invmet/wirtinger.hpp"

#include <cmath>

namespace invmet {

HermitianKernelPoly::HermitianKernelPoly(int n, std::vector<MultiIndex> monos, CMat m)
    : n_(n), monos_(std::move(monos)), M_(std::move(m)) {
    require(M_.rows() == static_cast<Eigen::Index>(monos_.size()) && M_.cols() == M_.rows(),
            "HermitianKernelPoly: coefficient matrix shape mismatch");
    double herm_err = (M_ - M_.adjoint()).norm();
    require(herm_err < 1e-10 * (1.0 + M_.norm()), "HermitianKernelPoly: coefficient matrix not Hermitian");
}

double HermitianKernelPoly::value(const CVec& z) const {
    return deriv(z, {}, {}).real();
}

Complex HermitianKernelPoly::deriv(const CVec& z, const std::vector<int>& dz, const std::vector<int>& dzb) const {
    const int m = static_cast<int>(monos_.size());
    CVec a(m), b(m);
    for (int j = 0; j < m; ++j) {
        a(j) = monomial_deriv_eval(z, monos_[j], dz);
        b(j) = monomial_deriv_eval(z, monos_[j], dzb);
    }
    // sum_{jk} a_j M_{jk} conj(b_k)
    return a.transpose() * (M_ * b.conjugate());
}

HermitianKernelPoly::Jet22 HermitianKernelPoly::jet22(const CVec& z) const {
    const int m = static_cast<int>(monos_.size());
    const int n = n_;
    // derivative multisets up to order 2: one column per multiset
    // order: {} | {i} for i<n | {i,k} for i<=? store full n*n for simplicity
    const int cols = 1 + n + n * n;
    CMat D(m, cols);
    for (int j = 0; j < m; ++j) {
        D(j, 0) = monomial_eval(z, monos_[j]);
        for (int i = 0; i < n; ++i) D(j, 1 + i) = monomial_deriv_eval(z, monos_[j], {i});
        for (int i = 0; i < n; ++i)
            for (int k = 0; k < n; ++k)
                D(j, 1 + n + i * n + k) = monomial_deriv_eval(z, monos_[j], {i, k});
    }
    CMat Y = M_ * D.conjugate();  // Y(:,B) = M * conj(D_B)
    auto entry = [&](int colA, int colB) -> Complex {
        return (D.col(colA).transpose() * Y.col(colB))(0, 0);
    };
    auto c1 = [&](int i) { return 1 + i; };
    auto c2 = [&](int i, int k) { return 1 + n + i * n + k; };

    Jet22 J;
    J.K = entry(0, 0).real();
    J.d1 = CVec(n);
    J.d11 = CMat(n, n);
    J.d20 = CMat(n, n);
    for (int i = 0; i < n; ++i) J.d1(i) = entry(c1(i), 0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) J.d11(i, j) = entry(c1(i), c1(j));
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) J.d20(i, k) = entry(c2(i, k), 0);
    J.d21.assign(n, CMat(n, n));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) J.d21[k](i, j) = entry(c2(i, k), c1(j));
    J.d22.assign(n, std::vector<CMat>(n, CMat(n, n)));
    for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) J.d22[k][l](i, j) = entry(c2(i, k), c2(j, l));
    return J;
}

HermitianKernelPoly make_real_poly(int n, const std::vector<std::tuple<Complex, MultiIndex, MultiIndex>>& terms) {
    // collect distinct monomials
    std::vector<MultiIndex> monos;
    auto index_of = [&](const MultiIndex& a) -> int {
        for (size_t i = 0; i < monos.size(); ++i)
            if (monos[i] == a) return static_cast<int>(i);
        monos.push_back(a);
        return static_cast<int>(monos.size()) - 1;
    };
    for (const auto& [c, a, b] : terms) {
        (void)c;
        index_of(a);
        index_of(b);
    }
    CMat M = CMat::Zero(monos.size(), monos.size());
    for (const auto& [c, a, b] : terms) M(index_of(a), index_of(b)) += c;
    return HermitianKernelPoly(n, monos, M);
}

// ---------------------------------------------------------------------------

namespace {
inline CVec bump(const CVec& w, int real_idx, double h) {
    CVec x = w;
    int i = real_idx / 2;
    if (real_idx % 2 == 0)
        x(i) += Complex(h, 0.0);
    else
        x(i) += Complex(0.0, h);
    return x;
}
inline double coord_scale(const CVec& w, int real_idx) {
    int i = real_idx / 2;
    return std::max(1.0, std::abs(w(i)));
}
} // namespace

Complex WirtingerFD::dz(const Fn& f, const CVec& w, int i) const {
    double hx = step1 * coord_scale(w, 2 * i);
    double hy = step1 * coord_scale(w, 2 * i + 1);
    double fx = (f(bump(w, 2 * i, hx)) - f(bump(w, 2 * i, -hx))) / (2 * hx);
    double fy = (f(bump(w, 2 * i + 1, hy)) - f(bump(w, 2 * i + 1, -hy))) / (2 * hy);
    return 0.5 * Complex(fx, -fy);
}

Complex WirtingerFD::dzbar(const Fn& f, const CVec& w, int i) const {
    return std::conj(dz(f, w, i));  // f real-valued
}

double WirtingerFD::d2_real_step(const Fn& f, const CVec& w, int a, int b, double ha, double hb) const {
    if (a == b) {
        return (f(bump(w, a, ha)) - 2.0 * f(w) + f(bump(w, a, -ha))) / (ha * ha);
    }
    double fpp = f(bump(bump(w, a, ha), b, hb));
    double fpm = f(bump(bump(w, a, ha), b, -hb));
    double fmp = f(bump(bump(w, a, -ha), b, hb));
    double fmm = f(bump(bump(w, a, -ha), b, -hb));
    return (fpp - fpm - fmp + fmm) / (4.0 * ha * hb);
}

double WirtingerFD::d2_real(const Fn& f, const CVec& w, int a, int b) const {
    double ha = step2 * coord_scale(w, a);
    double hb = step2 * coord_scale(w, b);
    double d_h = d2_real_step(f, w, a, b, ha, hb);
    double d_h2 = d2_real_step(f, w, a, b, ha / 2, hb / 2);
    return (4.0 * d_h2 - d_h) / 3.0;
}

CMat WirtingerFD::mixed_block(const Fn& f, const CVec& w, const std::vector<int>& hol,
                              const std::vector<int>& anti) const {
    CMat M(hol.size(), anti.size());
    for (size_t p = 0; p < hol.size(); ++p) {
        int i = hol[p];
        for (size_t q = 0; q < anti.size(); ++q) {
            int j = anti[q];
            double xx = d2_real(f, w, 2 * i, 2 * j);
            double yy = d2_real(f, w, 2 * i + 1, 2 * j + 1);
            double xy = d2_real(f, w, 2 * i, 2 * j + 1);
            double yx = d2_real(f, w, 2 * i + 1, 2 * j);
            // d/dz_i dzbar_j = 1/4 [(xx + yy) + i(xy - yx)]
            M(p, q) = 0.25 * Complex(xx + yy, xy - yx);
        }
    }
    return M;
}

CMat WirtingerFD::pure_block(const Fn& f, const CVec& w, const std::vector<int>& hol) const {
    CMat M(hol.size(), hol.size());
    for (size_t p = 0; p < hol.size(); ++p) {
        int i = hol[p];
        for (size_t q = 0; q < hol.size(); ++q) {
            int j = hol[q];
            double xx = d2_real(f, w, 2 * i, 2 * j);
            double yy = d2_real(f, w, 2 * i + 1, 2 * j + 1);
            double xy = d2_real(f, w, 2 * i, 2 * j + 1);
            double yx = d2_real(f, w, 2 * i + 1, 2 * j);
            // d/dz_i dz_j = 1/4 [(xx - yy) - i(xy + yx)]
            M(p, q) = 0.25 * Complex(xx - yy, -(xy + yx));
        }
    }
    return M;
}

} // namespace invmet
