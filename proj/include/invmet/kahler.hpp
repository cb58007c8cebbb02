#pragma once

#include "invmet/domain.hpp"
#include "invmet/types.hpp"
#include "invmet/wirtinger.hpp"

#include <array>
#include <functional>
#include <memory>

namespace invmet {

// Hermitian matrix field h_{i jbar}(z).  For potential-backed fields the
// Kaehler condition holds automatically; matrix fields carry no such claim
// (the tensor formula below is the Chern-connection curvature either way).
class KahlerMetricField {
public:
    virtual ~KahlerMetricField() = default;
    virtual int dim() const = 0;
    virtual CMat metric(const CPoint& z) const = 0;

    // dh[k](i,j)     = d h_{i jbar} / dz_k
    // ddh[k][l](i,j) = d^2 h_{i jbar} / dz_k dzbar_l
    virtual void derivatives(const CPoint& z, std::vector<CMat>& dh,
                             std::vector<std::vector<CMat>>& ddh) const;

    // metric pairing h(U, W) = sum h_{i jbar} U^i conj(W^j)
    Complex pair(const CPoint& z, const CTangent& u, const CTangent& w) const;
    double length2(const CPoint& z, const CTangent& u) const;
};

// ---- concrete fields -------------------------------------------------------

std::shared_ptr<KahlerMetricField> flat_field(int n);
std::shared_ptr<KahlerMetricField> ball_bergman_field(int n, double radius);
std::shared_ptr<KahlerMetricField> polydisk_bergman_field(const std::vector<double>& radii);
std::shared_ptr<KahlerMetricField> poincare_disk_field();  // (1-|z|^2)^{-2} on the unit disk
std::shared_ptr<KahlerMetricField> scaled_field(std::shared_ptr<KahlerMetricField> base, double factor);
// h = ddbar of an exact polynomial potential
std::shared_ptr<KahlerMetricField> potential_field(HermitianKernelPoly potential);
// h = ddbar log K for an exact kernel-diagonal polynomial K > 0
std::shared_ptr<KahlerMetricField> kernel_log_field(HermitianKernelPoly kernel);
// arbitrary callable, derivatives by finite differences
std::shared_ptr<KahlerMetricField> matrix_field(int n, std::function<CMat(const CPoint&)> h);

// ---- curvature -------------------------------------------------------------

// Full R_{i jbar k lbar} at a point, stored flattened.
class CurvatureTensor {
public:
    CurvatureTensor() = default;
    explicit CurvatureTensor(int n) : n_(n), c_(static_cast<size_t>(n) * n * n * n, Complex(0, 0)) {}

    int dim() const { return n_; }
    Complex& at(int i, int j, int k, int l) { return c_[idx(i, j, k, l)]; }
    Complex at(int i, int j, int k, int l) const { return c_[idx(i, j, k, l)]; }

    // R(X, conj(Y), Z, conj(W))
    Complex eval(const CTangent& x, const CTangent& y, const CTangent& z, const CTangent& w) const;

    // max relative violation of R_{ij.kl.} = R_{kj.il.} = R_{il.kj.}
    double kahler_symmetry_error() const;
    // max relative violation of R_{ij.kl.} = conj(R_{ji.lk.})
    double hermitian_symmetry_error() const;

    double max_abs() const;

private:
    size_t idx(int i, int j, int k, int l) const {
        return ((static_cast<size_t>(i) * n_ + j) * n_ + k) * n_ + l;
    }
    int n_ = 0;
    std::vector<Complex> c_;
};

// R_{i jbar k lbar} = -d_k dbar_l h_{i jbar} + h^{qbar p} (d_k h_{i qbar})(dbar_l h_{p jbar})
CurvatureTensor curvature_tensor(const KahlerMetricField& field, const CPoint& z);

// holomorphic sectional curvature R(X,Xb,X,Xb)/h(X,X)^2 (kernel convention:
// the unit-ball Bergman metric gives -2/(n+1); the disc convention used by the
// Finsler side is exactly twice this)
double hsc(const KahlerMetricField& field, const CPoint& z, const CTangent& x);

// Sectional curvature of the real plane spanned by X + conj(X), Y + conj(Y):
// 2 R(X,Xb,Y,Yb) - R(X,Yb,X,Yb) - R(Y,Xb,Y,Xb), after h-orthonormalizing X, Y.
double real_sectional(const KahlerMetricField& field, const CPoint& z, CTangent x, CTangent y);

// Ric_{i jbar} = sum_{k,l} (H^{-1})(l,k) R_{i jbar k lbar}; for Kaehler fields
// this equals -d dbar log det h (asserted in the tests as an independent route).
CMat ricci_matrix(const KahlerMetricField& field, const CPoint& z);
double scalar_curvature(const KahlerMetricField& field, const CPoint& z);

// Residuals of the four quadrilinear polarization identities relating
// R(X,Xb,Y,Yb) and R(X,Yb,X,Yb)+R(Y,Xb,Y,Xb) to curvatures of X+-Y, X+-iY.
// Each residual is relative to the largest participating term.
std::array<double, 4> polarization_residuals(const CurvatureTensor& t, const CTangent& x, const CTangent& y);

// Random tensor with the full Kaehler + Hermitian symmetry set (property tests).
CurvatureTensor random_kahler_symmetric_tensor(int n, SampleRng& rng);

struct PinchingReport {
    double c = 0.0;          // max sampled |hsc| over orthonormal directions
    double max_mixed = 0.0;  // max |R(X,Xb,Y,Yb)|
    double max_bisec = 0.0;  // max |R(X,Yb,X,Yb) + R(Y,Xb,Y,Xb)|
    double max_real_sec = 0.0;
    double observed_real_sec_ratio = 0.0;  // max_real_sec / c (when c > 0)
    bool pass_mixed = false;               // <= 2.5 c
    bool pass_bisec = false;               // <= 8 c
    bool pass_real_sec = false;            // <= 13 c
    int samples = 0;
};

// Draws (z, X, Y) with X, Y h-orthonormal and checks the 5C/2, 8C, 13C chain.
PinchingReport pinching_constants_check(const KahlerMetricField& field, const DomainSpec& domain,
                                        int sample_count, std::uint64_t seed,
                                        double boundary_margin = 0.05);

} // namespace invmet
