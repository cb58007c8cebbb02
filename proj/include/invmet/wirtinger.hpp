#pragma once

#include "invmet/types.hpp"

#include <functional>

namespace invmet {

// ---------------------------------------------------------------------------
// Exact engine: real-analytic functions of the form
//     K(z, zbar) = sum_{j,k} M_{jk} z^{alpha_j} conj(z^{alpha_k}),
// with M Hermitian (real values; PSD when K is a kernel diagonal).
// All mixed Wirtinger derivatives are exact index shifts.
// ---------------------------------------------------------------------------
class HermitianKernelPoly {
public:
    HermitianKernelPoly() = default;
    HermitianKernelPoly(int n, std::vector<MultiIndex> monos, CMat m);

    int dim() const { return n_; }
    const std::vector<MultiIndex>& monomials() const { return monos_; }
    const CMat& coeff() const { return M_; }

    double value(const CVec& z) const;

    // d^{|dz|}/dz_{dz[0]}... d^{|dzb|}/dzbar_{dzb[0]}... K  evaluated at z
    Complex deriv(const CVec& z, const std::vector<int>& dz, const std::vector<int>& dzb) const;

    // All derivatives the curvature pipeline needs at one point, by exact shifts.
    struct Jet22 {
        double K = 0.0;
        CVec d1;      // K_i
        CMat d11;     // K_{i jbar}
        CMat d20;     // K_{i k}   (pure holomorphic)
        std::vector<CMat> d21;             // d21[k](i,j) = K_{i k jbar}
        std::vector<std::vector<CMat>> d22;// d22[k][l](i,j) = K_{i k jbar lbar}
    };
    Jet22 jet22(const CVec& z) const;

private:
    int n_ = 0;
    std::vector<MultiIndex> monos_;
    CMat M_;
};

// Convenience: build sum_t c_t * z^{a_t} * conj(z^{b_t}) with conjugate-paired
// terms supplied explicitly; asserts the result is Hermitian.
HermitianKernelPoly make_real_poly(int n, const std::vector<std::tuple<Complex, MultiIndex, MultiIndex>>& terms);

// ---------------------------------------------------------------------------
// Finite-difference engine for scalar callables f : C^m -> R.
// Wirtinger derivatives are assembled from central differences on the 2m real
// coordinates.  Second derivatives use one Richardson extrapolation step; the
// base step is scaled by coordinate magnitude.
// ---------------------------------------------------------------------------
struct WirtingerFD {
    double step1 = 1e-5;   // first derivatives
    double step2 = 2e-4;   // second derivatives (Richardson-extrapolated)

    using Fn = std::function<double(const CVec&)>;

    Complex dz(const Fn& f, const CVec& w, int i) const;
    Complex dzbar(const Fn& f, const CVec& w, int i) const;

    // M(i,j) = d^2 f / dw_{hol[i]} dwbar_{anti[j]}
    CMat mixed_block(const Fn& f, const CVec& w, const std::vector<int>& hol,
                     const std::vector<int>& anti) const;

    // M(i,j) = d^2 f / dw_{hol[i]} dw_{hol[j]}  (pure holomorphic block)
    CMat pure_block(const Fn& f, const CVec& w, const std::vector<int>& hol) const;

private:
    // second derivative in real coordinates a, b (indices into the 2m reals)
    double d2_real(const Fn& f, const CVec& w, int a, int b) const;
    double d2_real_step(const Fn& f, const CVec& w, int a, int b, double ha, double hb) const;
};

} // namespace invmet
