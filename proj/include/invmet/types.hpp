#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace invmet {

using Complex = std::complex<double>;
using CVec = Eigen::VectorXcd;   // point z or tangent v in C^n
using CMat = Eigen::MatrixXcd;
using RVec = Eigen::VectorXd;
using RMat = Eigen::MatrixXd;

// A point z in C^n and a tangent vector v in T_z^{1,0} ~ C^n share the same
// coordinate representation; the aliases keep signatures readable.
using CPoint = CVec;
using CTangent = CVec;

constexpr double kPi = 3.14159265358979323846;

// Error taxonomy used across the library.  Input errors are caller bugs,
// domain errors are points outside the geometric domain, config errors are
// violated parameter windows, degeneracy errors are numerical breakdowns.
struct config_error : std::runtime_error {
    explicit config_error(const std::string& what) : std::runtime_error(what) {}
};
struct degeneracy_error : std::runtime_error {
    explicit degeneracy_error(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const std::string& what) {
    if (!cond) throw std::invalid_argument(what);
}

inline void require_nonzero(const CTangent& v, const char* where) {
    if (v.norm() == 0.0)
        throw std::invalid_argument(std::string(where) + ": zero tangent vector (metric is only smooth on the slit bundle)");
}

inline void require_dim(const CVec& x, int n, const char* where) {
    if (x.size() != n)
        throw std::invalid_argument(std::string(where) + ": dimension mismatch, expected " + std::to_string(n) +
                                    ", got " + std::to_string(static_cast<int>(x.size())));
}

// Hermitian inner product <u,w> = sum_i u_i conj(w_i), linear in the first slot.
inline Complex herm(const CVec& u, const CVec& w) { return w.dot(u); }

inline double sqnorm(const CVec& u) { return u.squaredNorm(); }

// Multi-index for monomials z^alpha.
using MultiIndex = std::vector<int>;

inline int mi_total(const MultiIndex& a) {
    int s = 0;
    for (int k : a) s += k;
    return s;
}

// All multi-indices in dimension n with total degree <= d, graded lexicographic.
std::vector<MultiIndex> multi_indices_up_to(int n, int d);

// z^alpha
Complex monomial_eval(const CVec& z, const MultiIndex& a);

// d/dz_i z^alpha, possibly iterated: returns the evaluated derivative of z^alpha
// with all derivatives in `dz` applied (each entry is a coordinate index).
Complex monomial_deriv_eval(const CVec& z, const MultiIndex& a, const std::vector<int>& dz);

// FNV-1a over a string; used for stable content hashes in cache files.
std::uint64_t fnv1a(const std::string& bytes);

// Fixed 17-significant-digit rendering for reproducible text output.
std::string fmt17(double x);

} // namespace invmet
