#pragma once

#include "invmet/types.hpp"

#include <cstdint>
#include <random>

namespace invmet {

// Seeded generator wrapper.  Every sampling operation in the library takes an
// explicit seed and draws through one of these, so reruns are bit-reproducible.
class SampleRng {
public:
    explicit SampleRng(std::uint64_t seed) : eng_(seed) {}

    double uniform(double lo = 0.0, double hi = 1.0) {
        return std::uniform_real_distribution<double>(lo, hi)(eng_);
    }
    double gaussian() { return std::normal_distribution<double>(0.0, 1.0)(eng_); }

    Complex complex_gaussian() {
        double re = gaussian(), im = gaussian();
        return Complex(re, im);
    }

    // standard complex gaussian vector in C^n
    CVec cvec_gaussian(int n) {
        CVec v(n);
        for (int i = 0; i < n; ++i) v(i) = complex_gaussian();
        return v;
    }

    // uniform on the unit sphere of C^n
    CVec unit_tangent(int n) {
        CVec v = cvec_gaussian(n);
        while (v.norm() < 1e-12) v = cvec_gaussian(n);
        return v / v.norm();
    }

    // derive an independent child seed (for split measurement/verification sets)
    std::uint64_t derive(std::uint64_t salt) {
        std::uint64_t x = salt + 0x9e3779b97f4a7c15ull;
        x ^= eng_();
        x ^= x >> 30; x *= 0xbf58476d1ce4e5b9ull;
        x ^= x >> 27; x *= 0x94d049bb133111ebull;
        x ^= x >> 31;
        return x;
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

// k-th element (k >= 1) of the van der Corput sequence in the given prime base.
double halton(std::uint64_t k, int base);

// Deterministic low-discrepancy direction set on the unit sphere of R^{dim}.
// Halton points are pushed through Box-Muller pairs and normalized; `dim` must
// be even (it always is here: dim = 2n for C^n).
std::vector<RVec> sphere_directions(int dim, int count);

// Real vector u in R^{2n} <-> complex vector c in C^n such that
// <w, u>_R = Re herm(w, c).  Layout: u = (Re w_1, Im w_1, ..., Re w_n, Im w_n).
CVec complexify_direction(const RVec& u);
RVec realify(const CVec& w);

} // namespace invmet
