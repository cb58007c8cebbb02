#include "invmet/rng.hpp"

#include <cmath>

namespace invmet {

double halton(std::uint64_t k, int base) {
    double f = 1.0, r = 0.0;
    while (k > 0) {
        f /= base;
        r += f * static_cast<double>(k % base);
        k /= base;
    }
    return r;
}

namespace {
constexpr int kPrimes[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53};
}

std::vector<RVec> sphere_directions(int dim, int count) {
    require(dim >= 2 && dim % 2 == 0, "sphere_directions: dim must be even and >= 2");
    require(dim / 2 <= static_cast<int>(sizeof(kPrimes) / sizeof(int)), "sphere_directions: dimension too large");
    std::vector<RVec> out;
    out.reserve(count);
    for (int k = 1; out.size() < static_cast<size_t>(count); ++k) {
        RVec u(dim);
        for (int j = 0; j < dim / 2; ++j) {
            // Box-Muller on a Halton pair; clamp away from the log singularity
            double u1 = std::max(halton(k, kPrimes[2 * j % 16]), 1e-12);
            double u2 = halton(k, kPrimes[(2 * j + 1) % 16]);
            double rad = std::sqrt(-2.0 * std::log(u1));
            u(2 * j) = rad * std::cos(2.0 * kPi * u2);
            u(2 * j + 1) = rad * std::sin(2.0 * kPi * u2);
        }
        double nn = u.norm();
        if (nn < 1e-9) continue;
        out.push_back(u / nn);
    }
    return out;
}

CVec complexify_direction(const RVec& u) {
    int n = static_cast<int>(u.size()) / 2;
    CVec c(n);
    for (int i = 0; i < n; ++i) c(i) = Complex(u(2 * i), u(2 * i + 1));
    return c;
}

RVec realify(const CVec& w) {
    int n = static_cast<int>(w.size());
    RVec u(2 * n);
    for (int i = 0; i < n; ++i) {
        u(2 * i) = w(i).real();
        u(2 * i + 1) = w(i).imag();
    }
    return u;
}

} // namespace invmet
