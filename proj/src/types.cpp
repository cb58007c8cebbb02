#include "invmet/types.hpp"

#include <cstdio>

namespace invmet {

std::vector<MultiIndex> multi_indices_up_to(int n, int d) {
    std::vector<MultiIndex> out;
    MultiIndex cur(n, 0);
    // enumerate by total degree so truncation by degree is a prefix
    for (int total = 0; total <= d; ++total) {
        // iterate compositions of `total` into n parts
        std::vector<int> a(n, 0);
        a[0] = total;
        while (true) {
            out.push_back(MultiIndex(a.begin(), a.end()));
            // next composition in colex order
            int i = 0;
            while (i < n - 1 && a[i] == 0) ++i;
            if (i == n - 1) break;
            int head = a[i];
            a[i] = 0;
            a[i + 1] += 1;
            a[0] = head - 1;
        }
    }
    return out;
}

Complex monomial_eval(const CVec& z, const MultiIndex& a) {
    Complex p(1.0, 0.0);
    for (int i = 0; i < static_cast<int>(a.size()); ++i)
        for (int k = 0; k < a[i]; ++k) p *= z(i);
    return p;
}

Complex monomial_deriv_eval(const CVec& z, const MultiIndex& a, const std::vector<int>& dz) {
    MultiIndex b = a;
    double factor = 1.0;
    for (int i : dz) {
        if (b[i] == 0) return Complex(0.0, 0.0);
        factor *= b[i];
        b[i] -= 1;
    }
    return factor * monomial_eval(z, b);
}

std::uint64_t fnv1a(const std::string& bytes) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string fmt17(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return std::string(buf);
}

} // namespace invmet
