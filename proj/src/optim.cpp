#include "invmet/optim.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace invmet {

RVec nelder_mead(const std::function<double(const RVec&)>& f, RVec start, double scale,
                 int max_iter, double tol) {
    const int n = static_cast<int>(start.size());
    std::vector<RVec> x(n + 1, start);
    std::vector<double> fx(n + 1);
    for (int i = 0; i < n; ++i) x[i + 1](i) += scale;
    for (int i = 0; i <= n; ++i) fx[i] = f(x[i]);

    auto order = [&] {
        std::vector<int> idx(n + 1);
        for (int i = 0; i <= n; ++i) idx[i] = i;
        std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fx[a] < fx[b]; });
        std::vector<RVec> xs;
        std::vector<double> fs;
        for (int i : idx) {
            xs.push_back(x[i]);
            fs.push_back(fx[i]);
        }
        x = xs;
        fx = fs;
    };

    for (int it = 0; it < max_iter; ++it) {
        order();
        if (std::abs(fx[n] - fx[0]) < tol * (1.0 + std::abs(fx[0]))) break;
        RVec centroid = RVec::Zero(n);
        for (int i = 0; i < n; ++i) centroid += x[i];
        centroid /= n;
        RVec xr = centroid + (centroid - x[n]);
        double fr = f(xr);
        if (fr < fx[0]) {
            RVec xe = centroid + 2.0 * (centroid - x[n]);
            double fe = f(xe);
            if (fe < fr) { x[n] = xe; fx[n] = fe; }
            else { x[n] = xr; fx[n] = fr; }
        } else if (fr < fx[n - 1]) {
            x[n] = xr;
            fx[n] = fr;
        } else {
            RVec xc = centroid + 0.5 * (x[n] - centroid);
            double fc = f(xc);
            if (fc < fx[n]) { x[n] = xc; fx[n] = fc; }
            else {
                for (int i = 1; i <= n; ++i) {
                    x[i] = x[0] + 0.5 * (x[i] - x[0]);
                    fx[i] = f(x[i]);
                }
            }
        }
    }
    order();
    return x[0];
}

RVec bfgs_minimize(const std::function<double(const RVec&)>& f, RVec start, int max_iter,
                   double grad_step, double tol) {
    const int n = static_cast<int>(start.size());
    auto grad = [&](const RVec& p) {
        RVec g(n);
        for (int i = 0; i < n; ++i) {
            RVec e = RVec::Zero(n);
            double h = grad_step * std::max(1.0, std::abs(p(i)));
            e(i) = h;
            g(i) = (f(p + e) - f(p - e)) / (2 * h);
        }
        return g;
    };

    RVec x = start;
    double fx = f(x);
    RVec g = grad(x);
    RMat Hinv = RMat::Identity(n, n);
    RVec best_x = x;
    double best_f = fx;

    for (int it = 0; it < max_iter; ++it) {
        if (g.norm() < tol) break;
        RVec d = -Hinv * g;
        if (d.dot(g) > 0) d = -g;  // reset on loss of descent
        // backtracking line search
        double step = 1.0, fnew = 0;
        RVec xnew;
        bool ok = false;
        for (int ls = 0; ls < 40; ++ls) {
            xnew = x + step * d;
            fnew = f(xnew);
            if (fnew < fx + 1e-4 * step * g.dot(d)) { ok = true; break; }
            step *= 0.5;
        }
        if (!ok) break;
        RVec gnew = grad(xnew);
        RVec s = xnew - x, y = gnew - g;
        double sy = s.dot(y);
        if (sy > 1e-14) {
            RMat I = RMat::Identity(n, n);
            RMat V = I - (s * y.transpose()) / sy;
            Hinv = V * Hinv * V.transpose() + (s * s.transpose()) / sy;
        }
        x = xnew;
        fx = fnew;
        g = gnew;
        if (fx < best_f) { best_f = fx; best_x = x; }
    }
    return best_x;
}

} // namespace invmet
