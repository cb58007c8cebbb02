#pragma once

#include "invmet/types.hpp"

#include <functional>

namespace invmet {

// Compact derivative-free simplex minimizer (Nelder-Mead) for small smooth
// problems; deterministic for a fixed start.
RVec nelder_mead(const std::function<double(const RVec&)>& f, RVec start, double scale,
                 int max_iter, double tol = 1e-12);

// Quasi-Newton (BFGS) minimizer with central-difference gradients; returns the
// best iterate.  Used for the low-dimensional embedding optimizations.
RVec bfgs_minimize(const std::function<double(const RVec&)>& f, RVec start, int max_iter,
                   double grad_step = 1e-6, double tol = 1e-12);

} // namespace invmet
