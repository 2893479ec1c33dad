#pragma once

#include "sgue/precision.hpp"

#include <functional>

namespace sgue {

// K_{n+1/2}(z) from the terminating series
Real bessel_k_half(int n, const Real& z, const PrecisionContext& ctx);

// Illinois regula falsi with bisection fallback.  Stops when the bracket is
// narrower than width_tol, default ctx.rel_tol * max(|a|, |b|, 1).
Real find_root_bracketed(const std::function<Real(const Real&)>& f, Real a, Real b, const PrecisionContext& ctx);
Real find_root_bracketed(const std::function<Real(const Real&)>& f, Real a, Real b, const PrecisionContext& ctx,
                         const Real& width_tol);

}  // namespace sgue
