#pragma once

#include "sgue/complex.hpp"
#include "sgue/precision.hpp"

#include <functional>
#include <type_traits>
#include <vector>

namespace sgue {

// Double-exponential quadrature (tanh-sinh on finite intervals, exp-sinh on
// half-lines) with level halving.  A panel that fails to converge after
// kLevelCap halvings is bisected; ctx.max_quad_depth bounds halvings plus
// bisections.  Endpoints declared inv_sqrt get s^2 / sin^2 substitutions.

enum class Endpoint { regular, inv_sqrt };

template <class V>
struct QuadratureResult {
  V value;
  Real error_bound;
  int panels_used = 1;
};

struct VectorQuadratureResult {
  std::vector<Real> value;
  std::vector<Real> error_bound;
  int panels_used = 1;
};

// Abscissa handed to integrands.  off is measured from the nearest declared
// endpoint (anchor 0: x = a + off, anchor 1: x = b + off, off < 0) so that
// integrands with endpoint singularities can form x - a without cancellation.
struct RealPoint {
  Real x;
  Real off;
  int anchor = 0;
  const Real* a = nullptr;
  const Real* b = nullptr;

  Real minus(const Real& c) const;
};

struct PathPoint {
  Complex z;
  Complex off;
  int anchor = 0;
  const Complex* start = nullptr;
  const Complex* end = nullptr;

  Complex minus(const Complex& c) const;
};

struct Interval {
  Real a, b;
  Endpoint left = Endpoint::regular;
  Endpoint right = Endpoint::regular;
};

struct HalfLine {  // [a, +inf)
  Real a;
  Endpoint left = Endpoint::regular;
};

struct Segment {
  Complex from, to;
  Endpoint start = Endpoint::regular;
  Endpoint end = Endpoint::regular;
};

using RealFn = std::function<Real(const RealPoint&)>;
using RealToComplexFn = std::function<Complex(const RealPoint&)>;
using VectorFn = std::function<void(const RealPoint&, std::vector<Real>&)>;
using PathFn = std::function<Complex(const PathPoint&)>;
using ComplexFn = std::function<Complex(const Complex&)>;

QuadratureResult<Real> integrate_real(const RealFn& f, const Interval& iv, const PrecisionContext& ctx);
QuadratureResult<Real> integrate_real(const RealFn& f, const HalfLine& hl, const PrecisionContext& ctx);
QuadratureResult<Complex> integrate_complex(const RealToComplexFn& f, const Interval& iv,
                                            const PrecisionContext& ctx);
QuadratureResult<Complex> integrate_complex(const RealToComplexFn& f, const HalfLine& hl,
                                            const PrecisionContext& ctx);
VectorQuadratureResult integrate_vector(const VectorFn& f, std::size_t dim, const HalfLine& hl,
                                        const PrecisionContext& ctx);
VectorQuadratureResult integrate_vector(const VectorFn& f, std::size_t dim, const Interval& iv,
                                        const PrecisionContext& ctx);

// int f(z) dz along a polyline
QuadratureResult<Complex> integrate_path(const PathFn& f, const std::vector<Segment>& path,
                                         const PrecisionContext& ctx);
// int f(z) dz along z = c + r e^{i phi}, phi from phi0 to phi1
QuadratureResult<Complex> integrate_arc(const ComplexFn& f, const Complex& c, const Real& r, const Real& phi0,
                                        const Real& phi1, const PrecisionContext& ctx);
// counterclockwise closed circle, periodic trapezoid rule with doubling
QuadratureResult<Complex> integrate_circle(const ComplexFn& f, const Complex& c, const Real& r,
                                           const PrecisionContext& ctx);

// convenience front end: accepts f(Real) or f(RealPoint) returning Real or Complex
template <class F, class Domain>
auto integrate_adaptive(F&& f, const Domain& dom, const PrecisionContext& ctx) {
  if constexpr (std::is_invocable_v<F, const RealPoint&>) {
    using R = std::decay_t<std::invoke_result_t<F, const RealPoint&>>;
    if constexpr (std::is_same_v<R, Complex>)
      return integrate_complex(RealToComplexFn(std::forward<F>(f)), dom, ctx);
    else
      return integrate_real(RealFn(std::forward<F>(f)), dom, ctx);
  } else {
    using R = std::decay_t<std::invoke_result_t<F, const Real&>>;
    if constexpr (std::is_same_v<R, Complex>)
      return integrate_complex(RealToComplexFn([g = std::forward<F>(f)](const RealPoint& p) { return g(p.x); }),
                               dom, ctx);
    else
      return integrate_real(RealFn([g = std::forward<F>(f)](const RealPoint& p) { return Real(g(p.x)); }), dom,
                            ctx);
  }
}

}  // namespace sgue
