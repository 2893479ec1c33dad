#include "sgue/special.hpp"

#include <algorithm>

namespace sgue {

namespace mp = boost::multiprecision;

Real bessel_k_half(int n, const Real& z, const PrecisionContext& ctx) {
  if (n < 0) throw DomainError("bessel_k_half: n must be nonnegative");
  PrecisionScope scope(ctx);
  if (!(z > 0)) throw DomainError("bessel_k_half: z must be positive");
  // sum_k (n+k)! / (k! (n-k)!) (2z)^-k
  Real term(1), sum(1);
  Real inv2z = 1 / (2 * z);
  for (int k = 1; k <= n; ++k) {
    term *= Real((n + k) * (n - k + 1)) / k;
    term *= inv2z;
    sum += term;
  }
  return mp::sqrt(pi() / (2 * z)) * mp::exp(-z) * sum;
}

Real find_root_bracketed(const std::function<Real(const Real&)>& f, Real a, Real b, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  Real scale = std::max({Real(mp::abs(a)), Real(mp::abs(b)), Real(1)});
  return find_root_bracketed(f, std::move(a), std::move(b), ctx, ctx.rel_tol() * scale);
}

Real find_root_bracketed(const std::function<Real(const Real&)>& f, Real a, Real b, const PrecisionContext& ctx,
                         const Real& width_tol) {
  PrecisionScope scope(ctx);
  if (b < a) std::swap(a, b);
  Real fa = f(a), fb = f(b);
  if (fa == 0) return a;
  if (fb == 0) return b;
  if ((fa > 0) == (fb > 0)) throw BracketError("find_root_bracketed: no sign change on the bracket");
  int side = 0;
  for (int it = 0; it < 100000; ++it) {
    if (b - a <= width_tol) break;
    Real c;
    // every fourth step is a plain bisection so the bracket always shrinks geometrically
    if (it % 4 == 3) {
      c = (a + b) / 2;
    } else {
      c = (a * fb - b * fa) / (fb - fa);
      if (!(c > a && c < b)) c = (a + b) / 2;
    }
    Real fc = f(c);
    if (fc == 0) return c;
    if ((fc > 0) == (fb > 0)) {
      b = c;
      fb = fc;
      if (side == -1) fa /= 2;
      side = -1;
    } else {
      a = c;
      fa = fc;
      if (side == 1) fb /= 2;
      side = 1;
    }
  }
  return mp::abs(fa) < mp::abs(fb) ? a : b;
}

}  // namespace sgue
