#include "sgue/moments.hpp"

#include "sgue/quadrature.hpp"
#include "sgue/special.hpp"

#include <cmath>
#include <limits>

namespace sgue {

namespace mp = boost::multiprecision;

ModelParams::ModelParams(int n, Real z_, Real t_) : N(n), z(std::move(z_)), t(std::move(t_)) {
  if (N < 1) throw InputError("N must be >= 1");
  if (z < 0) throw InputError("z must be >= 0");
}

ModelParams ModelParams::from_strings(int n, const std::string& z, const std::string& t) {
  return ModelParams(n, real_from_string(z), real_from_string(t));
}

Real ModelParams::v1() const { return t / mp::sqrt(Real(N)); }
Real ModelParams::v2() const {
  Real r = z / N;
  return r * r;
}

WeightShape WeightShape::original(const ModelParams& p) { return {p.z * p.z / 2, p.t, Real(1) / 2}; }

WeightShape WeightShape::scaled(const ModelParams& p) {
  // w(sqrt(N) y): alpha = z^2/(2N) = N v2/2, beta = t/sqrt(N) = v1, gamma = N/2
  return {p.z * p.z / (2 * p.N), p.v1(), Real(p.N) / 2};
}

Real WeightShape::exponent(const Real& x) const {
  if (x == 0) {
    if (alpha > 0) return -std::numeric_limits<Real>::infinity();
    if (beta != 0) throw DomainError("weight exponent has a pole at x = 0 when z = 0 and t != 0");
    return Real(0);
  }
  Real r = 1 / x;
  return (beta - alpha * r) * r - gamma * x * x;
}

Real WeightShape::value(const Real& x) const {
  Real e = exponent(x);
  if (!is_finite(e)) return Real(0);
  return mp::exp(e);
}

Real weight_value(const Real& x, const ModelParams& p) { return WeightShape::original(p).value(x); }

namespace {

void check_integrable(const ModelParams& p) {
  if (p.z == 0 && p.t != 0) throw DomainError("z = 0 with t != 0: the weight is not integrable at 0");
}

// mu_j = int_0^inf x^j [w(x) + (-1)^j w(-x)] dx for j = first .. first+count-1
VectorQuadratureResult shape_moments(const WeightShape& w, int first, std::size_t count,
                                     const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  // below this exponent the node is certified negligible (x <= 1 so x^j <= 1)
  Real cutoff = -Real(ctx.mantissa_bits + 64) * ln2();
  auto f = [&](const RealPoint& pt, std::vector<Real>& out) {
    const Real& x = pt.x;
    Real ep = w.exponent(x), em = w.exponent(-x);
    Real wp = (x <= 1 && ep < cutoff) || !is_finite(ep) ? Real(0) : mp::exp(ep);
    Real wm = (x <= 1 && em < cutoff) || !is_finite(em) ? Real(0) : mp::exp(em);
    if (wp == 0 && wm == 0) {
      for (auto& o : out) o = 0;
      return;
    }
    Real pw = first == 0 ? Real(1) : mp::pow(x, first);
    Real even = wp + wm, odd = wp - wm;
    for (std::size_t k = 0; k < count; ++k) {
      out[k] = pw * (((first + k) % 2 == 0) ? even : odd);
      pw *= x;
    }
  };
  return integrate_vector(f, count, HalfLine{Real(0)}, ctx);
}

}  // namespace

MomentValue moment(int j, const ModelParams& p, const PrecisionContext& ctx) {
  if (j < 0) throw InputError("moment index must be >= 0");
  check_integrable(p);
  PrecisionScope scope(ctx);
  auto r = shape_moments(WeightShape::original(p), j, 1, ctx);
  return {r.value[0], r.error_bound[0]};
}

MomentTable moment_table(const ModelParams& p, std::size_t count, Variables v, const PrecisionContext& ctx,
                         const MomentCache* cache) {
  check_integrable(p);
  PrecisionScope scope(ctx);
  // guard digits stay internal: a table is the same whether computed or loaded
  const unsigned digits = digits10_for_bits(ctx.mantissa_bits);
  auto round = [digits](MomentTable& t) {
    for (auto& x : t.entries) x.precision(digits);
    for (auto& x : t.error_bounds) x.precision(digits);
  };
  if (cache) {
    if (auto hit = cache->load(p, v, count, ctx.mantissa_bits)) {
      round(*hit);
      return *hit;
    }
  }
  WeightShape w = v == Variables::original ? WeightShape::original(p) : WeightShape::scaled(p);
  auto r = shape_moments(w, 0, count, ctx);
  MomentTable t;
  t.params = p;
  t.variables = v;
  t.mantissa_bits = ctx.mantissa_bits;
  t.entries = std::move(r.value);
  t.error_bounds = std::move(r.error_bound);
  round(t);
  if (cache) cache->store(t);
  return t;
}

MomentTable moment_table(const ModelParams& p, const PrecisionContext& ctx, const MomentCache* cache) {
  return moment_table(p, static_cast<std::size_t>(2 * p.N - 1), Variables::original, ctx, cache);
}

Real gaussian_singular_moment(int n, const Real& z, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  if (n % 2 != 0) return Real(0);
  // 2 z^{(n+1)/2} K_{(n+1)/2}(z), K_{-nu} = K_nu; (n+1)/2 = m + 1/2
  int m = n >= 0 ? n / 2 : -n / 2 - 1;
  return 2 * mp::pow(z, Real(n + 1) / 2) * bessel_k_half(m, z, ctx);
}

Real moment_series(int j, const Real& z, const Real& t, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  if (!(z > 0)) throw DomainError("moment_series needs z > 0");
  Real sum(0), coef(1);
  Real tiny = ctx.eps() / 1024;
  Real first(0);
  for (int k = 0; k < 100000; ++k) {
    Real term = coef * gaussian_singular_moment(j - k, z, ctx);
    sum += term;
    if (first == 0 && term != 0) first = mp::abs(term);
    // K_{m+1/2} grows like (m-1)! (2/z)^m so terms eventually shrink like t^k/k! * (k/2)!
    if (k > j + 4 && term != 0 && mp::abs(term) < tiny * mp::abs(sum)) break;
    coef *= t / (k + 1);
    if (coef == 0) break;
  }
  return sum;
}

}  // namespace sgue
