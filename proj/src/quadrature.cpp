#include "sgue/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <tuple>

namespace sgue {

namespace mp = boost::multiprecision;

Real RealPoint::minus(const Real& c) const {
  if (anchor == 0 && a && c == *a) return off;
  if (anchor == 1 && b && c == *b) return off;
  return x - c;
}

Complex PathPoint::minus(const Complex& c) const {
  const Complex* e = anchor == 0 ? start : end;
  if (e && c.re == e->re && c.im == e->im) return off;
  return z - c;
}

namespace {

constexpr int kLevelCap = 8;
constexpr double kH0 = 0.5;

struct Node {
  Real off;  // finite: offset in [0,1] from anchor; half-line: x - a
  int anchor;
  Real w;
  double t;
};

using Level = std::vector<Node>;

// ---- node tables, cached per (bits, kind, level) ----

enum Kind { fin_rr = 0, fin_sr = 1, fin_rs = 2, fin_ss = 3, half_r = 4, half_s = 5 };

int kind_of(const HalfLine& hl) { return hl.left == Endpoint::inv_sqrt ? half_s : half_r; }

double finite_tmax(unsigned bits) {
  double u = (bits + 24) * std::log(2.0) / 2 + 1;
  return std::asinh(u * 2 / M_PI);
}
double half_tmin(unsigned bits) {
  double u = (bits + 24) * std::log(2.0) + 1;
  return -std::asinh(u * 2 / M_PI);
}
constexpr double kHalfTcap = 9.0;

std::optional<Node> make_node(int kind, double td) {
  Real t(td);
  Real hp = pi() / 2;
  Real u = hp * mp::sinh(t);
  Node n;
  n.t = td;
  if (kind >= half_r) {
    Real e = mp::exp(u);
    if (e == 0) return std::nullopt;
    Real w = hp * mp::cosh(t) * e;
    if (kind == half_s) {  // x = a + s^2
      n.off = e * e;
      n.w = 2 * e * w;
    } else {
      n.off = e;
      n.w = w;
    }
    n.anchor = 0;
    return n;
  }
  // tanh-sinh on [0,1]
  Real e = mp::exp(-2 * mp::abs(u));
  Real toff = e / (1 + e);
  int anchor = td < 0 ? 0 : 1;
  Real ch = mp::cosh(u);
  Real w = hp * mp::cosh(t) / (2 * ch * ch);
  if (toff == 0 || w == 0) return std::nullopt;
  bool sl = kind & 1, sr = kind & 2;
  if (sl && sr) {
    Real s = mp::sin(hp * toff);
    w *= hp * mp::sin(pi() * toff);
    toff = s * s;
  } else if (sl || sr) {
    bool near_sing = (sl && anchor == 0) || (sr && anchor == 1);
    if (near_sing) {
      w *= 2 * toff;
      toff = toff * toff;
    } else {
      w *= 2 * (1 - toff);
      toff = toff * (2 - toff);
    }
  }
  if (toff == 0 || w == 0) return std::nullopt;
  n.off = toff;
  n.anchor = anchor;
  n.w = w;
  return n;
}

const Level& node_level(unsigned bits, int kind, int level) {
  thread_local std::map<std::tuple<unsigned, int, int>, Level> cache;
  auto key = std::make_tuple(bits, kind, level);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  PrecisionScope scope(bits + 32);
  double lo, hi;
  if (kind >= half_r) {
    lo = half_tmin(bits);
    hi = kHalfTcap;
  } else {
    hi = finite_tmax(bits);
    lo = -hi;
  }
  Level out;
  if (level == 0) {
    for (long j = static_cast<long>(std::ceil(lo / kH0)); j * kH0 <= hi; ++j)
      if (auto n = make_node(kind, j * kH0)) out.push_back(std::move(*n));
  } else {
    double h = kH0 / std::ldexp(1.0, level);
    for (long j = static_cast<long>(std::floor(lo / h)); j * h <= hi; ++j) {
      if ((j & 1) == 0) continue;
      if (j * h < lo) continue;
      if (auto n = make_node(kind, j * h)) out.push_back(std::move(*n));
    }
  }
  return cache.emplace(key, std::move(out)).first->second;
}

// ---- value-type operations ----

struct RealOps {
  using V = Real;
  using E = Real;
  std::size_t dim = 1;
  V zero() const { return Real(0); }
  E ezero() const { return Real(0); }
  void axpy(V& acc, const Real& w, const V& v) const { acc += w * v; }
  void abs_axpy(E& acc, const Real& w, const V& v) const { acc += w * mp::abs(v); }
  void scale(V& v, const Real& s) const { v *= s; }
  void escale(E& v, const Real& s) const { v *= s; }
  E diff(const V& a, const V& b) const { return mp::abs(a - b); }
  bool finite(const V& v) const { return is_finite(v); }
  bool converged(const E& err, const E& l1, const Real& tol) const { return err <= tol * l1; }
  bool negligible(const Real& w, const V& v, const E& l1, const Real& thr) const {
    return w * mp::abs(v) <= thr * l1;
  }
  void add(V& a, const V& b) const { a += b; }
  void eadd(E& a, const E& b) const { a += b; }
  double approx(const V& v) const { return to_double(v); }
  double eapprox(const E& e) const { return to_double(e); }
};

struct ComplexOps {
  using V = Complex;
  using E = Real;
  std::size_t dim = 1;
  V zero() const { return Complex(); }
  E ezero() const { return Real(0); }
  void axpy(V& acc, const Real& w, const V& v) const {
    acc.re += w * v.re;
    acc.im += w * v.im;
  }
  void abs_axpy(E& acc, const Real& w, const V& v) const { acc += w * (mp::abs(v.re) + mp::abs(v.im)); }
  void scale(V& v, const Real& s) const { v *= s; }
  void escale(E& v, const Real& s) const { v *= s; }
  E diff(const V& a, const V& b) const { return mp::abs(a.re - b.re) + mp::abs(a.im - b.im); }
  bool finite(const V& v) const { return is_finite(v); }
  bool converged(const E& err, const E& l1, const Real& tol) const { return err <= tol * l1; }
  bool negligible(const Real& w, const V& v, const E& l1, const Real& thr) const {
    return w * (mp::abs(v.re) + mp::abs(v.im)) <= thr * l1;
  }
  void add(V& a, const V& b) const { a += b; }
  void eadd(E& a, const E& b) const { a += b; }
  double approx(const V& v) const { return to_double(v.re); }
  double eapprox(const E& e) const { return to_double(e); }
};

struct VectorOps {
  using V = std::vector<Real>;
  using E = std::vector<Real>;
  std::size_t dim;
  V zero() const { return V(dim, Real(0)); }
  E ezero() const { return E(dim, Real(0)); }
  void axpy(V& acc, const Real& w, const V& v) const {
    for (std::size_t i = 0; i < dim; ++i) acc[i] += w * v[i];
  }
  void abs_axpy(E& acc, const Real& w, const V& v) const {
    for (std::size_t i = 0; i < dim; ++i) acc[i] += w * mp::abs(v[i]);
  }
  void scale(V& v, const Real& s) const {
    for (auto& x : v) x *= s;
  }
  void escale(E& v, const Real& s) const { scale(v, s); }
  E diff(const V& a, const V& b) const {
    E d(dim);
    for (std::size_t i = 0; i < dim; ++i) d[i] = mp::abs(a[i] - b[i]);
    return d;
  }
  bool finite(const V& v) const {
    return std::all_of(v.begin(), v.end(), [](const Real& x) { return is_finite(x); });
  }
  bool converged(const E& err, const E& l1, const Real& tol) const {
    for (std::size_t i = 0; i < dim; ++i)
      if (err[i] > tol * l1[i]) return false;
    return true;
  }
  bool negligible(const Real& w, const V& v, const E& l1, const Real& thr) const {
    for (std::size_t i = 0; i < dim; ++i)
      if (w * mp::abs(v[i]) > thr * l1[i]) return false;
    return true;
  }
  void add(V& a, const V& b) const {
    for (std::size_t i = 0; i < dim; ++i) a[i] += b[i];
  }
  void eadd(E& a, const E& b) const { add(a, b); }
  double approx(const V& v) const { return v.empty() ? 0.0 : to_double(v[0]); }
  double eapprox(const E& e) const {
    double m = 0;
    for (const auto& x : e) m = std::max(m, to_double(x));
    return m;
  }
};

template <class Ops>
struct PanelResult {
  typename Ops::V value;
  typename Ops::E err;
  typename Ops::E l1;
  bool ok = false;
};

// Eval: (const Node&, V& out) -> void; out receives the integrand times the
// outer jacobian (the node weight is applied here).
template <class Ops, class Eval>
PanelResult<Ops> run_panel(const Ops& ops, unsigned bits, int kind, int max_level, const Real& tol,
                           Eval&& eval) {
  const bool half = kind >= half_r;
  Real thr = pow2(-static_cast<long>(bits) - 20);
  typename Ops::V sum = ops.zero(), part = ops.zero(), fv = ops.zero();
  typename Ops::E l1 = ops.ezero(), l1part = ops.ezero();
  double t_hi = 1e300;

  auto visit = [&](const Node& n) {
    eval(n, fv);
    if (!ops.finite(fv)) throw InputError("integrand returned a non-finite value");
    ops.axpy(part, n.w, fv);
    ops.abs_axpy(l1part, n.w, fv);
  };

  {
    const Level& lv = node_level(bits, kind, 0);
    int quiet = 0;
    for (const Node& n : lv) {
      eval(n, fv);
      if (!ops.finite(fv)) throw InputError("integrand returned a non-finite value");
      ops.axpy(part, n.w, fv);
      ops.abs_axpy(l1part, n.w, fv);
      if (half && n.t > 0) {
        if (ops.negligible(n.w, fv, l1part, thr))
          ++quiet;
        else
          quiet = 0;
        if (quiet >= 2) {
          t_hi = n.t;
          break;
        }
      }
    }
    sum = part;
    l1 = l1part;
    ops.scale(sum, Real(kH0));
    ops.escale(l1, Real(kH0));
  }

  PanelResult<Ops> res;
  for (int k = 1; k <= max_level; ++k) {
    part = ops.zero();
    l1part = ops.ezero();
    for (const Node& n : node_level(bits, kind, k)) {
      if (n.t > t_hi) break;
      visit(n);
    }
    Real h = pow2(-k) * kH0;
    typename Ops::V next = sum;
    ops.scale(next, Real(0.5));
    ops.scale(part, h);
    ops.add(next, part);
    typename Ops::E l1next = l1;
    ops.escale(l1next, Real(0.5));
    ops.escale(l1part, h);
    ops.eadd(l1next, l1part);
    res.err = ops.diff(next, sum);
    sum = std::move(next);
    l1 = std::move(l1next);
    if (k >= 2 && ops.converged(res.err, l1, tol)) {
      res.ok = true;
      break;
    }
  }
  res.value = std::move(sum);
  res.l1 = std::move(l1);
  return res;
}

template <class Ops>
void add_rounding(const Ops& ops, typename Ops::E& err, const typename Ops::E& l1, unsigned bits) {
  typename Ops::E r = l1;
  ops.escale(r, pow2(-static_cast<long>(bits) + 12));
  ops.eadd(err, r);
}


template <class Ops>
struct Accum {
  typename Ops::V value;
  typename Ops::E err;
  int panels = 0;
};

// finite interval with bisection on failure
template <class Ops, class F>
void finite_recursive(const Ops& ops, const F& f, const Real& a, const Real& b, const Interval& orig,
                      Endpoint left, Endpoint right, int depth_left, const PrecisionContext& ctx,
                      Accum<Ops>& acc) {
  int kind = (left == Endpoint::inv_sqrt ? 1 : 0) + (right == Endpoint::inv_sqrt ? 2 : 0);
  Real len = b - a;
  const bool a_is_orig = a == orig.a, b_is_orig = b == orig.b;
  RealPoint p;
  p.a = a_is_orig ? &orig.a : nullptr;
  p.b = b_is_orig ? &orig.b : nullptr;
  auto eval = [&](const Node& n, typename Ops::V& out) {
    p.anchor = n.anchor;
    if (n.anchor == 0) {
      p.off = len * n.off;
      p.x = a + p.off;
    } else {
      p.off = -(len * n.off);
      p.x = b + p.off;
    }
    f(p, out);
    ops.scale(out, len);
  };
  int max_level = std::min(kLevelCap, ctx.max_quad_depth);
  auto r = run_panel(ops, ctx.mantissa_bits, kind, max_level, ctx.rel_tol(), eval);
  if (!r.ok) {
    if (depth_left > 0) {
      Real mid = (a + b) / 2;
      finite_recursive(ops, f, a, mid, orig, left, Endpoint::regular, depth_left - 1, ctx, acc);
      finite_recursive(ops, f, mid, b, orig, Endpoint::regular, right, depth_left - 1, ctx, acc);
      return;
    }
    throw ConvergenceError("quadrature did not converge on [" + to_string(a, 8) + ", " + to_string(b, 8) + "]",
                           ops.approx(r.value), ops.eapprox(r.err));
  }
  add_rounding(ops, r.err, r.l1, ctx.mantissa_bits);
  ops.add(acc.value, r.value);
  ops.eadd(acc.err, r.err);
  acc.panels += 1;
}

template <class Ops, class F>
Accum<Ops> integrate_finite(const Ops& ops, const F& f, const Interval& iv, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  Accum<Ops> acc{ops.zero(), ops.ezero(), 0};
  if (iv.a == iv.b) {
    acc.panels = 1;
    return acc;
  }
  int depth = std::max(0, ctx.max_quad_depth - kLevelCap);
  if (iv.b < iv.a) {
    Interval rev{iv.b, iv.a, iv.right, iv.left};
    finite_recursive(ops, f, rev.a, rev.b, rev, rev.left, rev.right, depth, ctx, acc);
    ops.scale(acc.value, Real(-1));
    return acc;
  }
  finite_recursive(ops, f, iv.a, iv.b, iv, iv.left, iv.right, depth, ctx, acc);
  return acc;
}

template <class Ops, class F>
Accum<Ops> integrate_half(const Ops& ops, const F& f, const HalfLine& hl, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  RealPoint p;
  p.a = &hl.a;
  p.anchor = 0;
  auto eval = [&](const Node& n, typename Ops::V& out) {
    p.off = n.off;
    p.x = hl.a + n.off;
    f(p, out);
  };
  int max_level = std::min(kLevelCap + 2, ctx.max_quad_depth);
  auto r = run_panel(ops, ctx.mantissa_bits, kind_of(hl), max_level, ctx.rel_tol(), eval);
  if (!r.ok)
    throw ConvergenceError("quadrature did not converge on [" + to_string(hl.a, 8) + ", inf)",
                           ops.approx(r.value), ops.eapprox(r.err));
  add_rounding(ops, r.err, r.l1, ctx.mantissa_bits);
  return {std::move(r.value), std::move(r.err), 1};
}

template <class Fn>
auto scalar_adapter(const Fn& f) {
  return [&f](const RealPoint& p, auto& out) { out = f(p); };
}

}  // namespace

QuadratureResult<Real> integrate_real(const RealFn& f, const Interval& iv, const PrecisionContext& ctx) {
  auto a = integrate_finite(RealOps{}, scalar_adapter(f), iv, ctx);
  return {std::move(a.value), std::move(a.err), a.panels};
}

QuadratureResult<Real> integrate_real(const RealFn& f, const HalfLine& hl, const PrecisionContext& ctx) {
  auto a = integrate_half(RealOps{}, scalar_adapter(f), hl, ctx);
  return {std::move(a.value), std::move(a.err), a.panels};
}

QuadratureResult<Complex> integrate_complex(const RealToComplexFn& f, const Interval& iv,
                                            const PrecisionContext& ctx) {
  auto a = integrate_finite(ComplexOps{}, scalar_adapter(f), iv, ctx);
  return {std::move(a.value), std::move(a.err), a.panels};
}

QuadratureResult<Complex> integrate_complex(const RealToComplexFn& f, const HalfLine& hl,
                                            const PrecisionContext& ctx) {
  auto a = integrate_half(ComplexOps{}, scalar_adapter(f), hl, ctx);
  return {std::move(a.value), std::move(a.err), a.panels};
}

VectorQuadratureResult integrate_vector(const VectorFn& f, std::size_t dim, const HalfLine& hl,
                                        const PrecisionContext& ctx) {
  auto a = integrate_half(VectorOps{dim}, [&f](const RealPoint& p, std::vector<Real>& out) { f(p, out); }, hl,
                          ctx);
  return {std::move(a.value), std::move(a.err), a.panels};
}

VectorQuadratureResult integrate_vector(const VectorFn& f, std::size_t dim, const Interval& iv,
                                        const PrecisionContext& ctx) {
  auto a = integrate_finite(VectorOps{dim}, [&f](const RealPoint& p, std::vector<Real>& out) { f(p, out); }, iv,
                            ctx);
  return {std::move(a.value), std::move(a.err), a.panels};
}

QuadratureResult<Complex> integrate_path(const PathFn& f, const std::vector<Segment>& path,
                                         const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  QuadratureResult<Complex> total{Complex(), Real(0), 0};
  for (const Segment& seg : path) {
    Complex dz = seg.to - seg.from;
    if (dz.re == 0 && dz.im == 0) continue;
    PathPoint pp;
    pp.start = &seg.from;
    pp.end = &seg.to;
    Interval unit{Real(0), Real(1), seg.start, seg.end};
    auto g = [&](const RealPoint& p) {
      if (p.anchor == 0 && p.a) {
        pp.anchor = 0;
        pp.off = dz * p.off;
        pp.z = seg.from + pp.off;
      } else if (p.anchor == 1 && p.b) {
        pp.anchor = 1;
        pp.off = dz * p.off;
        pp.z = seg.to + pp.off;
      } else {
        pp.anchor = 0;
        pp.off = dz * p.x;
        pp.z = seg.from + pp.off;
      }
      return f(pp) * dz;
    };
    auto r = integrate_complex(g, unit, ctx);
    total.value += r.value;
    total.error_bound += r.error_bound;
    total.panels_used += r.panels_used;
  }
  if (total.panels_used == 0) total.panels_used = 1;
  return total;
}

QuadratureResult<Complex> integrate_arc(const ComplexFn& f, const Complex& c, const Real& r, const Real& phi0,
                                        const Real& phi1, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  auto g = [&](const RealPoint& p) {
    Complex e = polar(Real(1), p.x);
    Complex z = c + e * r;
    return f(z) * (I_unit() * e * r);
  };
  return integrate_complex(g, Interval{phi0, phi1}, ctx);
}

QuadratureResult<Complex> integrate_circle(const ComplexFn& f, const Complex& c, const Real& r,
                                           const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const int m0 = 16;
  const int m_max = 1 << 14;
  Real two_pi = 2 * pi();
  // irrational offset keeps nodes off the real axis at every level
  Real phi0 = two_pi * (mp::sqrt(Real(2)) - 1) / m0;
  Real tol = ctx.rel_tol();
  auto term = [&](const Real& phi, Real& l1) {
    Complex e = polar(Real(1), phi);
    Complex z = c + e * r;
    Complex v = f(z) * (I_unit() * e * r);
    if (!is_finite(v)) throw InputError("integrand returned a non-finite value on circle");
    l1 += mp::abs(v.re) + mp::abs(v.im);
    return v;
  };
  Complex sum;
  Real l1(0);
  for (int k = 0; k < m0; ++k) sum += term(phi0 + two_pi * k / m0, l1);
  Complex value = sum * (two_pi / m0);
  Real err(0);
  for (int m = m0; m < m_max; m *= 2) {
    for (int k = 0; k < m; ++k) sum += term(phi0 + two_pi * (2 * k + 1) / (2 * m), l1);
    Complex next = sum * (two_pi / (2 * m));
    Real scale = l1 * two_pi / (2 * m);
    err = abs(next - value);
    value = next;
    if (m >= 2 * m0 && err <= tol * scale) {
      err += scale * pow2(-static_cast<long>(ctx.mantissa_bits) + 12);
      return {value, err, 2 * m};
    }
  }
  throw ConvergenceError("circle quadrature did not converge", to_double(value.re), to_double(err));
}

}  // namespace sgue
