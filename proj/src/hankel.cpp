#include "sgue/hankel.hpp"

#include "sgue/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace sgue {

namespace mp = boost::multiprecision;

std::vector<Real> HankelFactorization::eval_polys(const Real& x, int n) const {
  if (n > static_cast<int>(alpha.size())) throw InputError("eval_polys: not enough recurrence coefficients");
  std::vector<Real> p(n + 1);
  p[0] = 1;
  if (n >= 1) p[1] = x - alpha[0];
  for (int k = 1; k < n; ++k) p[k + 1] = (x - alpha[k]) * p[k] - beta[k] * p[k - 1];
  return p;
}

Real z_gue(int N, const PrecisionContext& ctx) {
  if (N < 1) throw InputError("z_gue: N must be >= 1");
  PrecisionScope scope(ctx);
  Real s = Real(N) / 2 * mp::log(2 * pi());
  Real lf(0);
  for (int j = 2; j < N; ++j) {
    lf += mp::log(Real(j));
    s += lf;
  }
  return s;
}

HankelFactorization factorize(const MomentTable& table, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const auto& mu = table.entries;
  const int M = static_cast<int>(mu.size());
  if (M < 1) throw InputError("factorize: empty moment table");
  const int n = (M + 1) / 2, na = M / 2;
  const Real u = ctx.eps();
  const Real limit = pow2(-64);

  HankelFactorization f;
  f.params = table.params;
  f.variables = table.variables;
  f.mantissa_bits = ctx.mantissa_bits;
  f.norms.resize(n);
  f.beta.resize(n);
  f.alpha.resize(na);
  f.log_det = 0;

  // rows sigma_{k-2}, sigma_{k-1}, sigma_k indexed by l, with absolute error bounds
  std::vector<Real> s2(M, Real(0)), s1(mu), s0(M);
  std::vector<Real> e2(M, Real(0)), e1(M), e0(M);
  for (int l = 0; l < M; ++l) e1[l] = 4 * u * mp::abs(mu[l]);
  Real ea(0), eb(0);  // errors of a_{k-1}, b_{k-1}
  Real worst(0);

  auto finish_row = [&](int k, const std::vector<Real>& s, const std::vector<Real>& e, const std::vector<Real>& sp,
                        const std::vector<Real>& ep) {
    const Real& h = s[k];
    if (!(h > 0))
      throw PositiveDefinitenessError("non-positive pivot h_" + std::to_string(k) +
                                      ": moment errors too large or precision too low");
    Real rel = e[k] / h;
    if (rel > worst) worst = rel;
    if (rel > limit)
      throw PrecisionError("Hankel factorization lost precision at h_" + std::to_string(k) +
                           "; raise mantissa_bits");
    f.norms[k] = h;
    f.log_det += mp::log(h);
    if (k == 0) {
      f.beta[0] = h;
      eb = e[0];
    } else {
      f.beta[k] = h / sp[k - 1];
      eb = f.beta[k] * (rel + ep[k - 1] / sp[k - 1]);
    }
    if (k < na) {
      Real r1 = s[k + 1] / h;
      Real er = e[k + 1] / h + mp::abs(r1) * rel;
      if (k == 0) {
        f.alpha[0] = r1;
        ea = er;
      } else {
        Real r2 = sp[k] / sp[k - 1];
        f.alpha[k] = r1 - r2;
        ea = er + ep[k] / sp[k - 1] + mp::abs(r2) * ep[k - 1] / sp[k - 1] + u * (mp::abs(r1) + mp::abs(r2));
      }
    }
  };

  finish_row(0, s1, e1, s2, e2);
  for (int k = 1; k < n; ++k) {
    const Real& a = f.alpha[k - 1];
    const Real& b = f.beta[k - 1];
    const bool has_prev2 = k >= 2;
    for (int l = k; l <= M - 1 - k; ++l) {
      Real t1 = s1[l + 1];
      Real t2 = a * s1[l];
      Real t3 = has_prev2 ? Real(b * s2[l]) : Real(0);
      s0[l] = t1 - t2 - t3;
      Real err = e1[l + 1] + mp::abs(a) * e1[l] + ea * mp::abs(s1[l]) +
                 u * (mp::abs(t1) + mp::abs(t2) + mp::abs(t3));
      if (has_prev2) err += mp::abs(b) * e2[l] + eb * mp::abs(s2[l]);
      e0[l] = err;
    }
    finish_row(k, s0, e0, s1, e1);
    std::swap(s2, s1);
    std::swap(s1, s0);
    std::swap(e2, e1);
    std::swap(e1, e0);
  }
  double w = worst > 0 ? to_double(mp::log2(worst / u)) : 0.0;
  f.condition_log2 = std::max(0.0, w);
  return f;
}

namespace {

template <class Fn>
auto with_retries(const PrecisionContext& ctx, Fn&& fn) {
  PrecisionContext c = ctx;
  for (int attempt = 0;; ++attempt) {
    try {
      return fn(c, attempt);
    } catch (const PrecisionError& e) {
      if (attempt >= 2)
        throw PrecisionError(std::string(e.what()) + " (after 2 retries, " + std::to_string(c.mantissa_bits) +
                             " bits)");
      c = c.doubled();
    }
  }
}

}  // namespace

PartitionResult partition_exact(const ModelParams& p, const PrecisionContext& ctx, const MomentCache* cache) {
  return with_retries(ctx, [&](const PrecisionContext& c, int attempt) {
    PrecisionScope scope(c);
    auto table = moment_table(p, c, cache);
    auto f = factorize(table, c);
    PartitionResult r;
    r.params = p;
    r.log_Z_N = z_gue(p.N, c);
    r.log_E_N = f.log_det - r.log_Z_N;
    r.E_N = mp::exp(r.log_E_N);
    r.log_G_N = r.log_E_N + r.log_Z_N - Real(p.N) * p.N / 2 * mp::log(Real(p.N));
    r.h = f.norms;
    r.mantissa_bits_used = c.mantissa_bits;
    r.retries = attempt;
    return r;
  });
}

Real log_g_scaled(const ModelParams& p, const PrecisionContext& ctx, const MomentCache* cache) {
  return with_retries(ctx, [&](const PrecisionContext& c, int) {
    PrecisionScope scope(c);
    auto table = moment_table(p, static_cast<std::size_t>(2 * p.N - 1), Variables::scaled, c, cache);
    return factorize(table, c).log_det;
  });
}

Real log_g(int N, const Real& v1, const Real& v2, const PrecisionContext& ctx, const MomentCache* cache) {
  PrecisionScope scope(ctx);
  ModelParams p(N, N * mp::sqrt(v2), mp::sqrt(Real(N)) * v1);
  return partition_exact(p, ctx, cache).log_G_N;
}

Real b_n(int N, const PrecisionContext& ctx, const MomentCache* cache) {
  PrecisionScope scope(ctx);
  ModelParams p(N, 1 / mp::sqrt(Real(N)), Real(0));
  return partition_exact(p, ctx, cache).E_N;
}

TaylorCoeff taylor_coeff(int N, const Real& z, int m, const PrecisionContext& ctx, const MomentCache* cache) {
  if (m < 0 || m > 8) throw InputError("taylor_coeff: m must be in [0, 8]");
  PrecisionScope scope(ctx);
  if (!(z > 0)) throw DomainError("taylor_coeff: z must be positive");
  auto E = [&](const Real& t) { return partition_exact(ModelParams(N, z, t), ctx, cache).E_N; };
  Real e0 = E(Real(0));
  if (m == 0) return {e0, Real(0), Real(0)};
  Real h = pow2(-static_cast<long>(ctx.mantissa_bits / (2 * m + 4)));
  Real mfact(1);
  for (int k = 2; k <= m; ++k) mfact *= k;
  // m-th central difference divided by h^m, then divided by m! for the Taylor coefficient
  auto D = [&](const Real& step) {
    Real s(0), binom(1);
    for (int k = 0; k <= m; ++k) {
      Real t = (Real(m) / 2 - k) * step;
      Real v = (2 * k == m) ? e0 : E(t);
      s += (k % 2 == 0 ? binom : Real(-binom)) * v;
      binom = binom * (m - k) / (k + 1);
    }
    return s / mp::pow(step, m) / mfact;
  };
  Real d1 = D(h), d2 = D(h / 2);
  Real rich = (4 * d2 - d1) / 3;
  Real delta = mp::abs(d1 - d2);
  Real scale = std::max(Real(mp::abs(rich)), e0);
  if (delta > pow2(-static_cast<long>(ctx.mantissa_bits / 8)) * scale)
    throw PrecisionError("taylor_coeff: Richardson steps disagree; raise mantissa_bits");
  return {rich, h, delta};
}

namespace {

using Series = std::vector<Real>;  // truncated power series in t

Series ser_mul(const Series& a, const Series& b) {
  const std::size_t K = a.size();
  Series c(K, Real(0));
  for (std::size_t i = 0; i < K; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; i + j < K; ++j) c[i + j] += a[i] * b[j];
  }
  return c;
}

Series ser_div(const Series& a, const Series& b) {
  const std::size_t K = a.size();
  Series c(K);
  for (std::size_t k = 0; k < K; ++k) {
    Real s = a[k];
    for (std::size_t j = 1; j <= k; ++j) s -= b[j] * c[k - j];
    c[k] = s / b[0];
  }
  return c;
}

}  // namespace

std::vector<Real> taylor_jet(int N, const Real& z, int order, const PrecisionContext& ctx) {
  if (N < 1 || order < 0) throw InputError("taylor_jet: bad arguments");
  PrecisionScope scope(ctx);
  if (!(z > 0)) throw DomainError("taylor_jet: z must be positive");
  const int K = order + 1;
  // mu_j(z, t) = sum_k t^k/k! mu0_{j-k}(z)
  std::vector<Real> mu0;  // index n + order, n = -order .. 2N-2
  for (int n = -order; n <= 2 * N - 2; ++n) mu0.push_back(gaussian_singular_moment(n, z, ctx));
  auto mu_series = [&](int j) {
    Series s(K);
    Real inv_fact(1);
    for (int k = 0; k < K; ++k) {
      if (k > 0) inv_fact /= k;
      s[k] = inv_fact * mu0[j - k + order];
    }
    return s;
  };
  std::vector<std::vector<Series>> A(N, std::vector<Series>(N));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) A[i][j] = mu_series(i + j);
  Series det(K, Real(0));
  det[0] = 1;
  for (int c = 0; c < N; ++c) {
    if (!(A[c][c][0] > 0)) throw PositiveDefinitenessError("taylor_jet: non-positive pivot");
    det = ser_mul(det, A[c][c]);
    for (int r = c + 1; r < N; ++r) {
      Series fac = ser_div(A[r][c], A[c][c]);
      for (int j = c + 1; j < N; ++j) {
        Series prod = ser_mul(fac, A[c][j]);
        for (int k = 0; k < K; ++k) A[r][j][k] -= prod[k];
      }
    }
  }
  Real inv_z = mp::exp(-z_gue(N, ctx));
  for (auto& d : det) d *= inv_z;
  return det;
}

BerryShukla berry_shukla_moment(int N, int m, const PrecisionContext& ctx) {
  if (N < 1 || N > 6 || m < 1 || m > 2) throw InputError("berry_shukla_moment: needs 1 <= N <= 6, 1 <= m <= 2");
  PrecisionScope scope(ctx);
  const int order = 2 * m;
  // the jet loses about order*N*log2(1/z) bits to cancellation at small z
  auto integrand = [&](const Real& z) {
    double lz = std::max(0.0, -to_double(mp::log2(z)));
    unsigned extra = 64 + static_cast<unsigned>(std::ceil(2.0 * order * N * lz));
    PrecisionContext c = PrecisionContext::with_bits(ctx.mantissa_bits + extra);
    Real e;
    {
      PrecisionScope inner(c);
      e = taylor_jet(N, z, order, c)[order];
    }
    return mp::pow(z, 2 * m - 1) * e;
  };
  Real z_min = pow2(-static_cast<long>(ctx.mantissa_bits / 8));
  auto r = integrate_adaptive([&](const Real& x) { return integrand(x); }, HalfLine{z_min}, ctx);
  // integrand is bounded near 0; |int_0^z_min| <= z_min * 2|g(z_min)|
  Real head = 2 * z_min * mp::abs(integrand(z_min));
  Real prod(1);
  for (int n = m; n <= 2 * m; ++n) prod *= n;
  Real c = pow2(1 - m) * prod;
  return {c * r.value, c * (r.error_bound + head), z_min};
}

}  // namespace sgue
