#include "sgue/asymptotics.hpp"

#include <algorithm>
#include <ostream>

namespace sgue {

namespace mp = boost::multiprecision;

bool in_regime(int N, const Real& z, const RegimeConstants& rc) {
  Real n(N);
  return z > Real(rc.c1) / mp::sqrt(n) && z < Real(rc.c2) * mp::pow(n, Real(0.25));
}

Real theorem1_exponent(int N, const Real& z, const Real& t, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  if (!(z > 0)) throw DomainError("theorem1_factor: z must be positive");
  Real n(N), third = Real(1) / 3;
  Real z43 = mp::pow(z, 4 * third);
  Real c9 = 9 / mp::pow(Real(2), 10 * third);
  Real ct = mp::pow(n, third) / (mp::pow(Real(2), 5 * third) * z43);
  return z * z / 4 - c9 * (mp::pow(n, 2 * third) * z43 - 1) + t * t * ct;
}

Real theorem1_factor(int N, const Real& z, const Real& t, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  return mp::exp(theorem1_exponent(N, z, t, ctx));
}

namespace {

Real theta_pair(int N, const Real& a, const CurveData& cd, const PrecisionContext& ctx) {
  Real s = Real(-N) / 2 - Real(1) / 4;
  Complex p = theta(Complex(cd.u_inf + s - a), cd.Pi, ctx) * theta(Complex(cd.u_inf + s + a), cd.Pi, ctx);
  if (!(p.re > 0)) throw BranchError("theta product is not positive");
  return p.re;
}

// xi / (2 pi i), real
Real xi_over_2pii(const CurveData& cd) { return cd.xi.im / (2 * pi()); }

}  // namespace

Real theta_correction(int N, const Real& z, const Real& t, const CurveData& cd, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  (void)z;
  Real a = t * xi_over_2pii(cd) / mp::sqrt(Real(N));
  return mp::sqrt(theta_pair(N, a, cd, ctx));
}

PrecisionContext hankel_context(int N, const PrecisionContext& base) {
  PrecisionContext c = base;
  if (N > 32 && c.mantissa_bits < 1024) {
    c.mantissa_bits = 1024;
    c.rel_tol_log2 = std::min(c.rel_tol_log2, -512.0);
  }
  return c;
}

AsymptoticReport predict(const ModelParams& p, const PrecisionContext& ctx, const MomentCache* cache,
                         const RegimeConstants& rc) {
  PrecisionContext hc = hankel_context(p.N, ctx);
  PrecisionScope scope(hc);
  AsymptoticReport r;
  r.params = p;
  r.regime = rc;
  r.regime_ok = in_regime(p.N, p.z, rc);
  auto pr = partition_exact(p, hc, cache);
  r.exact = pr.E_N;
  r.mantissa_bits = pr.mantissa_bits_used;
  r.b_n = b_n(p.N, hc, cache);
  r.leading_factor = theorem1_factor(p.N, p.z, p.t, hc);
  auto eq = solve_branch_points(p.v2(), ctx);
  auto cd = curve_data(eq, ctx);
  r.theta_factor = theta_correction(p.N, p.z, p.t, cd, ctx);
  r.prediction = r.b_n * r.leading_factor * r.theta_factor;
  r.ratio = r.exact / r.prediction;
  return r;
}

Real corollary_coeff(int N, const Real& z, int m, const Real& bn, const PrecisionContext& ctx) {
  if (m < 0) throw InputError("corollary_coeff: m must be nonnegative");
  PrecisionScope scope(ctx);
  if (!(z > 0)) throw DomainError("corollary_coeff: z must be positive");
  Real third = Real(1) / 3;
  Real lead = bn * theorem1_factor(N, z, Real(0), ctx);
  Real mfact(1);
  for (int k = 2; k <= m; ++k) mfact *= k;
  Real num = mp::pow(Real(N), m * third);
  Real den = mp::pow(Real(2), 5 * m * third) * mfact * mp::pow(z, 4 * m * third);
  return lead * num / den;
}

Real corollary_coeff(int N, const Real& z, int m, const PrecisionContext& ctx, const MomentCache* cache) {
  PrecisionContext hc = hankel_context(N, ctx);
  PrecisionScope scope(hc);
  return corollary_coeff(N, z, m, b_n(N, hc, cache), hc);
}

Real corollary_taylor(int N, const Real& z, int order, const PrecisionContext& ctx, const MomentCache* cache) {
  if (order < 0 || order % 2 != 0) throw InputError("corollary_taylor: only even Taylor orders carry a leading term");
  return corollary_coeff(N, z, order / 2, ctx, cache);
}

AsymDerivatives asym_derivatives(int N, const Real& v1, const CurveData& cd, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  const auto& eq = cd.eq;
  const Real& l2 = eq.lambda2;
  const Real& l3 = eq.lambda3;
  AsymDerivatives r;
  r.regime_ok = eq.v2 >= Real(0.1) && eq.v2 <= 10;
  Real k = xi_over_2pii(cd);
  auto lth = [&](const Real& w) { return mp::log(theta_pair(N, w * k, cd, ctx)); };
  auto D = [&](const Real& h) { return (lth(v1 + h) - lth(v1 - h)) / (2 * h); };
  r.fd_step = pow2(-static_cast<long>(ctx.mantissa_bits) / 4);
  Real d1 = D(r.fd_step), d2 = D(r.fd_step / 2);
  r.theta_log_derivative = (4 * d2 - d1) / 3;
  r.fd_delta = mp::abs(d1 - d2);

  // C = 2 v1 l2 l3 / K0 * int over the upper half circle from l2 to -l2 of dp / (p^2 q(p))
  auto f = [](const Complex& p, const Complex& q) { return Complex(1) / (p * p * q); };
  Complex arc = -gap_arc_integral(f, true, cd, ctx);
  Complex C = arc * (2 * v1 * l2 * l3 / cd.K0);
  r.C = C.re;

  Complex pref = Complex(Real(0), pi() * eq.A1) / (cd.xi * (eq.v2 * cd.K0));
  Complex dv1 = pref * r.theta_log_derivative - Complex(v1 / (2 * eq.A1)) - C / (2 * l2 * l3);
  r.d_v1 = dv1.re;
  Real s = 1 / (l2 * l2) - 1 / (l3 * l3);
  r.d_v2_over_N = N * (Real(1) / 4 - eq.v2 / 32 * (s * s + 8 / (eq.A1 * eq.A1)));
  return r;
}

namespace {

bool strictly_decreasing(const std::vector<Real>& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] < v[i - 1])) return false;
  return true;
}

}  // namespace

bool SmallV2Report::monotone() const {
  return lambda_decreasing && K0_decreasing && Pi_decreasing && (u_inf_decreasing || u_inf_exact);
}

SmallV2Report small_v2_report(const std::vector<Real>& v2_list, const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  SmallV2Report rep;
  std::vector<Real> dl, dk, dp, du;
  rep.u_inf_exact = true;
  for (const Real& v2 : v2_list) {
    if (!(v2 > 0 && v2 < Real(0.1))) throw InputError("small_v2_report: v2 must lie in (0, 0.1)");
    auto eq = solve_branch_points(v2, ctx);
    auto cd = curve_data(eq, ctx);
    SmallV2Row row;
    row.v2 = v2;
    Real third = Real(1) / 3;
    Real m1 = eq.lambda1.im;
    row.lambda1_ratio = m1 / (mp::pow(Real(2), -third / 2) * mp::pow(v2, third));
    row.lambda2_ratio = eq.lambda2 / (m1 / mp::sqrt(Real(2)));
    row.lambda3_dev = mp::abs(eq.lambda3 - 2);
    row.K0_ratio = cd.K0 * eq.lambda3 / (2 * pi());
    Real lim = (mp::log(eq.lambda2) - mp::log(16 * eq.lambda3 * eq.lambda3)) / pi();  // (1/(pi i)) L = -i L / pi
    row.Pi_ratio = cd.Pi.im / -lim;
    row.u_inf = cd.u_inf;
    row.u_inf_error = cd.u_inf_error;
    row.dev_lambda = std::max(mp::abs(row.lambda1_ratio - 1), mp::abs(row.lambda2_ratio - 1));
    row.dev_K0 = mp::abs(row.K0_ratio - 1);
    row.dev_Pi = mp::abs(row.Pi_ratio - 1);
    row.dev_u_inf = mp::abs(row.u_inf - Real(1) / 4);
    if (row.dev_u_inf > row.u_inf_error + 4 * ctx.eps()) rep.u_inf_exact = false;
    dl.push_back(row.dev_lambda);
    dk.push_back(row.dev_K0);
    dp.push_back(row.dev_Pi);
    du.push_back(row.dev_u_inf);
    rep.rows.push_back(row);
  }
  rep.lambda_decreasing = strictly_decreasing(dl);
  rep.K0_decreasing = strictly_decreasing(dk);
  rep.Pi_decreasing = strictly_decreasing(dp);
  rep.u_inf_decreasing = strictly_decreasing(du);
  return rep;
}

std::vector<CompareRow> compare_table(std::vector<int> Ns, const Real& z, const Real& t, const PrecisionContext& ctx,
                                      const MomentCache* cache) {
  std::sort(Ns.begin(), Ns.end());
  std::vector<CompareRow> rows;
  for (int N : Ns) {
    auto r = predict(ModelParams(N, z, t), ctx, cache);
    PrecisionScope scope(ctx);
    rows.push_back({N, z, t, r.exact, r.prediction, r.ratio, Real(mp::abs(r.ratio - 1))});
  }
  return rows;
}

void write_compare_csv(std::ostream& os, const std::vector<CompareRow>& rows) {
  os << "N,z,t,exact,prediction,ratio,abs_ratio_minus_1\n";
  for (const auto& r : rows)
    os << r.N << ',' << to_string(r.z) << ',' << to_string(r.t) << ',' << to_string(r.exact) << ','
       << to_string(r.prediction) << ',' << to_string(r.ratio) << ',' << to_string(r.deviation) << '\n';
}

}  // namespace sgue
