#include "oracles.hpp"
#include "sgue/asymptotics.hpp"
#include "sgue/mc.hpp"
#include "sgue/rh.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

using namespace sgue;
namespace mp = boost::multiprecision;

namespace {

const PrecisionContext p512 = PrecisionContext::with_bits(512);
const PrecisionContext p128 = PrecisionContext::with_bits(128);

struct Outcome {
  bool pass = true;
  std::string detail;
  double time_limit = 0;  // seconds; 0 = none
};

std::string sci(const Real& x) { return to_string(x, 3); }
std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

ModelParams P(int N, const char* z, const char* t) { return ModelParams::from_strings(N, z, t); }

Outcome closed_forms() {
  PrecisionScope s(p512);
  Outcome o;
  Real worst(0);
  double slowest = 0;
  for (const char* z : {"0.5", "1", "2"}) {
    auto t0 = std::chrono::steady_clock::now();
    Real e1 = partition_exact(P(1, z, "0"), p512).E_N;
    Real e2 = partition_exact(P(2, z, "0"), p512).E_N;
    slowest = std::max(slowest, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / 2);
    worst = std::max({worst, oracle::rel(e1, oracle::e1(Real(z))), oracle::rel(e2, oracle::e2(Real(z)))});
  }
  o.pass = worst < 1e-20 && slowest < 1;
  o.detail = "max rel err " + sci(worst) + ", slowest " + sci(slowest) + " s";
  return o;
}

Outcome gaussian() {
  PrecisionScope s(p512);
  Real worst(0);
  for (int N = 1; N <= 30; ++N) worst = std::max(worst, mp::abs(partition_exact(P(N, "0", "0"), p512).E_N - 1));
  return {worst < 1e-25, "max |E_N(0,0) - 1| over N <= 30: " + sci(worst), 30};
}

Outcome det_product() {
  PrecisionScope s(p512);
  auto t = moment_table(P(10, "1", "0.3"), p512);
  auto f = factorize(t, p512);
  Real prod(1);
  for (const auto& h : f.norms) prod *= h;
  Real e = oracle::rel(prod, oracle::det(oracle::hankel(t.entries, 10)));
  return {e < 1e-20, "rel err " + sci(e)};
}

Outcome parity() {
  PrecisionScope s(p512);
  Real a = partition_exact(P(8, "1", "0.3"), p512).E_N, b = partition_exact(P(8, "1", "-0.3"), p512).E_N;
  Real e = mp::abs(a - b) / a;
  return {e < 1e-20, "rel diff " + sci(e)};
}

Outcome bessel_moments() {
  PrecisionScope s(p512);
  Real worst(0);
  for (const char* z : {"0.5", "2"}) {
    auto t = moment_table(P(10, z, "0"), p512);
    for (int j = 0; j <= 18; j += 2)
      worst = std::max(worst, oracle::rel(t.entries[j], oracle::even_moment(j / 2, Real(z))) / p512.rel_tol());
  }
  return {worst <= 10, "max rel err / tolerance " + sci(worst)};
}

Outcome identities() {
  Real worst(0);
  for (auto [N, z, t] : {std::tuple{4, "1", "0.3"}, std::tuple{6, "0.8", "0.2"}}) {
    PrecisionScope s(p128);
    auto rep = check_identities(P(N, z, t), p128);
    worst = std::max({worst, rep.id_v1.rel_err, rep.id_v2.rel_err});
  }
  return {worst < 1e-5, "max rel err " + sci(worst), 120};
}

Outcome equilibrium() {
  Real aj(0), jumps(0), margin(-1);
  for (const char* v2 : {"1e-3", "0.1", "1", "10"}) {
    PrecisionScope s(p512);
    auto eq = solve_branch_points(Real(v2), p512);
    aj = std::max(aj, aj_residuals(eq).max());
    auto rep = verify_equilibrium(eq, 50, p128);
    jumps = std::max({jumps, rep.support_residual, rep.outer_jump, rep.gap_jump});
    margin = std::max(margin, rep.margin_max);
  }
  return {aj < 1e-40 && jumps < 1e-8 && margin < 0,
          "aj " + sci(aj) + ", jumps " + sci(jumps) + ", max margin " + sci(margin), 60};
}

Outcome outer() {
  PrecisionScope s(p128);
  auto cd = curve_data(solve_branch_points(Real(1), p128), p128);
  Real jump(0), det(0);
  double lo = 1e9, hi = 0;
  for (int N : {8, 9})
    for (const char* v1 : {"0", "0.2"}) {
      auto rep = verify_outer(N, Real(v1), cd, 20, p128);
      jump = std::max({jump, rep.cut_jump, rep.gap_jump});
      det = std::max(det, rep.det_residual);
      lo = std::min(lo, to_double(rep.decay_ratio));
      hi = std::max(hi, to_double(rep.decay_ratio));
    }
  return {jump < 1e-8 && det < 1e-10 && lo >= 8 && hi <= 12,
          "jump " + sci(jump) + ", det " + sci(det) + ", decay ratio in [" + sci(lo) + ", " + sci(hi) + "]"};
}

Outcome theorem_trend() {
  PrecisionScope s(p512);
  auto rows = compare_table({16, 32, 64}, Real(1), Real("0.5"), p512);
  std::ostringstream d;
  bool monotone = true;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    d << (k ? ", " : "") << "N=" << rows[k].N << " |r-1|=" << sci(rows[k].deviation);
    if (k && rows[k].deviation > rows[k - 1].deviation) monotone = false;
  }
  bool final_ok = rows.back().deviation < 0.25;
  d << (monotone ? "" : "; not non-increasing") << (final_ok ? "" : "; final >= 0.25");
  return {monotone && final_ok, d.str(), 900};
}

Outcome corollary_trend() {
  PrecisionScope s(p512);
  Real z(1);
  auto dev = [&](int N) {
    Real exact = taylor_coeff(N, z, 2, p512).value / taylor_coeff(N, z, 0, p512).value;
    Real lead = mp::pow(Real(N), Real(1) / 3) / mp::pow(Real(2), Real(5) / 3);
    return Real(mp::abs(exact / lead - 1));
  };
  Real d16 = dev(16), d32 = dev(32);
  return {d16 < 0.25 && d32 < d16, "N=16 " + sci(d16) + ", N=32 " + sci(d32)};
}

Outcome small_v2() {
  PrecisionScope s(p128);
  auto rep = small_v2_report({Real("1e-3"), Real("1e-6"), Real("1e-9")}, p128);
  const auto& mid = rep.rows.at(1);
  bool ok = rep.monotone() && mid.dev_K0 < 1e-2 && mid.dev_u_inf < 1e-2;
  std::string d = std::string("lambda ") + (rep.lambda_decreasing ? "dec" : "NOT dec") + ", K0 " +
                  (rep.K0_decreasing ? "dec" : "NOT dec") + ", Pi " + (rep.Pi_decreasing ? "dec" : "NOT dec") +
                  ", u_inf " + (rep.u_inf_decreasing ? "dec" : rep.u_inf_exact ? "exact" : "NOT dec") +
                  "; at 1e-6 K0 dev " + sci(mid.dev_K0) + ", u_inf dev " + sci(mid.dev_u_inf);
  return {ok, d};
}

Outcome monte_carlo() {
  PrecisionScope s(p512);
  Outcome o{true, "", 60};
  std::ostringstream d;
  for (auto [N, z, t] : {std::tuple{1, "1", "0"}, std::tuple{2, "1", "0"}, std::tuple{5, "1", "0.5"}}) {
    auto p = P(N, z, t);
    double exact = to_double(partition_exact(p, p512).E_N);
    auto r = estimate_en(p, 100000, 20240611);
    double k = std::abs(r.mean - exact) / r.std_error;
    d << (N > 1 ? ", " : "") << "N=" << N << " " << sci(k) << " sigma";
    o.pass = o.pass && k < 3;
    auto again = estimate_en(p, 100000, 20240611);
    if (again.mean != r.mean || again.std_error != r.std_error) {
      o.pass = false;
      d << " (not reproducible)";
    }
  }
  o.detail = d.str();
  return o;
}

Outcome berry_shukla() {
  auto c = PrecisionContext::with_bits(256);
  PrecisionScope s(c);
  Real e11 = mp::abs(berry_shukla_moment(1, 1, c).value - 1), e12 = mp::abs(berry_shukla_moment(1, 2, c).value - 1);
  return {e11 < 1e-6 && e12 < 1e-6, "|M11-1| " + sci(e11) + ", |M12-1| " + sci(e12)};
}

Outcome rh_structure() {
  PrecisionScope s(p128);
  Real det(0), jump(0), kernel(0);
  for (int N : {1, 2, 3, 4}) {
    RHSolution rh(P(N, "1", "0.3"), p128);
    for (int k = 0; k < 8; ++k) {
      Complex y = polar(Real("0.5") + Real(k) / 3, 2 * pi() * (Real(k) + Real("0.3")) / 8);
      if (mp::abs(y.im) < Real(RHSolution::kDirectIm)) y.im = y.im < 0 ? Real("-0.1") : Real("0.1");
      det = std::max(det, abs(rh.Y(y).det() - Complex(1)));
    }
    for (const char* xs : {"0.5", "-0.8", "1.7"}) {
      Real x(xs);
      Matrix2 J = Matrix2::identity();
      J(0, 1) = Complex(rh.weight(x));
      jump = std::max(jump, (rh.Y(Complex(x), Side::plus) - rh.Y(Complex(x), Side::minus) * J).max_abs());
    }
    const char* grid[] = {"-1.4", "0.35", "1.2"};
    for (const char* x : grid)
      for (const char* y : grid) {
        auto kv = std::string(x) == y ? kernel_diagonal(Real(x), rh) : kernel_value(Real(x), Real(y), rh);
        kernel = std::max(kernel, kv.difference);
      }
  }
  return {det < 1e-10 && jump < 1e-8 && kernel < 1e-8, "det " + sci(det) + ", jump " + sci(jump) + ", kernel " + sci(kernel)};
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"closed forms E_1, E_2", closed_forms},
      {"Gaussian limit", gaussian},
      {"determinant = product of norms", det_product},
      {"parity in t", parity},
      {"even moments vs Bessel form", bessel_moments},
      {"differential identities", identities},
      {"equilibrium measure", equilibrium},
      {"outer parametrix", outer},
      {"large-N ratio trend", theorem_trend},
      {"Taylor ratio trend", corollary_trend},
      {"small-v2 laws", small_v2},
      {"Monte Carlo", monte_carlo},
      {"ratio statistic moments", berry_shukla},
      {"RH structure", rh_structure},
  };
  int failed = 0, k = 0;
  for (const auto& [name, fn] : criteria) {
    ++k;
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.time_limit > 0 && secs > o.time_limit) {
      o.pass = false;
      o.detail += "; over time limit";
    }
    failed += !o.pass;
    std::printf("%s criterion %2d: %s (%.1f s) %s\n", o.pass ? "PASS" : "FAIL", k, name, secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %d criteria passed\n", k - failed, k);
  return failed ? 1 : 0;
}
