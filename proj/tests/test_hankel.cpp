#include "oracles.hpp"
#include "sgue/hankel.hpp"
#include "sgue/mc.hpp"
#include "sgue/quadrature.hpp"

#include <doctest.h>

using namespace sgue;
namespace mp = boost::multiprecision;

namespace {

const PrecisionContext ctx = PrecisionContext::with_bits(512);

ModelParams P(int N, const char* z, const char* t) {
  PrecisionScope s(ctx);
  return ModelParams::from_strings(N, z, t);
}

Real E(int N, const char* z, const char* t) { return partition_exact(P(N, z, t), ctx).E_N; }

}  // namespace

TEST_CASE("log Z_N") {
  PrecisionScope s(ctx);
  CHECK(mp::abs(z_gue(1, ctx) - mp::log(mp::sqrt(2 * pi()))) < pow2(-500));
  CHECK(mp::abs(z_gue(2, ctx) - mp::log(2 * pi())) < pow2(-500));
  CHECK(mp::abs(z_gue(3, ctx) - mp::log(2 * mp::pow(2 * pi(), Real(3) / 2))) < pow2(-500));
  CHECK(mp::abs(z_gue(12, ctx) - oracle::log_z_gue(12)) < pow2(-490));
}

TEST_CASE("factorization examples") {
  PrecisionScope s(ctx);
  auto f = factorize(moment_table(P(2, "1", "0"), ctx), ctx);
  REQUIRE(f.size() == 2);
  CHECK(mp::abs(f.norms[0] - Real("0.92213700")) < 1e-8);
  CHECK(mp::abs(f.norms[1] - Real("1.84427401")) < 1e-8);
  auto g = factorize(moment_table(P(3, "0", "0"), ctx), ctx);
  Real r2pi = mp::sqrt(2 * pi());
  CHECK(oracle::rel(g.norms[0], r2pi) < pow2(-480));
  CHECK(oracle::rel(g.norms[1], r2pi) < pow2(-480));
  CHECK(oracle::rel(g.norms[2], 2 * r2pi) < pow2(-480));
  // Hermite recurrence: a_j = 0, b_j = j
  auto h = factorize(moment_table(P(6, "0", "0"), 12, Variables::original, ctx), ctx);
  for (int j = 1; j < 6; ++j) CHECK(mp::abs(h.beta[j] - j) < pow2(-470));
  for (const auto& a : h.alpha) CHECK(mp::abs(a) < pow2(-470));
}

TEST_CASE("precision loss is detected") {
  auto low = PrecisionContext::with_bits(96);
  PrecisionScope s(low);
  auto t = moment_table(ModelParams(40, Real(1), Real(0)), low);
  CHECK_THROWS_AS(factorize(t, low), PrecisionError);
}

TEST_CASE("partition examples") {
  PrecisionScope s(ctx);
  CHECK(mp::abs(E(1, "1", "0") - Real("0.36787944")) < 1e-8);
  CHECK(mp::abs(E(2, "1", "0") - Real("0.27067057")) < 1e-8);
  CHECK(mp::abs(E(5, "0", "0") - 1) < pow2(-400));
  for (const char* z : {"0.5", "1", "2"}) {
    CHECK(oracle::rel(E(1, z, "0"), oracle::e1(Real(z))) < 1e-20);
    CHECK(oracle::rel(E(2, z, "0"), oracle::e2(Real(z))) < 1e-20);
  }
}

TEST_CASE("log G_N routes agree") {
  PrecisionScope s(ctx);
  auto p = P(6, "0.8", "0.2");
  auto r = partition_exact(p, ctx);
  Real via_e = r.log_E_N + r.log_Z_N - Real(36) / 2 * mp::log(Real(6));
  CHECK(mp::abs(r.log_G_N - via_e) < pow2(-400));
  CHECK(mp::abs(log_g_scaled(p, ctx) - r.log_G_N) < pow2(-400));
  CHECK(mp::abs(log_g(6, p.v1(), p.v2(), ctx) - r.log_G_N) < pow2(-400));
}

TEST_CASE("determinant equals the product of norms") {
  PrecisionScope s(ctx);
  auto p = P(10, "1", "0.3");
  auto t = moment_table(p, ctx);
  auto f = factorize(t, ctx);
  Real d = oracle::det(oracle::hankel(t.entries, 10));
  Real prod(1);
  for (const auto& h : f.norms) prod *= h;
  CHECK(oracle::rel(prod, d) < 10 * ctx.rel_tol());
  CHECK(oracle::rel(prod, d) < 1e-20);
  CHECK(mp::abs(mp::log(prod) - f.log_det) < pow2(-400));
}

TEST_CASE("parity in t") {
  PrecisionScope s(ctx);
  for (int N : {2, 5, 8}) {
    Real a = E(N, "1", "0.3"), b = E(N, "1", "-0.3");
    CHECK(mp::abs(a - b) / a < 1e-20);
  }
}

TEST_CASE("E_N(z, 0) lies in (0, 1) and decreases in z") {
  PrecisionScope s(ctx);
  for (int N : {1, 3, 8}) {
    Real prev(1);
    for (const char* z : {"0.25", "0.5", "1", "2"}) {
      Real e = E(N, z, "0");
      CHECK(e > 0);
      CHECK(e < prev);
      prev = e;
    }
  }
}

TEST_CASE("recurrence polynomials are orthogonal") {
  PrecisionScope s(ctx);
  auto p = P(5, "1", "0.3");
  auto f = factorize(moment_table(p, ctx), ctx);
  auto c = PrecisionContext::with_bits(256);
  PrecisionScope sc(c);
  for (int j = 0; j <= 4; ++j) {
    for (int k = j; k <= 4; ++k) {
      // both half-lines, folded onto [0, inf)
      auto g = [&](const Real& x) {
        if (x == 0) return Real(0);
        auto pp = f.eval_polys(x, 4), pm = f.eval_polys(-x, 4);
        return pp[j] * pp[k] * weight_value(x, p) + pm[j] * pm[k] * weight_value(-x, p);
      };
      Real v = integrate_adaptive(g, HalfLine{Real(0)}, c).value;
      Real expect = j == k ? f.norms[j] : Real(0);
      CHECK(mp::abs(v - expect) < pow2(-120) * f.norms[k]);
    }
  }
}

TEST_CASE("B_N") {
  PrecisionScope s(ctx);
  CHECK(oracle::rel(b_n(1, ctx), mp::exp(Real(-1))) < pow2(-480));
  Real b4 = b_n(4, ctx);
  CHECK(b4 > 0);
  CHECK(b4 < 1);
  CHECK(oracle::rel(b4, E(4, "0.5", "0")) < pow2(-480));
  CHECK(oracle::rel(b_n(2, ctx), oracle::e2(1 / mp::sqrt(Real(2)))) < pow2(-480));
  // not monotone in N: 0.3679, 0.4150, 0.3842, 0.3676 for N = 1, 2, 4, 8
  for (int N : {4, 8}) {
    auto t = moment_table(ModelParams(N, 1 / mp::sqrt(Real(N)), Real(0)), ctx);
    Real det = oracle::det(oracle::hankel(t.entries, N));
    CHECK(oracle::rel(b_n(N, ctx), det / mp::exp(oracle::log_z_gue(N))) < 1e-20);
  }
  CHECK(b_n(2, ctx) > b_n(4, ctx));
}

TEST_CASE("Taylor coefficients in t") {
  PrecisionScope s(ctx);
  Real one(1);
  CHECK(mp::abs(taylor_coeff(1, one, 1, ctx).value) < pow2(-100));
  CHECK(oracle::rel(taylor_coeff(1, one, 0, ctx).value, mp::exp(Real(-1))) < pow2(-480));
  auto c2 = taylor_coeff(1, one, 2, ctx);
  CHECK(oracle::rel(c2.value, oracle::e1_t2(one)) < pow2(-100));
  // independent double-precision quadrature of the t^2 integrand
  double q = 2 * oracle::simpson(
                     [](double x) {
                       return x == 0 ? 0.0 : std::exp(-1 / (2 * x * x) - x * x / 2) / (2 * x * x) / std::sqrt(2 * M_PI);
                     },
                     0, 40, 40000);
  CHECK(std::abs(to_double(c2.value) - q) < 1e-10);
  CHECK(c2.richardson_delta < pow2(-100));
  CHECK_THROWS_AS(taylor_coeff(1, one, 9, ctx), InputError);
  CHECK_THROWS_AS(taylor_coeff(1, Real(0), 2, ctx), DomainError);
}

TEST_CASE("power series jet matches finite differences") {
  PrecisionScope s(ctx);
  Real z("0.7");
  auto jet = taylor_jet(3, z, 4, ctx);
  REQUIRE(jet.size() == 5);
  CHECK(oracle::rel(jet[0], E(3, "0.7", "0")) < pow2(-400));
  CHECK(mp::abs(jet[1]) < pow2(-400));
  CHECK(oracle::rel(jet[2], taylor_coeff(3, z, 2, ctx).value) < pow2(-100));
  CHECK(oracle::rel(jet[4], taylor_coeff(3, z, 4, ctx).value) < pow2(-60));
}

TEST_CASE("ratio statistic moments") {
  auto c = PrecisionContext::with_bits(256);
  PrecisionScope s(c);
  auto m11 = berry_shukla_moment(1, 1, c);
  auto m12 = berry_shukla_moment(1, 2, c);
  CHECK(mp::abs(m11.value - 1) < 1e-6);
  CHECK(mp::abs(m12.value - 1) < 1e-6);
  CHECK(m11.error_bound < 1e-6);
  auto m21 = berry_shukla_moment(2, 1, c);
  CHECK(m21.value > 0);
  auto mc = estimate_q_moment(2, 1, 100000, 7);
  CHECK(std::abs(to_double(m21.value) - mc.mean) < 3 * mc.std_error);
  CHECK_THROWS_AS(berry_shukla_moment(7, 1, c), InputError);
  CHECK_THROWS_AS(berry_shukla_moment(2, 3, c), InputError);
}
