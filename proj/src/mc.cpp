#include "sgue/mc.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <random>

namespace sgue {

namespace {

constexpr long kChunk = 1024;

struct Moments {
  long n = 0;
  double mean = 0;
  double m2 = 0;  // sum of squared deviations
};

Moments merge(const Moments& a, const Moments& b) {
  if (a.n == 0) return b;
  if (b.n == 0) return a;
  Moments r;
  r.n = a.n + b.n;
  double delta = b.mean - a.mean;
  r.mean = a.mean + delta * static_cast<double>(b.n) / static_cast<double>(r.n);
  r.m2 = a.m2 + b.m2 + delta * delta * static_cast<double>(a.n) * static_cast<double>(b.n) / static_cast<double>(r.n);
  return r;
}

Moments reduce(std::vector<Moments> v) {
  if (v.empty()) return {};
  while (v.size() > 1) {
    std::vector<Moments> next;
    for (std::size_t i = 0; i + 1 < v.size(); i += 2) next.push_back(merge(v[i], v[i + 1]));
    if (v.size() % 2) next.push_back(v.back());
    v.swap(next);
  }
  return v.front();
}

}  // namespace

SpectrumSample sample_spectrum(int N, std::uint64_t seed, std::uint64_t index) {
  if (N < 1) throw InputError("sample_spectrum: N must be positive");
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd diag(N);
  Eigen::VectorXd sub(std::max(N - 1, 0));
  for (int i = 0; i < N; ++i) diag(i) = normal(rng);
  for (int k = 1; k < N; ++k) {
    std::chi_squared_distribution<double> chi2(2.0 * k);
    sub(N - 1 - k) = std::sqrt(chi2(rng) / 2.0);
  }
  SpectrumSample s;
  s.N = N;
  s.stream = index;
  if (N == 1) {
    s.eigenvalues = {diag(0)};
    return s;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
  es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  s.eigenvalues.assign(es.eigenvalues().data(), es.eigenvalues().data() + N);
  std::sort(s.eigenvalues.begin(), s.eigenvalues.end());
  return s;
}

EstimateResult estimate_statistic(int N, long num_samples, std::uint64_t seed, const Statistic& stat) {
  if (num_samples < 1) throw InputError("estimate: need at least one sample");
  std::vector<Moments> chunks;
  for (long start = 0; start < num_samples; start += kChunk) {
    long end = std::min(num_samples, start + kChunk);
    Moments m;
    for (long i = start; i < end; ++i) {
      double v = stat(sample_spectrum(N, seed, static_cast<std::uint64_t>(i)).eigenvalues);
      ++m.n;
      double d = v - m.mean;
      m.mean += d / static_cast<double>(m.n);
      m.m2 += d * (v - m.mean);
    }
    chunks.push_back(m);
  }
  Moments all = reduce(std::move(chunks));
  EstimateResult r;
  r.samples = all.n;
  r.mean = all.mean;
  r.seed = seed;
  r.std_error = all.n > 1 ? std::sqrt(all.m2 / static_cast<double>(all.n - 1) / static_cast<double>(all.n)) : 0.0;
  return r;
}

EstimateResult estimate_en(const ModelParams& p, long num_samples, std::uint64_t seed) {
  if (num_samples < 1000) throw InputError("estimate_en: need at least 1000 samples");
  if (!(p.z > 0)) throw DomainError("estimate_en: z must be positive");
  const double z = to_double(p.z), t = to_double(p.t);
  const double z2 = z * z;
  // exp(-z^2/(2x^2) + t/x) <= exp(t^2/(2 z^2)) for every x
  const double per_eig = t * t / (2 * z2);
  auto stat = [&](const std::vector<double>& x) {
    double e = 0;
    for (double xi : x) {
      double inv = 1.0 / xi;
      double term = -z2 * inv * inv / 2 + t * inv;
      if (term > per_eig * (1 + 1e-12) + 1e-300) throw Error("estimate_en: weight bound violated");
      e += term;
    }
    return std::exp(e);
  };
  return estimate_statistic(p.N, num_samples, seed, stat);
}

EstimateResult estimate_q_moment(int N, int m, long num_samples, std::uint64_t seed) {
  if (m < 1) throw InputError("estimate_q_moment: m must be positive");
  auto stat = [m](const std::vector<double>& x) {
    double s1 = 0, s2 = 0;
    for (double xi : x) {
      s1 += 1 / xi;
      s2 += 1 / (xi * xi);
    }
    return std::pow(s1 * s1 / s2, m);
  };
  return estimate_statistic(N, num_samples, seed, stat);
}

}  // namespace sgue
