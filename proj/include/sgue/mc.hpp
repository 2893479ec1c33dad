#pragma once

#include "sgue/moments.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace sgue {

struct SpectrumSample {
  int N = 0;
  std::vector<double> eigenvalues;  // ascending
  std::uint64_t stream = 0;
};

struct EstimateResult {
  double mean = 0;
  double std_error = 0;
  long samples = 0;
  long rejected = 0;
  std::uint64_t seed = 0;
};

// GUE eigenvalues with density prop. to exp(-sum x^2/2) prod |x_j - x_k|^2, from the
// beta = 2 tridiagonal model; (seed, index) fully determines the sample
SpectrumSample sample_spectrum(int N, std::uint64_t seed, std::uint64_t index);

using Statistic = std::function<double(const std::vector<double>&)>;

// mean and standard error of stat over samples 0..num_samples-1; chunk sums are combined
// pairwise in a fixed order
EstimateResult estimate_statistic(int N, long num_samples, std::uint64_t seed, const Statistic& stat);

// prod_j exp(-z^2/(2 x_j^2) + t/x_j)
EstimateResult estimate_en(const ModelParams& p, long num_samples, std::uint64_t seed);

// Q = (sum 1/x)^2 / sum 1/x^2, E[Q^m]
EstimateResult estimate_q_moment(int N, int m, long num_samples, std::uint64_t seed);

}  // namespace sgue
