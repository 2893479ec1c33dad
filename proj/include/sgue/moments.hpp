#pragma once

#include "sgue/precision.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace sgue {

struct ModelParams {
  int N = 1;
  Real z;
  Real t;

  ModelParams() = default;
  ModelParams(int n, Real z_, Real t_);
  static ModelParams from_strings(int n, const std::string& z, const std::string& t);

  Real v1() const;  // t / sqrt(N)
  Real v2() const;  // (z / N)^2
};

// exp(-alpha/x^2 + beta/x - gamma x^2)
struct WeightShape {
  Real alpha, beta, gamma;

  static WeightShape original(const ModelParams& p);  // w(x)
  static WeightShape scaled(const ModelParams& p);    // w_N(y) = w(sqrt(N) y)
  Real exponent(const Real& x) const;
  Real value(const Real& x) const;
};

enum class Variables { original, scaled };

struct MomentTable {
  ModelParams params;
  Variables variables = Variables::original;
  unsigned mantissa_bits = 0;
  std::vector<Real> entries;
  std::vector<Real> error_bounds;
};

struct MomentValue {
  Real value;
  Real error_bound;
};

class MomentCache {
 public:
  explicit MomentCache(std::filesystem::path dir);
  static std::filesystem::path default_dir();  // $SGUE_CACHE_DIR or ./.sgue-cache

  std::optional<MomentTable> load(const ModelParams& p, Variables v, std::size_t count, unsigned bits) const;
  void store(const MomentTable& t) const;
  std::filesystem::path path_for(const ModelParams& p, Variables v, std::size_t count, unsigned bits) const;

 private:
  std::filesystem::path dir_;
};

Real weight_value(const Real& x, const ModelParams& p);

MomentValue moment(int j, const ModelParams& p, const PrecisionContext& ctx);

// mu_0..mu_{2N-2}
MomentTable moment_table(const ModelParams& p, const PrecisionContext& ctx, const MomentCache* cache = nullptr);
// mu_0..mu_{count-1} of w (original) or w_N (scaled)
MomentTable moment_table(const ModelParams& p, std::size_t count, Variables v, const PrecisionContext& ctx,
                         const MomentCache* cache = nullptr);

// int x^n exp(-z^2/(2x^2) - x^2/2) dx over R, any integer n, z > 0; Bessel closed form
Real gaussian_singular_moment(int n, const Real& z, const PrecisionContext& ctx);
// mu_j(z,t) = sum_k t^k/k! mu^{(0)}_{j-k}(z), summed until terms drop below working precision
Real moment_series(int j, const Real& z, const Real& t, const PrecisionContext& ctx);

}  // namespace sgue
