#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace sgue {

using Real = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<0>,
                                           boost::multiprecision::et_off>;

// error hierarchy; every module throws one of these
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DomainError : Error {
  using Error::Error;
};
struct InputError : Error {
  using Error::Error;
};
struct BracketError : Error {
  using Error::Error;
};
struct PrecisionError : Error {
  using Error::Error;
};
struct BranchError : Error {
  using Error::Error;
};
struct SingularPointError : Error {
  using Error::Error;
};
struct ConvergenceError : Error {
  ConvergenceError(const std::string& what, double partial, double err)
      : Error(what), partial_estimate(partial), partial_error(err) {}
  double partial_estimate;
  double partial_error;
};

struct PrecisionContext {
  unsigned mantissa_bits = 512;
  double rel_tol_log2 = -256;  // rel_tol = 2^rel_tol_log2
  int max_quad_depth = 12;

  static PrecisionContext with_bits(unsigned bits);
  PrecisionContext doubled() const { return with_bits(mantissa_bits * 2); }
  Real rel_tol() const;
  Real eps() const;  // 2^-mantissa_bits
  void validate() const;
};

unsigned default_bits();  // SGUE_DEFAULT_PREC or 512

// sets the working precision for Real temporaries in the enclosing scope
class PrecisionScope {
 public:
  explicit PrecisionScope(unsigned bits);
  explicit PrecisionScope(const PrecisionContext& ctx) : PrecisionScope(ctx.mantissa_bits) {}
  ~PrecisionScope();
  PrecisionScope(const PrecisionScope&) = delete;
  PrecisionScope& operator=(const PrecisionScope&) = delete;

 private:
  unsigned saved_digits_;
};

unsigned digits10_for_bits(unsigned bits);

Real pi();
Real ln2();
Real real_from_string(const std::string& s);
std::string to_string(const Real& x);               // full working precision
std::string to_string(const Real& x, int digits);
inline double to_double(const Real& x) { return x.convert_to<double>(); }
bool is_finite(const Real& x);
Real pow2(long e);

}  // namespace sgue
