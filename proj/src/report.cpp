#include "sgue/report.hpp"

#include <iomanip>
#include <sstream>

namespace sgue {

namespace {

std::string s(const Real& x) { return to_string(x); }

std::string s(double x) {
  std::ostringstream os;
  os << std::setprecision(17) << x;
  return os.str();
}

}  // namespace

std::string complex_to_string(const Complex& z) {
  std::string im = to_string(z.im);
  if (im.front() != '-') im = "+" + im;
  return to_string(z.re) + im + "i";
}

Complex complex_from_string(const std::string& str) {
  if (str.empty() || str.back() != 'i') throw InputError("complex value must end in 'i': " + str);
  // split at the last sign that is not part of an exponent
  std::size_t cut = std::string::npos;
  for (std::size_t k = str.size() - 1; k > 0; --k) {
    char c = str[k];
    if ((c == '+' || c == '-') && str[k - 1] != 'e' && str[k - 1] != 'E') {
      cut = k;
      break;
    }
  }
  if (cut == std::string::npos) throw InputError("malformed complex value: " + str);
  return {real_from_string(str.substr(0, cut)), real_from_string(str.substr(cut, str.size() - cut - 1))};
}

json to_json(const ModelParams& p) { return {{"N", p.N}, {"z", s(p.z)}, {"t", s(p.t)}}; }

json to_json(const MomentTable& t) {
  json e = json::array(), b = json::array();
  for (const auto& v : t.entries) e.push_back(s(v));
  for (const auto& v : t.error_bounds) b.push_back(s(v));
  return {{"params", to_json(t.params)},
          {"variables", t.variables == Variables::scaled ? "scaled" : "original"},
          {"mantissa_bits", t.mantissa_bits},
          {"entries", e},
          {"error_bounds", b}};
}

json to_json(const PartitionResult& r) {
  json h = json::array();
  for (const auto& v : r.h) h.push_back(s(v));
  return {{"params", to_json(r.params)}, {"E_N", s(r.E_N)},     {"log_E_N", s(r.log_E_N)},
          {"log_G_N", s(r.log_G_N)},    {"log_Z_N", s(r.log_Z_N)}, {"h", h},
          {"mantissa_bits", r.mantissa_bits_used}, {"retries", r.retries}};
}

json to_json(const EquilibriumData& eq) {
  json j = {{"v2", s(eq.v2)},
            {"A", {s(eq.A1), s(eq.A2), s(eq.A3)}},
            {"lambda", {complex_to_string(eq.lambda1), s(eq.lambda2), s(eq.lambda3)}}};
  j["l"] = eq.l ? json(s(*eq.l)) : json(nullptr);
  j["mantissa_bits"] = eq.mantissa_bits;
  return j;
}

json to_json(const EquilibriumReport& r) {
  return {{"v2", s(r.v2)},
          {"lambda", {complex_to_string(r.lambda1), s(r.lambda2), s(r.lambda3)}},
          {"l", s(r.l)},
          {"residuals",
           {{"aj", s(r.aj_residual)},
            {"support", s(r.support_residual)},
            {"outer_jump", s(r.outer_jump)},
            {"gap_jump", s(r.gap_jump)},
            {"residue_infinity", s(r.residue_infinity)},
            {"residue_zero", s(r.residue_zero)}}},
          {"margins", {{"max", s(r.margin_max)}}},
          {"grid_points", r.grid_points}};
}

json to_json(const CurveData& cd) {
  return {{"v2", s(cd.eq.v2)},
          {"K0", s(cd.K0)},
          {"xi", complex_to_string(cd.xi)},
          {"Pi", complex_to_string(cd.Pi)},
          {"u_inf", s(cd.u_inf)},
          {"d", s(cd.d)}};
}

json to_json(const OuterReport& r) {
  return {{"N", r.N},
          {"v1", s(r.v1)},
          {"v2", s(r.v2)},
          {"residuals", {{"cut_jump", s(r.cut_jump)}, {"gap_jump", s(r.gap_jump)}, {"det", s(r.det_residual)}}},
          {"infinity", {{"R1e3", s(r.infinity_1e3)}, {"R1e4", s(r.infinity_1e4)}, {"decay_ratio", s(r.decay_ratio)}}},
          {"grid_points", r.grid_points}};
}

json to_json(const AsymptoticReport& r) {
  return {{"params", to_json(r.params)},
          {"exact", s(r.exact)},
          {"b_n", s(r.b_n)},
          {"leading_factor", s(r.leading_factor)},
          {"theta_factor", s(r.theta_factor)},
          {"prediction", s(r.prediction)},
          {"ratio", s(r.ratio)},
          {"regime_ok", r.regime_ok},
          {"c1", r.regime.c1},
          {"c2", r.regime.c2},
          {"mantissa_bits", r.mantissa_bits}};
}

json to_json(const AsymDerivatives& d) {
  return {{"d_log_G_d_v1", s(d.d_v1)},
          {"d_log_G_d_v2_over_N", s(d.d_v2_over_N)},
          {"theta_log_derivative", s(d.theta_log_derivative)},
          {"C", s(d.C)},
          {"fd_step", s(d.fd_step)},
          {"fd_delta", s(d.fd_delta)},
          {"regime_ok", d.regime_ok}};
}

json to_json(const SmallV2Report& r) {
  json rows = json::array();
  for (const auto& x : r.rows)
    rows.push_back({{"v2", s(x.v2)},
                    {"lambda1_ratio", s(x.lambda1_ratio)},
                    {"lambda2_ratio", s(x.lambda2_ratio)},
                    {"lambda3_dev", s(x.lambda3_dev)},
                    {"K0_ratio", s(x.K0_ratio)},
                    {"Pi_ratio", s(x.Pi_ratio)},
                    {"u_inf", s(x.u_inf)},
                    {"u_inf_error", s(x.u_inf_error)},
                    {"deviations",
                     {{"lambda", s(x.dev_lambda)}, {"K0", s(x.dev_K0)}, {"Pi", s(x.dev_Pi)}, {"u_inf", s(x.dev_u_inf)}}}});
  return {{"rows", rows},
          {"decreasing",
           {{"lambda", r.lambda_decreasing},
            {"K0", r.K0_decreasing},
            {"Pi", r.Pi_decreasing},
            {"u_inf", r.u_inf_decreasing},
            {"u_inf_exact", r.u_inf_exact}}},
          {"monotone", r.monotone()}};
}

json to_json(const CompareRow& r) {
  return {{"N", r.N},         {"z", s(r.z)},         {"t", s(r.t)},
          {"exact", s(r.exact)}, {"prediction", s(r.prediction)}, {"ratio", s(r.ratio)},
          {"abs_ratio_minus_1", s(r.deviation)}};
}

json to_json(const RHCheckReport& r) {
  auto id = [](const IdentityCheck& c) {
    return json{{"contour", s(c.contour)}, {"finite_diff", s(c.finite_diff)}, {"rel_err", s(c.rel_err)}};
  };
  return {{"params", to_json(r.params)},
          {"radius", s(r.radius)},
          {"jump_residual_max", s(r.jump_residual_max)},
          {"det_residual_max", s(r.det_residual_max)},
          {"id_v1", id(r.id_v1)},
          {"id_v2", id(r.id_v2)}};
}

json to_json(const EstimateResult& r) {
  return {{"mean", s(r.mean)}, {"std_error", s(r.std_error)}, {"samples", r.samples}, {"rejected", r.rejected},
          {"seed", r.seed}};
}

json to_json(const TaylorCoeff& c) {
  return {{"value", s(c.value)}, {"step", s(c.step)}, {"richardson_delta", s(c.richardson_delta)}};
}

json to_json(const BerryShukla& b) {
  return {{"value", s(b.value)}, {"error_bound", s(b.error_bound)}, {"z_min", s(b.z_min)}};
}

}  // namespace sgue
