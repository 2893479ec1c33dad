#include "cli.hpp"

#include "sgue/report.hpp"

#include <CLI11.hpp>

#include <memory>
#include <optional>
#include <ostream>

namespace sgue::cli {

namespace {

struct Options {
  unsigned prec = 0;
  std::string format = "json";
  std::string cache_dir;
  bool no_cache = false;
  bool format_given = false;

  int n = 1;
  std::string z = "1", t = "0", v2 = "1";
  int count = 0;
  bool scaled = false;
  int grid = 50;
  unsigned grid_prec = 128;
  double c1 = 1, c2 = 1;
  std::vector<int> n_list;
  int m = 0;
  long samples = 100000;
  std::uint64_t seed = 1;
  std::string suite = "all";
};

// nested objects become dotted keys, arrays get their index appended
void flatten(const json& j, const std::string& prefix, std::vector<std::string>& keys,
             std::vector<std::string>& values) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), keys, values);
  } else if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k) flatten(j[k], prefix + "." + std::to_string(k), keys, values);
  } else {
    keys.push_back(prefix);
    values.push_back(j.is_string() ? j.get<std::string>() : j.dump());
  }
}

void write_csv_row(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t k = 0; k < cells.size(); ++k) out << (k ? "," : "") << cells[k];
  out << "\n";
}

void emit(const json& j, const Options& o, std::ostream& out) {
  if (o.format == "json") {
    out << j.dump(2) << "\n";
    return;
  }
  std::vector<std::string> keys, values;
  flatten(j, "", keys, values);
  write_csv_row(out, keys);
  write_csv_row(out, values);
}

struct SuiteResult {
  bool passed = true;
  json detail;
};

SuiteResult suite_identities(const PrecisionContext& ctx, const MomentCache* cache) {
  SuiteResult r;
  r.detail = json::array();
  for (auto [N, z, t] : {std::tuple{4, "1", "0.3"}, std::tuple{6, "0.8", "0.2"}}) {
    PrecisionScope scope(ctx);
    auto rep = check_identities(ModelParams::from_strings(N, z, t), ctx, cache);
    bool ok = rep.id_v1.rel_err < 1e-5 && rep.id_v2.rel_err < 1e-5 && rep.det_residual_max < 1e-10 &&
              rep.jump_residual_max < 1e-8;
    json j = to_json(rep);
    j["passed"] = ok;
    r.detail.push_back(j);
    r.passed = r.passed && ok;
  }
  return r;
}

SuiteResult suite_gfun(const Real& v2, int grid, const PrecisionContext& ctx, const PrecisionContext& gctx) {
  PrecisionScope scope(ctx);
  auto eq = solve_branch_points(v2, ctx);
  Real aj = aj_residuals(eq).max();
  auto rep = verify_equilibrium(eq, grid, gctx);
  rep.aj_residual = aj;
  SuiteResult r;
  r.passed = rep.passed(1e-8) && aj < pow2(-static_cast<long>(ctx.mantissa_bits / 2));
  r.detail = to_json(rep);
  r.detail["passed"] = r.passed;
  return r;
}

SuiteResult suite_outer(const Real& v2, const PrecisionContext& gctx) {
  PrecisionScope scope(gctx);
  auto cd = curve_data(solve_branch_points(v2, gctx), gctx);
  SuiteResult r;
  r.detail = json::array();
  for (int N : {8, 9}) {
    for (const char* v1 : {"0", "0.2"}) {
      auto rep = verify_outer(N, real_from_string(v1), cd, 20, gctx);
      bool ok = rep.passed(1e-8, 1e-10);
      json j = to_json(rep);
      j["passed"] = ok;
      r.detail.push_back(j);
      r.passed = r.passed && ok;
    }
  }
  return r;
}

SuiteResult suite_smallv2(const PrecisionContext& ctx) {
  PrecisionScope scope(ctx);
  auto rep = small_v2_report({real_from_string("1e-3"), real_from_string("1e-6"), real_from_string("1e-9")}, ctx);
  SuiteResult r;
  r.passed = rep.monotone();
  const auto& mid = rep.rows.at(1);  // v2 = 1e-6
  r.passed = r.passed && mid.dev_K0 < 1e-2 && mid.dev_u_inf < 1e-2;
  r.detail = to_json(rep);
  r.detail["passed"] = r.passed;
  return r;
}

int dispatch(CLI::App& app, const Options& o, std::ostream& out) {
  const auto ctx = PrecisionContext::with_bits(o.prec);
  const auto gctx = PrecisionContext::with_bits(o.grid_prec);
  std::unique_ptr<MomentCache> cache_owner;
  if (!o.no_cache)
    cache_owner = std::make_unique<MomentCache>(o.cache_dir.empty() ? MomentCache::default_dir() : std::filesystem::path(o.cache_dir));
  const MomentCache* cache = cache_owner.get();
  PrecisionScope scope(ctx);
  auto params = [&] { return ModelParams::from_strings(o.n, o.z, o.t); };
  auto sub = [&](const char* name) { return app.got_subcommand(name); };

  if (sub("moments")) {
    auto p = params();
    std::size_t count = o.count > 0 ? static_cast<std::size_t>(o.count) : static_cast<std::size_t>(2 * o.n - 1);
    emit(to_json(moment_table(p, count, o.scaled ? Variables::scaled : Variables::original, ctx, cache)), o, out);
  } else if (sub("partition")) {
    emit(to_json(partition_exact(params(), ctx, cache)), o, out);
  } else if (sub("bn")) {
    if (o.n < 1) throw InputError("bn: N must be positive");
    json j = {{"N", o.n}, {"B_N", to_string(b_n(o.n, ctx, cache))}};
    emit(j, o, out);
  } else if (sub("equilibrium")) {
    auto eq = solve_branch_points(real_from_string(o.v2), ctx);
    Real aj = aj_residuals(eq).max();
    lagrange_l(eq, ctx);
    auto rep = verify_equilibrium(eq, o.grid, gctx);
    rep.aj_residual = aj;
    json j = {{"equilibrium", to_json(eq)}, {"curve", nullptr}, {"report", to_json(rep)}};
    {
      PrecisionScope gs(gctx);
      j["curve"] = to_json(curve_data(eq, gctx));
    }
    j["passed"] = rep.passed(1e-8);
    emit(j, o, out);
  } else if (sub("asymptotic")) {
    emit(to_json(predict(params(), ctx, cache, {o.c1, o.c2})), o, out);
  } else if (sub("compare")) {
    auto rows = compare_table(o.n_list, real_from_string(o.z), real_from_string(o.t), ctx, cache);
    if (o.format_given && o.format == "json") {
      json j = json::array();
      for (const auto& r : rows) j.push_back(to_json(r));
      out << j.dump(2) << "\n";
    } else {
      write_compare_csv(out, rows);
    }
  } else if (sub("taylor")) {
    Real z = real_from_string(o.z);
    json j = {{"N", o.n}, {"z", to_string(z)}, {"m", o.m}};
    j["coefficient"] = to_json(taylor_coeff(o.n, z, o.m, ctx, cache));
    if (o.m % 2 == 0) j["leading_order"] = to_string(corollary_taylor(o.n, z, o.m, ctx, cache));
    emit(j, o, out);
  } else if (sub("qmoment")) {
    json j = {{"N", o.n}, {"m", o.m}};
    j["moment"] = to_json(berry_shukla_moment(o.n, o.m, ctx));
    emit(j, o, out);
  } else if (sub("mc")) {
    auto p = params();
    json j = {{"params", to_json(p)}, {"estimate", to_json(estimate_en(p, o.samples, o.seed))}};
    emit(j, o, out);
  } else if (sub("verify")) {
    const Real v2 = real_from_string(o.v2);
    json j = json::object();
    bool all_ok = true;
    auto add = [&](const char* name, const SuiteResult& r) {
      j[name] = r.detail;
      all_ok = all_ok && r.passed;
    };
    const bool all = o.suite == "all";
    if (all || o.suite == "identities") add("identities", suite_identities(gctx, cache));
    if (all || o.suite == "gfun") add("gfun", suite_gfun(v2, o.grid, ctx, gctx));
    if (all || o.suite == "outer") add("outer", suite_outer(v2, gctx));
    if (all || o.suite == "smallv2") add("smallv2", suite_smallv2(ctx));
    j["passed"] = all_ok;
    emit(j, o, out);
    return all_ok ? ExitCode::ok : verify_failed;
  }
  return ExitCode::ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  o.prec = default_bits();
  CLI::App app{"Singularly perturbed GUE partition functions"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--prec", o.prec, "mantissa bits")->check(CLI::Range(64u, 1u << 20));
  auto* fmt = app.add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--cache-dir", o.cache_dir, "moment cache directory");
  app.add_flag("--no-cache", o.no_cache, "bypass the moment cache");

  auto ntz = [&](CLI::App* s) {
    s->add_option("--n", o.n, "matrix size")->required()->check(CLI::PositiveNumber);
    s->add_option("--z", o.z, "singular strength")->required();
    s->add_option("--t", o.t, "linear coupling")->required();
  };
  auto* moments = app.add_subcommand("moments", "moment table");
  ntz(moments);
  moments->add_option("--count", o.count, "number of moments (default 2N-1)")->check(CLI::NonNegativeNumber);
  moments->add_flag("--scaled", o.scaled, "moments of the scaled weight");
  ntz(app.add_subcommand("partition", "exact E_N, G_N, Z_N"));
  app.add_subcommand("bn", "B_N")->add_option("--n", o.n)->required()->check(CLI::PositiveNumber);
  auto* eqc = app.add_subcommand("equilibrium", "branch points, periods and g-function checks");
  eqc->add_option("--v2", o.v2)->required();
  eqc->add_option("--grid", o.grid, "points per grid")->check(CLI::Range(2, 100000));
  eqc->add_option("--grid-prec", o.grid_prec, "bits for the grid checks")->check(CLI::Range(64u, 1u << 20));
  auto* asym = app.add_subcommand("asymptotic", "large-N prediction against the exact value");
  ntz(asym);
  asym->add_option("--c1", o.c1)->check(CLI::PositiveNumber);
  asym->add_option("--c2", o.c2)->check(CLI::PositiveNumber);
  auto* cmp = app.add_subcommand("compare", "convergence table");
  cmp->add_option("--n-list", o.n_list)->required()->delimiter(',')->check(CLI::PositiveNumber);
  cmp->add_option("--z", o.z)->required();
  cmp->add_option("--t", o.t)->required();
  auto* tay = app.add_subcommand("taylor", "Taylor coefficient in t");
  tay->add_option("--n", o.n)->required()->check(CLI::PositiveNumber);
  tay->add_option("--z", o.z)->required();
  tay->add_option("--m", o.m)->required()->check(CLI::Range(0, 8));
  auto* qm = app.add_subcommand("qmoment", "moment of the ratio statistic");
  qm->add_option("--n", o.n)->required()->check(CLI::PositiveNumber);
  qm->add_option("--m", o.m)->required()->check(CLI::Range(1, 2));
  auto* mc = app.add_subcommand("mc", "Monte Carlo estimate of E_N");
  ntz(mc);
  mc->add_option("--samples", o.samples)->check(CLI::Range(1L, 1L << 40));
  mc->add_option("--seed", o.seed);
  auto* ver = app.add_subcommand("verify", "residual suites");
  ver->add_option("--suite", o.suite)->check(CLI::IsMember({"identities", "gfun", "outer", "smallv2", "all"}));
  ver->add_option("--v2", o.v2);
  ver->add_option("--grid", o.grid)->check(CLI::Range(2, 100000));
  ver->add_option("--grid-prec", o.grid_prec)->check(CLI::Range(64u, 1u << 20));

  std::vector<const char*> argv{"sgue"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? ExitCode::ok : usage;
  }
  o.format_given = fmt->count() > 0;

  try {
    return dispatch(app, o, out);
  } catch (const PrecisionError& e) {
    err << "precision: " << e.what() << "\n";
    return precision;
  } catch (const InputError& e) {
    err << "input: " << e.what() << "\n";
    return usage;
  } catch (const DomainError& e) {
    err << "domain: " << e.what() << "\n";
    return usage;
  } catch (const BracketError& e) {
    err << "domain: " << e.what() << "\n";
    return usage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return internal;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int k = 1; k < argc; ++k) args.emplace_back(argv[k]);
  return run(args, out, err);
}

}  // namespace sgue::cli
