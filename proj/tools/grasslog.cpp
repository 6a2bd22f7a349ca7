// grasslog: verification suites, polylogarithm evaluation, Grassmann
// homology over prime fields and the L(2, chi) demo.
//
// Exit codes: 0 pass, 1 verification failure, 2 bad input or infeasible request.

#include <chrono>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "grasslog/grasslog.hpp"
#include "json.hpp"

using nlohmann::json;
using namespace grasslog;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitBadInput = 2;

class BadInput : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Common {
  int m = 2;
  int n = 2;
  long trials = 100;
  int prec = 50;
  std::uint64_t seed = 1;
  std::string field = "q";
  std::string out;
  std::string config;
  unsigned jobs = 1;
  bool timing = false;
};

void emit(const json& report, const std::string& out) {
  const std::string text = report.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw BadInput("cannot write " + out);
  f << text;
}

json read_json_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw BadInput("cannot read " + path);
  try {
    return json::parse(f);
  } catch (const json::exception& e) {
    throw BadInput(path + ": " + e.what());
  }
}

std::vector<Configuration<ExactScalar>> configurations_from(const json& j) {
  std::vector<Configuration<ExactScalar>> out;
  if (j.is_array()) {
    for (const auto& item : j) out.push_back(configuration_from_json(item));
  } else {
    out.push_back(configuration_from_json(j));
  }
  return out;
}

// --config variants: the suite runs on the supplied configurations instead of
// random samples.
std::vector<VerificationReport> run_on_config(const std::string& suite, const SuiteOptions& o,
                                              const std::string& path) {
  const auto configs = configurations_from(read_json_file(path));
  for (const auto& c : configs)
    if (!is_general_position(c)) throw BadInput("configuration in " + path + " is not in general position");
  if (suite == "simplicial") {
    std::size_t failures = 0;
    for (const auto& c : configs) failures += simplicial_failures(c) != 0 ? 1 : 0;
    return {exact_report("simplicial identities (config)", configs.size(), failures, o.seed)};
  }
  if (suite == "symbols") {
    std::size_t failures = 0;
    for (const auto& c : configs) {
      if (c.dim() != 2 || c.size() != 4) throw BadInput("symbols --config needs tuples of 4 vectors in Q^2");
      Chain<IntegerCoefficient> w(2, ChainMode::coinvariant);
      w.add(c, 1);
      if (!km2_reduce(symbol_image(boundary(w))).is_trivial()) ++failures;
    }
    return {exact_report("symbol map kills boundaries (config)", configs.size(), failures, o.seed)};
  }
  if (suite == "five-term") {
    const auto f = builtin_grassmann_function(o.m);
    PolylogContext ctx(o.policy);
    Real worst(ctx.bits());
    for (const auto& c : configs) {
      if (c.dim() != f.m || c.size() != static_cast<std::size_t>(2 * f.m + 1)) {
        throw BadInput("five-term --config needs tuples of 2m+1 vectors in k^m with --m matching");
      }
      worst = mp::max(worst, functional_equation_residual(f, to_complex(c, ctx.bits()), ctx));
    }
    VerificationReport r;
    r.check = std::to_string(2 * f.m + 1) + "-term functional equation (" + f.name + ", config)";
    r.trials = configs.size();
    r.max_residual = format_residual(worst);
    r.tolerance = format_residual(o.policy.tolerance());
    r.pass = worst < o.policy.tolerance();
    r.seed = o.seed;
    return {r};
  }
  throw BadInput("suite '" + suite + "' does not take --config");
}

int cmd_verify(const std::string& suite, const Common& c) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), suite) == names.end()) throw BadInput("unknown suite '" + suite + "'");
  if (c.trials < 1) throw BadInput("--trials must be positive");
  if (c.m < 1 || c.n < 0) throw BadInput("need --m >= 1 and --n >= 0");
  if (c.jobs < 1) throw BadInput("--jobs must be positive");
  SuiteOptions o;
  o.m = c.m;
  o.n = c.n;
  o.trials = static_cast<std::size_t>(c.trials);
  o.policy = PrecisionPolicy(c.prec);
  o.seed = c.seed;
  o.field = FieldDescriptor::parse(c.field);
  o.jobs = c.jobs;

  const auto start = std::chrono::steady_clock::now();
  const auto reports = c.config.empty() ? run_suite(suite, o) : run_on_config(suite, o, c.config);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  bool pass = true;
  json checks = json::array();
  for (const auto& r : reports) {
    pass = pass && r.pass;
    checks.push_back(to_json_value(r));
  }
  json report = {{"schema", 1},
                 {"command", "verify"},
                 {"suite", suite},
                 {"parameters",
                  {{"m", c.m},
                   {"n", c.n},
                   {"trials", c.trials},
                   {"prec", c.prec},
                   {"seed", c.seed},
                   {"field", o.field.to_string()},
                   {"config", c.config}}},
                 {"checks", checks},
                 {"pass", pass}};
  if (c.timing) report["wall_time_seconds"] = std::to_string(seconds);
  emit(report, c.out);
  return pass ? kExitPass : kExitFail;
}

int cmd_eval(const std::string& what, int m, const std::string& x_text, int prec, const std::string& out) {
  PrecisionPolicy policy(prec);
  PolylogContext ctx(policy);
  mp::Complex x(ctx.bits());
  try {
    x = mp::Complex::parse(x_text, ctx.bits());
  } catch (const std::invalid_argument& e) {
    throw BadInput("cannot parse --x '" + x_text + "'");
  }
  json value;
  if (what == "li") {
    value = li(m, x, ctx).to_json(prec);
  } else if (what == "d1") {
    value = bw_d1(x, ctx).to_string(prec);
  } else if (what == "d2") {
    value = bw_d2(x, ctx).to_string(prec);
  } else if (what == "dm") {
    value = bw_dm(m, x, ctx).to_string(prec);
  } else {
    throw BadInput("unknown function '" + what + "'");
  }
  json report = {{"schema", 1},
                 {"command", "eval"},
                 {"function", what},
                 {"x", x.to_json(prec)},
                 {"precision_digits", prec},
                 {"tolerance", format_residual(policy.tolerance())},
                 {"value", value}};
  if (what == "li" || what == "dm") report["m"] = m;
  emit(report, out);
  return kExitPass;
}

int cmd_homology(const std::string& field_text, int m, int max_n, const std::string& out) {
  const FieldDescriptor f = FieldDescriptor::parse(field_text);
  if (!f.is_finite()) throw BadInput("homology needs --field fp:<p>");
  HomologyReport r;
  try {
    r = grassmann_homology(f, m, max_n);
  } catch (const SizeGuardExceeded& e) {
    throw BadInput(std::string("infeasible request: ") + e.what());
  }
  json report = to_json_value(r);
  report["schema"] = 1;
  report["command"] = "homology";
  report["max_n"] = max_n;
  emit(report, out);
  return r.boundary_squared_zero ? kExitPass : kExitFail;
}

int cmd_zeta_demo(long disc, int prec, bool control, const std::string& out) {
  if (disc != -3 && disc != -4) throw BadInput("unsupported discriminant " + std::to_string(disc) + " (use -3 or -4)");
  const auto r = zeta_demo(disc, PrecisionPolicy(prec), control);
  json report = to_json_value(r);
  report["schema"] = 1;
  report["command"] = "zeta-demo";
  emit(report, out);
  return r.pass ? kExitPass : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Grassmann polylogarithm toolkit"};
  app.require_subcommand(1);

  Common common;
  std::string suite;
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite, "simplicial | sign-decomposition | homotopy | five-term | cocycle | volform | symbols")
      ->required();
  verify->add_option("--m", common.m, "dimension m");
  verify->add_option("--n", common.n, "n in G^m_n, or the top degree for chain suites");
  verify->add_option("--trials", common.trials, "number of seeded trials");
  verify->add_option("--prec", common.prec, "decimal precision P (>= 20)");
  verify->add_option("--seed", common.seed, "random seed");
  verify->add_option("--field", common.field, "q | qsqrt:<d> | fp:<p>");
  verify->add_option("--out", common.out, "write the JSON report here instead of stdout");
  verify->add_option("--config", common.config, "JSON configuration(s) to check instead of random samples");
  verify->add_option("--jobs", common.jobs, "worker threads for numeric suites");
  verify->add_flag("--timing", common.timing, "include wall time in the report");

  std::string what, x_text = "0";
  int eval_m = 2, eval_prec = 50;
  std::string eval_out;
  auto* eval = app.add_subcommand("eval", "evaluate li, d1, d2 or dm");
  eval->add_option("function", what, "li | d1 | d2 | dm")->required();
  eval->add_option("--m", eval_m, "weight m for li and dm");
  eval->add_option("--x", x_text, "complex argument, e.g. \"0.5+1i\"");
  eval->add_option("--prec", eval_prec, "decimal precision P (>= 20)");
  eval->add_option("--out", eval_out, "output file");

  std::string hom_field = "fp:3", hom_out;
  int hom_m = 2, hom_max_n = 3;
  auto* homology = app.add_subcommand("homology", "Grassmann homology over a prime field");
  homology->add_option("--field", hom_field, "fp:<p>");
  homology->add_option("--m", hom_m, "dimension m");
  homology->add_option("--max-n", hom_max_n, "largest degree reported");
  homology->add_option("--out", hom_out, "output file");

  long disc = -3;
  int zeta_prec = 40;
  bool control = false;
  std::string zeta_out;
  auto* zeta = app.add_subcommand("zeta-demo", "zeta(2) L(2, chi_d) against D_2 at a root of unity");
  zeta->add_option("--disc", disc, "discriminant, -3 or -4");
  zeta->add_option("--prec", zeta_prec, "decimal precision P (>= 20)");
  zeta->add_flag("--control", control, "use e^{i pi/3} instead of e^{2 pi i/3}");
  zeta->add_option("--out", zeta_out, "output file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitBadInput;
  }

  try {
    if (verify->parsed()) return cmd_verify(suite, common);
    if (eval->parsed()) return cmd_eval(what, eval_m, x_text, eval_prec, eval_out);
    if (homology->parsed()) return cmd_homology(hom_field, hom_m, hom_max_n, hom_out);
    if (zeta->parsed()) return cmd_zeta_demo(disc, zeta_prec, control, zeta_out);
  } catch (const ResamplingExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const PrecisionExhausted& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::invalid_argument& e) {  // also FieldError, DimensionMismatch
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::domain_error& e) {  // poles, singular input, non-general position
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const std::runtime_error& e) {  // BadInput, size guards, I/O
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBadInput;
  }
  return kExitBadInput;
}
