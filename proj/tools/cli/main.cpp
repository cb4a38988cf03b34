#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "config.hpp"
#include "output.hpp"
#include "silico/acceptance.hpp"
#include "silico/asymptotics.hpp"
#include "silico/dynamics.hpp"
#include "silico/equilibrium_series.hpp"
#include "silico/errors.hpp"
#include "silico/piecewise.hpp"
#include "silico/powerlaw.hpp"

namespace {

using nlohmann::json;
using namespace silico;
using namespace silico::cli;

enum class Kind { Real, Integer, Text, RealList, IntList };

struct OptionSpec {
  std::string flag;  // without leading dashes
  std::string path;  // dotted key into the config
  Kind kind;
  std::string help;
};

std::vector<OptionSpec> family_options() {
  return {
      {"family", "family.kind", Kind::Text, "piecewise | power_law | tabulated"},
      {"k", "family.k", Kind::Real, "piecewise: constant phagocytosis rate"},
      {"N", "family.N", Kind::Integer, "piecewise: load cutoff"},
      {"a", "family.a", Kind::Real, "power law: d_i = i^a + i^b"},
      {"b", "family.b", Kind::Real, "power law: rho_i = i^b"},
      {"p-exp", "family.p_exp", Kind::Real, "power law: p_i = i^-p_exp"},
      {"q-exp", "family.q_exp", Kind::Real, "power law: q_i = i^q_exp"},
      {"k-exp", "family.k_exp", Kind::Real, "power law: k_i = i^-k_exp"},
      {"p0", "family.p0", Kind::Real, "power law: p_0"},
      {"q0", "family.q0", Kind::Real, "power law: q_0"},
      {"k0", "family.k0", Kind::Real, "power law: k_0"},
  };
}

struct Verb {
  std::string name;
  std::string description;
  json defaults;
  std::vector<OptionSpec> options;
  bool uses_family = true;
};

std::vector<Verb> verbs() {
  std::vector<Verb> out;
  out.push_back({"equilibrium",
                 "Evaluate F(x) = alpha/r at one x or over a grid",
                 {{"r", 1.0},
                  {"tol", 1e-12},
                  {"grid", {{"x_min", 0.01}, {"x_max", 100.0}, {"count", 50}, {"spacing", "log"}}}},
                 {{"x", "x", Kind::Real, "single quartz level (overrides the grid)"},
                  {"r", "r", Kind::Real, "recruitment rate"},
                  {"tol", "tol", Kind::Real, "absolute tail tolerance"},
                  {"x-min", "grid.x_min", Kind::Real, "grid start"},
                  {"x-max", "grid.x_max", Kind::Real, "grid end"},
                  {"count", "grid.count", Kind::Integer, "grid points"},
                  {"spacing", "grid.spacing", Kind::Text, "linear | log"},
                  {"cohorts", "cohorts", Kind::Integer, "with --x: emit M_0..M_n"}}});
  out.push_back({"roots",
                 "Equilibria of the piecewise-constant family",
                 {{"family", {{"kind", "piecewise_constant"}}}, {"r", 1.0}, {"tol", 1e-12}},
                 {{"alpha", "alpha", Kind::Real, "quartz inflow"},
                  {"r", "r", Kind::Real, "recruitment rate"},
                  {"tol", "tol", Kind::Real, "root tolerance"}}});
  out.push_back({"classify",
                 "Existence regime of a power-law family",
                 {{"family", {{"kind", "power_law"}}}},
                 {}});
  out.push_back({"threshold",
                 "Threshold m = sup F and the existence verdict for alpha/r",
                 {{"family", {{"kind", "power_law"}}},
                  {"r", 1.0},
                  {"x_min", 1e-3},
                  {"x_max", 1e6},
                  {"grid", 200},
                  {"tol", 1e-12}},
                 {{"alpha", "alpha", Kind::Real, "quartz inflow (optional)"},
                  {"r", "r", Kind::Real, "recruitment rate"},
                  {"x-min", "x_min", Kind::Real, "scan start"},
                  {"x-max", "x_max", Kind::Real, "scan end"},
                  {"grid", "grid", Kind::Integer, "scan points"},
                  {"tol", "tol", Kind::Real, "series tail tolerance"}}});
  out.push_back({"asym",
                 "Large-x expansion of K_{a,b} with optional comparison",
                 {{"family", {{"kind", "power_law"}}}, {"depth", 2}},
                 {{"depth", "depth", Kind::Integer, "orders below the leading term (<= 2)"},
                  {"compare-grid", "compare_grid", Kind::RealList, "x1,x2,... to compare"}}});
  out.push_back({"identity-audit",
                 "Telescoping identity residuals at n terms",
                 {{"n", 200}, {"threshold", 1e-10}},
                 {{"x", "x", Kind::Real, "quartz level"},
                  {"n", "n", Kind::Integer, "number of terms"},
                  {"threshold", "threshold", Kind::Real, "pass threshold on residuals"}}});
  out.push_back({"simulate",
                 "Integrate the truncated ODE system",
                 {{"r", 1.0},
                  {"imax", 200},
                  {"t_end", 1000.0},
                  {"x0", 0.0},
                  {"abs_tol", 1e-14},
                  {"rel_tol", 1e-10},
                  {"convergence_threshold", 1e-10},
                  {"samples", 400},
                  {"stop_on_convergence", true}},
                 {{"alpha", "alpha", Kind::Real, "quartz inflow"},
                  {"r", "r", Kind::Real, "recruitment rate"},
                  {"imax", "imax", Kind::Integer, "largest cohort kept"},
                  {"t-end", "t_end", Kind::Real, "final time"},
                  {"x0", "x0", Kind::Real, "initial free quartz"},
                  {"abs-tol", "abs_tol", Kind::Real, "absolute step tolerance"},
                  {"rel-tol", "rel_tol", Kind::Real, "relative step tolerance"},
                  {"samples", "samples", Kind::Integer, "time-series rows"},
                  {"summary", "summary", Kind::Text, "with --format csv: JSON summary path"}}});
  out.push_back({"reproduce",
                 "Run the acceptance criteria and report pass/fail",
                 json::object(),
                 {{"criteria", "criteria", Kind::IntList, "subset, e.g. 1,3,7"}},
                 false});
  return out;
}

json& at_path(json& root, const std::string& path) {
  json* node = &root;
  std::stringstream ss(path);
  std::string part;
  while (std::getline(ss, part, '.')) {
    if (!node->is_object()) *node = json::object();
    node = &(*node)[part];
  }
  return *node;
}

double parse_real(const std::string& text, const std::string& flag) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("--" + flag + " expects a number, got '" + text + "'");
}

long long parse_integer(const std::string& text, const std::string& flag) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used == text.size()) return v;
  } catch (const std::exception&) {
  }
  throw UsageError("--" + flag + " expects an integer, got '" + text + "'");
}

json convert(const OptionSpec& spec, const std::string& text) {
  switch (spec.kind) {
    case Kind::Real:
      return parse_real(text, spec.flag);
    case Kind::Integer:
      return parse_integer(text, spec.flag);
    case Kind::Text:
      return text;
    case Kind::RealList:
    case Kind::IntList: {
      json list = json::array();
      std::stringstream ss(text);
      std::string item;
      while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        if (spec.kind == Kind::RealList) {
          list.push_back(parse_real(item, spec.flag));
        } else {
          list.push_back(parse_integer(item, spec.flag));
        }
      }
      return list;
    }
  }
  return nullptr;
}

std::vector<double> real_list(const json& cfg, const std::string& key) {
  std::vector<double> out;
  if (!has(cfg, key)) return out;
  if (!cfg.at(key).is_array()) throw UsageError("'" + key + "' must be an array");
  for (const auto& v : cfg.at(key)) {
    if (!v.is_number()) throw UsageError("'" + key + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

// --- verb implementations -------------------------------------------------

struct Result {
  json document;
  std::optional<std::string> csv;
  int exit_code = 0;
};

json family_json(const CoefficientFamily& fam) {
  json warnings = json::array();
  for (const auto& w : fam.warnings()) warnings.push_back(w);
  return warnings;
}

SeriesOptions series_options(const json& cfg) {
  SeriesOptions opts;
  if (has(cfg, "tol")) opts.tol = get_real(cfg, "tol");
  if (has(cfg, "term_cap")) opts.term_cap = get_integer(cfg, "term_cap");
  return opts;
}

PowerLawParams power_law_of(const CoefficientFamily& fam, const std::string& verb) {
  if (fam.kind() != FamilyKind::PowerLaw) {
    throw UsageError(verb + " needs a power_law family");
  }
  return std::get<PowerLawParams>(fam.params());
}

Result run_equilibrium(json& cfg, const std::string& format) {
  const auto fam = family_from_json(cfg["family"]);
  const double r = get_real(cfg, "r");
  const auto opts = series_options(cfg);

  std::vector<double> xs;
  if (has(cfg, "x")) {
    xs.push_back(get_real(cfg, "x"));
  } else {
    const json& g = cfg.at("grid");
    const double lo = get_real(g, "x_min");
    const double hi = get_real(g, "x_max");
    const long long count = get_integer(g, "count");
    const std::string spacing = get_text(g, "spacing");
    if (count < 1) throw UsageError("grid.count must be positive");
    if (spacing != "log" && spacing != "linear") {
      throw UsageError("grid.spacing must be 'log' or 'linear'");
    }
    if (spacing == "log" && !(lo > 0.0 && hi > 0.0)) {
      throw UsageError("a log grid needs positive end points");
    }
    for (long long i = 0; i < count; ++i) {
      const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
      double x = spacing == "log" ? std::exp(std::log(lo) + t * (std::log(hi) - std::log(lo)))
                                  : lo + t * (hi - lo);
      if (i == 0) x = lo;
      if (i == count - 1) x = hi;
      xs.push_back(x);
    }
  }

  Result res;
  json points = json::array();
  std::vector<std::vector<double>> rows;
  for (double x : xs) {
    const auto v = equilibrium_function(fam, x, opts);
    // F is alpha/r; report the r-scaled value alongside for convenience.
    points.push_back({{"x", x},
                      {"value", v.value},
                      {"tail_bound", v.tail_bound},
                      {"terms_used", v.terms_used},
                      {"alpha", r * v.value}});
    rows.push_back({x, v.value, v.tail_bound, static_cast<double>(v.terms_used)});
  }
  res.document = {{"config", cfg}, {"points", points}, {"warnings", family_json(fam)}};
  if (has(cfg, "cohorts")) {
    if (!has(cfg, "x")) throw UsageError("cohorts requires a single x");
    const auto prof = cohort_profile(fam, xs.front(), r, get_integer(cfg, "cohorts"));
    res.document["cohorts"] = {{"M", prof.M}, {"tail_mass_bound", prof.tail_mass_bound}};
  }
  res.document["config"] = cfg;
  if (format == "csv") {
    res.csv = csv_document(cfg, {"x", "value", "tail_bound", "terms_used"}, rows);
  }
  return res;
}

Result run_roots(json& cfg, const std::string& format) {
  const auto fam = family_from_json(cfg["family"]);
  if (fam.kind() != FamilyKind::PiecewiseConstant) {
    throw UsageError("roots needs the piecewise family");
  }
  const auto& pc = std::get<PiecewiseConstantParams>(fam.params());
  const double alpha = get_real(cfg, "alpha");
  const double r = get_real(cfg, "r");
  const auto rep = solve_roots(pc, alpha, r, get_real(cfg, "tol"));

  json roots = json::array();
  std::vector<std::vector<double>> rows;
  for (const auto& b : rep.roots) {
    roots.push_back({{"lo", b.lo}, {"hi", b.hi}, {"root", b.root}});
    rows.push_back({b.root, b.lo, b.hi, piecewise_F(pc, b.root) - rep.alpha_over_r});
  }
  Result res;
  res.document = {{"config", cfg},
                  {"alpha_over_r", rep.alpha_over_r},
                  {"threshold_m", rep.threshold_m},
                  {"count", rep.count},
                  {"roots", roots},
                  {"stationary",
                   {{"y_star", rep.stationary.y_star},
                    {"x_star", rep.stationary.x_star},
                    {"F_max", rep.stationary.F_max}}},
                  {"status", to_string(rep.status)},
                  {"tol", rep.tol}};
  if (format == "csv") res.csv = csv_document(cfg, {"root", "lo", "hi", "residual"}, rows);
  return res;
}

Result run_classify(json& cfg, const std::string& format) {
  const auto fam = family_from_json(cfg["family"]);
  const auto pl = power_law_of(fam, "classify");
  const Regime regime = classify_regime(pl);
  Result res;
  res.document = {{"config", cfg},
                  {"a", pl.a()},
                  {"b", pl.b()},
                  {"margin", pl.b() - (pl.a() - 1.0)},
                  {"regime", to_string(regime)},
                  {"tolerance", kRegimeTolerance}};
  if (format == "csv") {
    res.csv = csv_document(cfg, {"a", "b", "margin", "regime_code"},
                           {{pl.a(), pl.b(), pl.b() - (pl.a() - 1.0),
                             static_cast<double>(static_cast<int>(regime))}});
  }
  return res;
}

json threshold_json(const ThresholdEstimate& t) {
  json out = {{"m", t.m},
              {"error_bar", t.error_bar},
              {"attained_at", t.attained_at ? json(*t.attained_at) : json(nullptr)},
              {"supremum_at_infinity", t.supremum_at_infinity},
              {"x_max", t.x_max},
              {"grid", t.grid}};
  if (t.supremum_at_infinity) {
    out["F_edge"] = t.F_edge;
    out["extrapolated"] = t.extrapolated;
  }
  return out;
}

Result run_threshold(json& cfg, const std::string& format) {
  const auto fam = family_from_json(cfg["family"]);
  const auto pl = power_law_of(fam, "threshold");
  ThresholdOptions opts;
  opts.x_min = get_real(cfg, "x_min");
  opts.x_max = get_real(cfg, "x_max");
  opts.grid = static_cast<int>(get_integer(cfg, "grid"));
  opts.series = series_options(cfg);

  const Regime regime = classify_regime(pl);
  Result res;
  res.document = {{"config", cfg}, {"regime", to_string(regime)}};
  std::optional<ThresholdEstimate> est;
  if (has(cfg, "alpha")) {
    const auto rep = existence_verdict(pl, get_real(cfg, "alpha"), get_real(cfg, "r"), opts);
    res.document["alpha_over_r"] = rep.alpha_over_r;
    res.document["existence"] = to_string(rep.existence);
    est = rep.threshold;
  } else if (regime != Regime::AlwaysExists) {
    est = estimate_m(pl, opts);
  }
  // In the always-exists regime F is unbounded and there is no threshold.
  res.document["threshold"] = est ? threshold_json(*est) : json(nullptr);
  if (format == "csv") {
    const double nan = std::nan("");
    res.csv = csv_document(
        cfg, {"m", "error_bar", "attained_at", "supremum_at_infinity"},
        {{est ? est->m : std::numeric_limits<double>::infinity(), est ? est->error_bar : nan,
          est && est->attained_at ? *est->attained_at : nan,
          est ? (est->supremum_at_infinity ? 1.0 : 0.0) : nan}});
  }
  return res;
}

Result run_asym(json& cfg, const std::string& format) {
  const auto fam = family_from_json(cfg["family"]);
  const auto pl = power_law_of(fam, "asym");
  const double a = pl.a();
  const double b = pl.b();
  const int depth = static_cast<int>(get_integer(cfg, "depth"));
  const auto exp = k_expansion_refined(a, b, depth);

  json terms = json::array();
  for (const auto& t : exp.terms) {
    terms.push_back({{"coeff", t.coefficient}, {"power", t.power}, {"log_power", t.log_power}});
  }
  json comparison = json::array();
  std::vector<std::vector<double>> rows;
  for (double x : real_list(cfg, "compare_grid")) {
    if (!(x > 0.0)) throw UsageError("compare_grid values must be positive");
    const auto direct = k_direct(a, b, x, series_options(cfg));
    const double e = exp.evaluate(x);
    const double residual = direct.value - e;
    comparison.push_back({{"x", x},
                          {"direct", direct.value},
                          {"expansion", e},
                          {"residual", residual},
                          {"direct_tail_bound", direct.tail_bound}});
    rows.push_back({x, direct.value, e, residual});
  }
  Result res;
  res.document = {{"config", cfg},
                  {"series", "K"},
                  {"variable", to_string(exp.variable)},
                  {"terms", terms},
                  {"remainder", {{"power", exp.remainder.power}, {"log_power", exp.remainder.log_power}}},
                  {"comparison", comparison}};
  if (format == "csv") res.csv = csv_document(cfg, {"x", "direct", "expansion", "residual"}, rows);
  return res;
}

Result run_identity_audit(json& cfg, const std::string& format) {
  const auto fam = family_from_json(cfg["family"]);
  const double x = get_real(cfg, "x");
  const Index n = get_integer(cfg, "n");
  const double threshold = get_real(cfg, "threshold");
  const auto unit = audit_unit_identity(fam, x, n);
  const auto xid = audit_x_identity(fam, x, n);
  const bool pass = unit.residual <= threshold && xid.residual <= threshold;

  const auto audit = [](const IdentityAudit& a) {
    return json{{"partial_sum", a.partial_sum},
                {"closed_form", a.closed_form},
                {"residual", a.residual}};
  };
  Result res;
  res.document = {{"config", cfg},
                  {"unit_identity", audit(unit)},
                  {"x_identity", audit(xid)},
                  {"passed", pass}};
  res.exit_code = pass ? 0 : 1;
  if (format == "csv") {
    res.csv = csv_document(cfg, {"identity", "partial_sum", "closed_form", "residual"},
                           {{0.0, unit.partial_sum, unit.closed_form, unit.residual},
                            {1.0, xid.partial_sum, xid.closed_form, xid.residual}});
  }
  return res;
}

Result run_simulate(json& cfg, const std::string& format) {
  const auto fam = family_from_json(cfg["family"]);
  const double alpha = get_real(cfg, "alpha");
  const double r = get_real(cfg, "r");
  const Index imax = get_integer(cfg, "imax");
  if (imax < 0) throw UsageError("imax must be nonnegative");
  IntegrateOptions opts;
  opts.abs_tol = get_real(cfg, "abs_tol");
  opts.rel_tol = get_real(cfg, "rel_tol");
  opts.convergence_threshold = get_real(cfg, "convergence_threshold");
  opts.samples = static_cast<int>(get_integer(cfg, "samples"));
  if (has(cfg, "stop_on_convergence")) {
    if (!cfg.at("stop_on_convergence").is_boolean()) {
      throw UsageError("'stop_on_convergence' must be a boolean");
    }
    opts.stop_on_convergence = cfg.at("stop_on_convergence").get<bool>();
  }
  auto init = zero_state(imax);
  init.x = get_real(cfg, "x0");
  const auto sum = integrate(fam, alpha, r, init, get_real(cfg, "t_end"), opts);

  json summary = {{"converged", sum.converged},
                  {"converged_at", sum.converged ? json(sum.converged_at) : json(nullptr)},
                  {"final_t", sum.final_state.t},
                  {"final_x", sum.final_state.x},
                  {"final_total_cells", sum.final_state.total_cells()},
                  {"final_total_load", sum.final_state.total_load()},
                  {"final_rhs_norm", sum.final_rhs_norm},
                  {"min_component", sum.min_component},
                  {"max_conservation_drift", sum.max_conservation_drift},
                  {"accepted_steps", sum.accepted_steps},
                  {"rejected_steps", sum.rejected_steps}};
  if (fam.kind() == FamilyKind::PiecewiseConstant && alpha > 0.0 && r > 0.0) {
    // Nearest equilibrium for orientation; no stability claim.
    const auto& pc = std::get<PiecewiseConstantParams>(fam.params());
    if (pc.N >= 1) {
      const auto rep = solve_roots(pc, alpha, r);
      json eq = json::array();
      for (const auto& b : rep.roots) eq.push_back(b.root);
      summary["piecewise_equilibria"] = eq;
    }
  }

  std::vector<std::vector<double>> rows;
  json series = json::array();
  for (const auto& s : sum.samples) {
    rows.push_back({s.t, s.x, s.total_cells, s.total_load, s.rhs_norm});
    series.push_back({{"t", s.t},
                      {"x", s.x},
                      {"total_cells", s.total_cells},
                      {"total_load", s.total_load},
                      {"rhs_norm", s.rhs_norm}});
  }
  Result res;
  res.document = {{"config", cfg}, {"summary", summary}, {"series", series}};
  if (format == "csv") {
    res.csv = csv_document(cfg, {"t", "x", "total_cells", "total_load", "rhs_norm"}, rows);
    if (has(cfg, "summary")) {
      std::ofstream out(get_text(cfg, "summary"));
      if (!out) throw UsageError("cannot write summary file");
      out << dump17(json{{"config", cfg}, {"summary", summary}}) << '\n';
    }
  }
  return res;
}

Result run_reproduce(json& cfg, const std::string& format) {
  acceptance::Settings settings;
  settings.seed = static_cast<std::uint64_t>(get_integer(cfg, "seed"));
  std::vector<int> ids;
  if (has(cfg, "criteria")) {
    for (double v : real_list(cfg, "criteria")) {
      const int id = static_cast<int>(v);
      if (id < 1 || id > acceptance::kCriterionCount || id != v) {
        throw UsageError("criteria must be integers in 1.." +
                         std::to_string(acceptance::kCriterionCount));
      }
      ids.push_back(id);
    }
  } else {
    for (int i = 1; i <= acceptance::kCriterionCount; ++i) ids.push_back(i);
  }

  json criteria = json::array();
  std::vector<std::vector<double>> rows;
  bool all = true;
  for (int id : ids) {
    const auto c = acceptance::run_criterion(id, settings);
    std::cerr << acceptance::summary_line(c) << '\n';
    all = all && c.passed();
    criteria.push_back({{"id", c.id},
                        {"title", c.title},
                        {"passed", c.passed()},
                        {"checks_passed", c.checks_passed},
                        {"seconds", c.seconds},
                        {"budget_seconds", c.budget_seconds},
                        {"details", c.details}});
    rows.push_back({static_cast<double>(c.id), c.passed() ? 1.0 : 0.0,
                    c.checks_passed ? 1.0 : 0.0, c.seconds, c.budget_seconds});
  }
  Result res;
  res.document = {{"config", cfg}, {"criteria", criteria}, {"all_passed", all}};
  res.exit_code = all ? 0 : 1;
  if (format == "csv") {
    res.csv = csv_document(cfg, {"id", "passed", "checks_passed", "seconds", "budget_seconds"}, rows);
  }
  return res;
}

using Handler = Result (*)(json&, const std::string&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table = {
      {"equilibrium", run_equilibrium}, {"roots", run_roots},
      {"classify", run_classify},       {"threshold", run_threshold},
      {"asym", run_asym},               {"identity-audit", run_identity_audit},
      {"simulate", run_simulate},       {"reproduce", run_reproduce},
  };
  return table;
}

void report_error(const char* kind, const std::string& message) {
  std::cerr << dump17(json{{"error", kind}, {"message", message}}) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Equilibria of the coagulation-death silicosis model"};
  app.require_subcommand(1);

  const auto all_verbs = verbs();
  struct Bound {
    CLI::App* sub;
    const Verb* verb;
    std::vector<std::pair<OptionSpec, std::string>> values;
    std::string config_path;
    std::string format;
    std::string output;
    std::string seed;
  };
  std::vector<Bound> bound(all_verbs.size());
  for (std::size_t v = 0; v < all_verbs.size(); ++v) {
    const Verb& verb = all_verbs[v];
    Bound& b = bound[v];
    b.verb = &verb;
    b.sub = app.add_subcommand(verb.name, verb.description);
    std::vector<OptionSpec> specs = verb.options;
    if (verb.uses_family) {
      auto fam = family_options();
      if (verb.name == "classify" || verb.name == "threshold" || verb.name == "asym") {
        fam = {fam[0], fam[3], fam[4], fam[5], fam[6], fam[7], fam[8], fam[9], fam[10]};
      } else if (verb.name == "roots") {
        fam = {fam[0], fam[1], fam[2]};
      }
      specs.insert(specs.begin(), fam.begin(), fam.end());
    }
    b.values.reserve(specs.size());
    for (const auto& spec : specs) {
      b.values.emplace_back(spec, std::string{});
      b.sub->add_option("--" + spec.flag, b.values.back().second, spec.help);
    }
    b.sub->add_option("--config", b.config_path, "JSON file supplying defaults");
    b.sub->add_option("--format", b.format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    b.sub->add_option("--output", b.output, "write to this file instead of stdout");
    b.sub->add_option("--seed", b.seed, "seed for randomized sweeps");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    report_error("usage", e.what());
    return 2;
  }

  for (auto& b : bound) {
    if (!b.sub->parsed()) continue;
    const std::string& name = b.verb->name;
    try {
      json cfg = {{"verb", name}, {"format", "json"}, {"seed", 20240611}};
      overlay(cfg, b.verb->defaults);
      if (!b.config_path.empty()) {
        json file = load_config_file(b.config_path);
        if (has(file, "verb") && file.at("verb") != name) {
          throw UsageError("config file is for verb '" + file.at("verb").dump() + "'");
        }
        overlay(cfg, file);
      }
      for (const auto& [spec, text] : b.values) {
        if (b.sub->count("--" + spec.flag) == 0) continue;
        at_path(cfg, spec.path) = convert(spec, text);
      }
      if (b.sub->count("--format")) cfg["format"] = b.format;
      if (b.sub->count("--output")) cfg["output"] = b.output;
      if (b.sub->count("--seed")) cfg["seed"] = parse_integer(b.seed, "seed");

      const std::string format = get_text(cfg, "format");
      if (format != "json" && format != "csv") throw UsageError("format must be json or csv");
      Result res = handlers().at(name)(cfg, format);

      const std::string text = res.csv ? *res.csv : dump17(res.document) + "\n";
      if (has(cfg, "output")) {
        std::ofstream out(get_text(cfg, "output"), std::ios::binary);
        if (!out) throw UsageError("cannot write output file");
        out << text;
      } else {
        std::cout << text;
      }
      return res.exit_code;
    } catch (const UsageError& e) {
      report_error("usage", e.what());
      return 2;
    } catch (const DomainError& e) {
      report_error("domain", e.what());
      return 2;
    } catch (const NumericError& e) {
      report_error("numeric", e.what());
      return 3;
    } catch (const std::exception& e) {
      report_error("internal", e.what());
      return 3;
    }
  }
  return 2;
}
