#include "config.hpp"

#include <cmath>
#include <fstream>

namespace silico::cli {

using nlohmann::json;

json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open config file '" + path + "'");
  try {
    json cfg = json::parse(in);
    if (!cfg.is_object()) throw UsageError("config file must hold a JSON object");
    return cfg;
  } catch (const json::parse_error& e) {
    throw UsageError("config file '" + path + "' is not valid JSON: " + e.what());
  }
}

void overlay(json& base, const json& top) {
  if (!base.is_object() || !top.is_object()) {
    base = top;
    return;
  }
  for (auto it = top.begin(); it != top.end(); ++it) {
    if (base.contains(it.key()) && base[it.key()].is_object() && it.value().is_object()) {
      overlay(base[it.key()], it.value());
    } else {
      base[it.key()] = it.value();
    }
  }
}

bool has(const json& cfg, const std::string& key) {
  return cfg.is_object() && cfg.contains(key) && !cfg.at(key).is_null();
}

double get_real(const json& cfg, const std::string& key) {
  if (!has(cfg, key)) throw UsageError("missing required value '" + key + "'");
  const auto& v = cfg.at(key);
  if (!v.is_number()) throw UsageError("'" + key + "' must be a number");
  return v.get<double>();
}

long long get_integer(const json& cfg, const std::string& key) {
  const double v = get_real(cfg, key);
  if (v != std::floor(v)) throw UsageError("'" + key + "' must be an integer");
  return static_cast<long long>(v);
}

std::string get_text(const json& cfg, const std::string& key) {
  if (!has(cfg, key)) throw UsageError("missing required value '" + key + "'");
  const auto& v = cfg.at(key);
  if (!v.is_string()) throw UsageError("'" + key + "' must be a string");
  return v.get<std::string>();
}

namespace {

std::vector<double> get_array(const json& spec, const char* key) {
  if (!has(spec, key) || !spec.at(key).is_array()) {
    throw UsageError(std::string("tabulated family needs an array '") + key + "'");
  }
  std::vector<double> out;
  for (const auto& v : spec.at(key)) {
    if (!v.is_number()) throw UsageError(std::string("'") + key + "' must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

double real_or(const json& spec, const char* key, double fallback) {
  return has(spec, key) ? get_real(spec, key) : fallback;
}

}  // namespace

CoefficientFamily family_from_json(json& spec) {
  if (spec.is_null()) spec = json::object();
  if (spec.is_string()) spec = json{{"kind", spec}};
  if (!spec.is_object()) throw UsageError("family must be an object or a kind name");
  std::string kind = "piecewise_constant";
  if (has(spec, "kind")) {
    kind = get_text(spec, "kind");
  } else if (has(spec, "k") && spec.at("k").is_array()) {
    kind = "tabulated";
  } else {
    for (const char* key : {"a", "b", "p_exp", "q_exp", "k_exp"}) {
      if (has(spec, key)) kind = "power_law";
    }
  }
  if (kind == "piecewise" || kind == "piecewise_constant") {
    PiecewiseConstantParams pc;
    pc.k = real_or(spec, "k", 1.0);
    pc.N = has(spec, "N") ? get_integer(spec, "N") : 1;
    spec = json{{"kind", "piecewise_constant"}, {"k", pc.k}, {"N", pc.N}};
    return CoefficientFamily::piecewise_constant(pc);
  }
  if (kind == "power_law" || kind == "powerlaw") {
    const double p0 = real_or(spec, "p0", 1.0);
    const double q0 = real_or(spec, "q0", 0.0);
    const double k0 = real_or(spec, "k0", 1.0);
    PowerLawParams pl;
    if (has(spec, "a") || has(spec, "b")) {
      pl = PowerLawParams::from_ab(get_real(spec, "a"), get_real(spec, "b"), p0, q0, k0);
    } else {
      pl.p_exp = real_or(spec, "p_exp", 0.0);
      pl.q_exp = real_or(spec, "q_exp", 0.0);
      pl.k_exp = real_or(spec, "k_exp", 0.0);
      pl.p0 = p0;
      pl.q0 = q0;
      pl.k0 = k0;
    }
    spec = json{{"kind", "power_law"}, {"p_exp", pl.p_exp}, {"q_exp", pl.q_exp},
                {"k_exp", pl.k_exp},   {"p0", pl.p0},       {"q0", pl.q0},
                {"k0", pl.k0},         {"a", pl.a()},       {"b", pl.b()}};
    return CoefficientFamily::power_law(pl);
  }
  if (kind == "tabulated") {
    TabulatedParams tb;
    tb.k = get_array(spec, "k");
    tb.p = get_array(spec, "p");
    tb.q = get_array(spec, "q");
    if (has(spec, "tail") && get_text(spec, "tail") != "constant") {
      throw UsageError("the only supported tail policy is 'constant'");
    }
    spec = json{{"kind", "tabulated"}, {"k", tb.k}, {"p", tb.p}, {"q", tb.q},
                {"tail", "constant"}};
    return CoefficientFamily::tabulated(std::move(tb));
  }
  throw UsageError("unknown family kind '" + kind + "'");
}

}  // namespace silico::cli
