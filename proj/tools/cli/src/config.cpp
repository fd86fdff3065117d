#include "thermo/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

#include "thermo/error.hpp"
#include "thermo/pressure.hpp"

namespace thermo::cli {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
  throw ConfigError(where + ": " + what);
}

void only_keys(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
  if (!obj.is_object()) fail(where, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; }))
      fail(where, "unknown field '" + key + "'");
  }
}

const json& field(const json& obj, const std::string& where, const char* key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(where, std::string("missing field '") + key + "'");
  return *it;
}

double real(const json& v, const std::string& where) {
  if (!v.is_number()) fail(where, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(where, "expected a finite number");
  return x;
}

std::uint64_t integer(const json& v, const std::string& where) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer()) {
    if (v.get<std::int64_t>() < 0) fail(where, "expected a non-negative integer");
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  const double x = real(v, where);
  if (x < 0 || x != std::floor(x) || x > 9007199254740992.0) fail(where, "expected a non-negative integer");
  return static_cast<std::uint64_t>(x);
}

std::vector<double> real_list(const json& v, const std::string& where) {
  if (!v.is_array()) fail(where, "expected a list of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(real(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::size_t> size_list(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) fail(where, "expected a non-empty list of integers");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(integer(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

std::vector<std::vector<double>> real_matrix(const json& v, std::size_t m, const std::string& where) {
  if (!v.is_array() || v.size() != m) fail(where, "expected " + std::to_string(m) + " rows");
  std::vector<std::vector<double>> out;
  for (std::size_t i = 0; i < m; ++i) {
    const std::string row_where = where + "[" + std::to_string(i) + "]";
    out.push_back(real_list(v[i], row_where));
    if (out.back().size() != m) fail(row_where, "expected " + std::to_string(m) + " entries");
  }
  return out;
}

SubshiftOfFiniteType parse_system(const json& doc) {
  const std::string where = "system";
  only_keys(doc, where, {"alphabet_size", "transition"});
  const std::size_t m = integer(field(doc, where, "alphabet_size"), where + ".alphabet_size");
  if (m == 0) fail(where + ".alphabet_size", "must be at least 1");
  const auto rows = real_matrix(field(doc, where, "transition"), m, where + ".transition");
  std::vector<std::vector<int>> a(m, std::vector<int>(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      if (rows[i][j] != 0.0 && rows[i][j] != 1.0) fail(where + ".transition", "entries must be 0 or 1");
      a[i][j] = static_cast<int>(rows[i][j]);
    }
  try {
    return SubshiftOfFiniteType(std::move(a));
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

LocallyConstantPotential parse_potential(const json& doc, std::size_t m) {
  const std::string where = "potential";
  only_keys(doc, where, {"range", "table"});
  const std::size_t r = integer(field(doc, where, "range"), where + ".range");
  if (r == 0) fail(where + ".range", "must be at least 1");
  auto table = real_list(field(doc, where, "table"), where + ".table");
  const double expected = std::pow(static_cast<double>(m), static_cast<double>(r));
  if (static_cast<double>(table.size()) != expected)
    fail(where + ".table", "expected alphabet_size^range = " + std::to_string(static_cast<std::size_t>(expected)) +
                               " entries, got " + std::to_string(table.size()));
  try {
    return LocallyConstantPotential(m, r, std::move(table));
  } catch (const Error& e) {
    fail(where, e.what());
  }
}

MeasureSpec parse_measure(const json& doc, std::size_t m) {
  const std::string where = "measure";
  only_keys(doc, where, {"kind", "parameters"});
  const json& kind = field(doc, where, "kind");
  if (!kind.is_string()) fail(where + ".kind", "expected a string");
  const json empty = json::object();
  const auto it = doc.find("parameters");
  const json& params = it == doc.end() || it->is_null() ? empty : *it;

  MeasureSpec spec;
  const std::string k = kind.get<std::string>();
  const std::string pw = where + ".parameters";
  if (k == "bernoulli") {
    only_keys(params, pw, {"probabilities"});
    spec.kind = MeasureKind::bernoulli;
    spec.probabilities = real_list(field(params, pw, "probabilities"), pw + ".probabilities");
    if (spec.probabilities.size() != m) fail(pw + ".probabilities", "expected " + std::to_string(m) + " entries");
  } else if (k == "markov") {
    only_keys(params, pw, {"stochastic"});
    spec.kind = MeasureKind::markov;
    spec.stochastic = real_matrix(field(params, pw, "stochastic"), m, pw + ".stochastic");
  } else if (k == "equilibrium") {
    only_keys(params, pw, {});
    spec.kind = MeasureKind::equilibrium;
  } else {
    fail(where + ".kind", "expected bernoulli, markov or equilibrium, got '" + k + "'");
  }
  return spec;
}

EstimatorSpec parse_estimator(const json& doc) {
  const std::string where = "estimator";
  only_keys(doc, where, {"n_grid", "k", "k_grid", "sample_count", "capacity", "seed"});
  EstimatorSpec est;
  est.n_grid = size_list(field(doc, where, "n_grid"), where + ".n_grid");
  if (std::find(est.n_grid.begin(), est.n_grid.end(), 0u) != est.n_grid.end())
    fail(where + ".n_grid", "entries must be at least 1");
  est.k = integer(field(doc, where, "k"), where + ".k");
  if (doc.contains("k_grid")) {
    est.k_grid = size_list(doc["k_grid"], where + ".k_grid");
    if (std::find(est.k_grid.begin(), est.k_grid.end(), est.k) == est.k_grid.end())
      fail(where + ".k_grid", "must contain k");
  } else {
    est.k_grid = {est.k};
  }
  est.sample_count = integer(field(doc, where, "sample_count"), where + ".sample_count");
  if (est.sample_count == 0) fail(where + ".sample_count", "must be at least 1");
  est.capacity = integer(field(doc, where, "capacity"), where + ".capacity");
  est.seed = integer(field(doc, where, "seed"), where + ".seed");
  return est;
}

}  // namespace

std::string_view to_string(MeasureKind kind) noexcept {
  switch (kind) {
    case MeasureKind::bernoulli: return "bernoulli";
    case MeasureKind::markov: return "markov";
    case MeasureKind::equilibrium: return "equilibrium";
  }
  return "?";
}

ExperimentConfig parse_config(const json& doc) {
  only_keys(doc, "config", {"system", "potential", "measure", "estimator", "tolerances"});
  auto system = parse_system(field(doc, "config", "system"));
  const std::size_t m = system.alphabet_size();
  auto potential = parse_potential(field(doc, "config", "potential"), m);
  ExperimentConfig config{std::move(system), std::move(potential), parse_measure(field(doc, "config", "measure"), m),
                          std::nullopt};
  config.const_bound = std::exp(10.0);

  if (doc.contains("estimator") && !doc["estimator"].is_null()) {
    config.estimator = parse_estimator(doc["estimator"]);
    const auto& est = *config.estimator;
    const std::size_t need = *std::max_element(est.n_grid.begin(), est.n_grid.end()) +
                             *std::max_element(est.k_grid.begin(), est.k_grid.end()) + config.potential.range() - 1;
    if (est.capacity < need)
      fail("estimator.capacity", "must be at least max(n_grid) + k + range - 1 = " + std::to_string(need));
  }
  if (doc.contains("tolerances")) {
    const json& tol = doc["tolerances"];
    only_keys(tol, "tolerances", {"slope_tol", "const_bound", "eq_tol"});
    auto positive = [&](const char* key, double& target) {
      if (!tol.contains(key)) return;
      target = real(tol[key], std::string("tolerances.") + key);
      if (target <= 0) fail(std::string("tolerances.") + key, "must be positive");
    };
    positive("slope_tol", config.slope_tol);
    positive("const_bound", config.const_bound);
    positive("eq_tol", config.eq_tol);
    if (config.const_bound < 1.0) fail("tolerances.const_bound", "must be at least 1");
  }
  return config;
}

ExperimentConfig parse_config_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return parse_config(doc);
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config_text(text.str());
}

nlohmann::json ExperimentConfig::echo() const {
  json doc;
  doc["system"] = {{"alphabet_size", system.alphabet_size()}, {"transition", system.transition()}};
  doc["potential"] = {{"range", potential.range()},
                      {"table", std::vector<double>(potential.table().begin(), potential.table().end())}};
  json params = json::object();
  if (measure.kind == MeasureKind::bernoulli) params["probabilities"] = measure.probabilities;
  if (measure.kind == MeasureKind::markov) params["stochastic"] = measure.stochastic;
  doc["measure"] = {{"kind", to_string(measure.kind)}, {"parameters", params}};
  if (estimator) {
    doc["estimator"] = {{"n_grid", estimator->n_grid},           {"k", estimator->k},
                        {"k_grid", estimator->k_grid},           {"sample_count", estimator->sample_count},
                        {"capacity", estimator->capacity},       {"seed", estimator->seed}};
  }
  doc["tolerances"] = {{"slope_tol", slope_tol}, {"const_bound", const_bound}, {"eq_tol", eq_tol}};
  return doc;
}

const EstimatorSpec& ExperimentConfig::require_estimator() const {
  if (!estimator) throw ConfigError("config: this command needs an 'estimator' section");
  return *estimator;
}

GibbsOptions ExperimentConfig::gibbs_options() const {
  const auto& est = require_estimator();
  GibbsOptions options;
  options.n_grid = est.n_grid;
  options.k = est.k;
  options.slope_tol = slope_tol;
  options.const_bound = const_bound;
  options.eq_tol = eq_tol;
  return options;
}

std::vector<GridCell> ExperimentConfig::grid() const {
  const auto& est = require_estimator();
  return make_grid(est.n_grid, est.k_grid);
}

MarkovMeasure build_measure(const ExperimentConfig& config) {
  switch (config.measure.kind) {
    case MeasureKind::bernoulli:
      return MarkovMeasure::bernoulli(config.system, config.measure.probabilities);
    case MeasureKind::markov:
      return MarkovMeasure::from_stochastic(config.system, Matrix::from_rows(config.measure.stochastic));
    case MeasureKind::equilibrium:
      return equilibrium_measure(config.system, config.potential);
  }
  throw ConfigError("measure.kind: unsupported");
}

}  // namespace thermo::cli
