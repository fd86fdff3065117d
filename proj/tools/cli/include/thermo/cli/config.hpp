#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "thermo/gibbs.hpp"
#include "thermo/local_pressure.hpp"
#include "thermo/measures.hpp"
#include "thermo/potential.hpp"
#include "thermo/symbolic.hpp"

namespace thermo::cli {

/// Malformed or inconsistent configuration (exit status 2).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class MeasureKind { bernoulli, markov, equilibrium };

struct MeasureSpec {
  MeasureKind kind = MeasureKind::equilibrium;
  std::vector<double> probabilities;           // bernoulli
  std::vector<std::vector<double>> stochastic;  // markov
};

struct EstimatorSpec {
  std::vector<std::size_t> n_grid;
  std::size_t k = 0;
  std::vector<std::size_t> k_grid;  // defaults to {k}
  std::size_t sample_count = 0;
  std::size_t capacity = 0;
  std::uint64_t seed = 0;
};

struct ExperimentConfig {
  SubshiftOfFiniteType system;
  LocallyConstantPotential potential;
  MeasureSpec measure;
  std::optional<EstimatorSpec> estimator;
  double slope_tol = 0.01;
  double const_bound = 0.0;  // e^10 unless given
  double eq_tol = 1e-8;

  /// Canonical form with defaults filled in; parse_config(echo()) reproduces the config.
  nlohmann::json echo() const;
  const EstimatorSpec& require_estimator() const;
  GibbsOptions gibbs_options() const;
  std::vector<GridCell> grid() const;
};

ExperimentConfig parse_config(const nlohmann::json& doc);
ExperimentConfig parse_config_text(const std::string& text);
ExperimentConfig load_config(const std::string& path);

/// Builds the measure described by the config. Mathematical failures surface
/// as thermo::Error.
MarkovMeasure build_measure(const ExperimentConfig& config);

std::string_view to_string(MeasureKind kind) noexcept;

}  // namespace thermo::cli
