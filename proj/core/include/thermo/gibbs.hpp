#pragma once

#include <cmath>
#include <cstddef>
#include <string_view>
#include <vector>

#include "thermo/local_pressure.hpp"
#include "thermo/measures.hpp"
#include "thermo/potential.hpp"

namespace thermo {

enum class Verdict { gibbs, weak_gibbs, rejected };

std::string_view to_string(Verdict v) noexcept;

/// log of mu(B_n(x, 2^-k)) / exp(-p_top n + S_n phi(x)).
/// Equals -n (local_pressure_at(...) - p_top).
double log_gibbs_ratio(const MarkovMeasure& mu, const LocallyConstantPotential& phi, double p_top,
                       const PointPrefix& x, std::size_t n, std::size_t k);
double gibbs_ratio(const MarkovMeasure& mu, const LocallyConstantPotential& phi, double p_top,
                   const PointPrefix& x, std::size_t n, std::size_t k);

/// Least-squares slope of values against n over the upper half of the grid.
/// A single grid point gives values / n.
double tail_slope(std::span<const std::size_t> n_grid, std::span<const double> values);

struct GibbsOptions {
  std::vector<std::size_t> n_grid;
  std::size_t k = 0;
  double slope_tol = 0.01;
  double const_bound = std::exp(10.0);
  double eq_tol = 1e-8;
};

/// Ratios are kept in log form: delta_n = max(R_n, 1/R_n) = exp(|log R_n|).
struct PointDiagnostics {
  std::size_t point_id = 0;
  Vector log_ratios;
  Vector log_deltas;
  double slope = 0.0;
  double max_log_delta = 0.0;
  Verdict verdict = Verdict::gibbs;
};

struct GibbsDiagnostics {
  std::size_t k = 0;
  std::vector<std::size_t> n_grid;
  double p_top = 0.0;
  std::vector<PointDiagnostics> per_point;
  double max_log_delta = 0.0;  ///< log of sup delta_n over batch and grid
  double worst_slope = 0.0;    ///< slope with the largest magnitude
  Verdict verdict = Verdict::gibbs;
};

/// gibbs when sup delta_n <= const_bound; otherwise weak_gibbs when every
/// point's tail slope of log delta_n is within slope_tol of zero; otherwise
/// rejected.
GibbsDiagnostics gibbs_diagnose(const MarkovMeasure& mu, const LocallyConstantPotential& phi, double p_top,
                                const SampleBatch& batch, const GibbsOptions& options, unsigned threads = 1);

struct SandwichEntry {
  std::size_t point_id = 0;
  std::size_t n = 0;
  double lower = 0.0;   ///< p_top - log(delta_n) / n
  double middle = 0.0;  ///< local pressure at (n, k)
  double upper = 0.0;   ///< p_top + log(delta_n) / n
  bool holds = true;
};

struct EquilibriumVerdict {
  double p_top = 0.0;
  double metric_pressure = 0.0;  ///< entropy + integral
  double gap = 0.0;              ///< p_top - metric_pressure
  bool is_equilibrium = false;
  bool sandwich_holds = true;
  std::vector<SandwichEntry> sandwich_trace;
  GibbsDiagnostics diagnostics;
};

/// Runs the Gibbs diagnostics and, unless they reject, checks the two-sided
/// bound at every (point, n) and compares the metric pressure of mu with the
/// topological pressure. Raises HypothesisError when the diagnostics reject.
EquilibriumVerdict verify_corollary_b(const MarkovMeasure& mu, const LocallyConstantPotential& phi,
                                      const SampleBatch& batch, const GibbsOptions& options,
                                      unsigned threads = 1);

}  // namespace thermo
