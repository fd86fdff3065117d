#include "thermo/gibbs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "thermo/error.hpp"
#include "thermo/parallel.hpp"
#include "thermo/pressure.hpp"

namespace thermo {

std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::gibbs:
      return "gibbs";
    case Verdict::weak_gibbs:
      return "weak_gibbs";
    case Verdict::rejected:
      return "rejected";
  }
  return "unknown";
}

double log_gibbs_ratio(const MarkovMeasure& mu, const LocallyConstantPotential& phi, double p_top,
                       const PointPrefix& x, std::size_t n, std::size_t k) {
  if (n == 0) throw InvalidArgument("Gibbs ratio needs n >= 1");
  if (phi.alphabet_size() != mu.alphabet_size()) throw InvalidArgument("potential and measure alphabets differ");
  x.head(n + k + phi.range() - 1);
  const double log_mass = log_cylinder_measure(mu, x.head(n + k));
  if (log_mass == -std::numeric_limits<double>::infinity())
    throw SupportError("point outside measure support: dynamical ball has zero measure");
  return log_mass + p_top * static_cast<double>(n) - birkhoff_sum(phi, x, n);
}

double gibbs_ratio(const MarkovMeasure& mu, const LocallyConstantPotential& phi, double p_top, const PointPrefix& x,
                   std::size_t n, std::size_t k) {
  return std::exp(log_gibbs_ratio(mu, phi, p_top, x, n, k));
}

double tail_slope(std::span<const std::size_t> n_grid, std::span<const double> values) {
  if (n_grid.empty() || n_grid.size() != values.size()) throw InvalidArgument("slope fit needs matching, non-empty series");
  const std::size_t start = n_grid.size() / 2;
  const std::size_t count = n_grid.size() - start;
  if (count == 1) return values.back() / static_cast<double>(n_grid.back());
  double mean_n = 0.0;
  double mean_v = 0.0;
  for (std::size_t i = start; i < n_grid.size(); ++i) {
    mean_n += static_cast<double>(n_grid[i]);
    mean_v += values[i];
  }
  mean_n /= static_cast<double>(count);
  mean_v /= static_cast<double>(count);
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = start; i < n_grid.size(); ++i) {
    const double dn = static_cast<double>(n_grid[i]) - mean_n;
    sxy += dn * (values[i] - mean_v);
    sxx += dn * dn;
  }
  return sxy / sxx;
}

GibbsDiagnostics gibbs_diagnose(const MarkovMeasure& mu, const LocallyConstantPotential& phi, double p_top,
                                const SampleBatch& batch, const GibbsOptions& options, unsigned threads) {
  if (batch.points.empty()) throw InvalidArgument("empty sample batch");
  if (options.n_grid.empty()) throw InvalidArgument("empty n-grid");
  if (!(options.const_bound >= 1.0)) throw InvalidArgument("const_bound must be at least 1");

  GibbsDiagnostics diag;
  diag.k = options.k;
  diag.p_top = p_top;
  diag.n_grid = options.n_grid;
  std::sort(diag.n_grid.begin(), diag.n_grid.end());
  diag.n_grid.erase(std::unique(diag.n_grid.begin(), diag.n_grid.end()), diag.n_grid.end());
  const double log_bound = std::log(options.const_bound);

  diag.per_point.resize(batch.points.size());
  parallel_for(batch.points.size(), threads, [&](std::size_t i) {
    PointDiagnostics& p = diag.per_point[i];
    p.point_id = i;
    for (std::size_t n : diag.n_grid) {
      const double log_ratio = log_gibbs_ratio(mu, phi, p_top, batch.points[i], n, options.k);
      p.log_ratios.push_back(log_ratio);
      p.log_deltas.push_back(std::abs(log_ratio));
    }
    p.max_log_delta = *std::max_element(p.log_deltas.begin(), p.log_deltas.end());
    p.slope = tail_slope(diag.n_grid, p.log_deltas);
    if (p.max_log_delta <= log_bound)
      p.verdict = Verdict::gibbs;
    else if (std::abs(p.slope) <= options.slope_tol)
      p.verdict = Verdict::weak_gibbs;
    else
      p.verdict = Verdict::rejected;
  });

  bool all_flat = true;
  for (const auto& p : diag.per_point) {
    diag.max_log_delta = std::max(diag.max_log_delta, p.max_log_delta);
    if (std::abs(p.slope) > std::abs(diag.worst_slope)) diag.worst_slope = p.slope;
    all_flat = all_flat && std::abs(p.slope) <= options.slope_tol;
  }
  if (diag.max_log_delta <= log_bound)
    diag.verdict = Verdict::gibbs;
  else if (all_flat)
    diag.verdict = Verdict::weak_gibbs;
  else
    diag.verdict = Verdict::rejected;
  return diag;
}

EquilibriumVerdict verify_corollary_b(const MarkovMeasure& mu, const LocallyConstantPotential& phi,
                                      const SampleBatch& batch, const GibbsOptions& options, unsigned threads) {
  EquilibriumVerdict out;
  out.p_top = topological_pressure(mu.shift_space(), phi).value;
  out.diagnostics = gibbs_diagnose(mu, phi, out.p_top, batch, options, threads);
  if (out.diagnostics.verdict == Verdict::rejected) {
    std::ostringstream msg;
    msg << "rejected input: Gibbs diagnostics fail (worst tail slope " << out.diagnostics.worst_slope
        << " nats/step), so no equilibrium verdict is issued";
    throw HypothesisError(msg.str());
  }

  const auto& grid = out.diagnostics.n_grid;
  const std::size_t per_point = grid.size();
  out.sandwich_trace.resize(batch.points.size() * per_point);
  parallel_for(batch.points.size(), threads, [&](std::size_t i) {
    const auto& diag = out.diagnostics.per_point[i];
    for (std::size_t c = 0; c < per_point; ++c) {
      const std::size_t n = grid[c];
      const double width = diag.log_deltas[c] / static_cast<double>(n);
      SandwichEntry& e = out.sandwich_trace[i * per_point + c];
      e.point_id = i;
      e.n = n;
      e.middle = local_pressure_at(mu, phi, batch.points[i], n, options.k);
      e.lower = out.p_top - width;
      e.upper = out.p_top + width;
      const double slack = 1e-12 * (1.0 + std::abs(out.p_top) + std::abs(e.middle));
      e.holds = e.lower - slack <= e.middle && e.middle <= e.upper + slack;
    }
  });
  out.sandwich_holds = std::all_of(out.sandwich_trace.begin(), out.sandwich_trace.end(),
                                   [](const SandwichEntry& e) { return e.holds; });

  out.metric_pressure = entropy(mu) + integral(mu, phi);
  out.gap = out.p_top - out.metric_pressure;
  out.is_equilibrium = std::abs(out.gap) <= options.eq_tol;
  return out;
}

}  // namespace thermo
