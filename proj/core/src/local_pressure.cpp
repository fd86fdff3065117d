#include "thermo/local_pressure.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "thermo/error.hpp"
#include "thermo/parallel.hpp"

namespace thermo {

namespace {

void require_n(std::size_t n) {
  if (n == 0) throw InvalidArgument("local estimators need n >= 1");
}

void require_matching(const MarkovMeasure& mu, const LocallyConstantPotential& phi) {
  if (phi.alphabet_size() != mu.alphabet_size()) throw InvalidArgument("potential and measure alphabets differ");
}

double checked_neg_log(double log_mass) {
  if (log_mass == -std::numeric_limits<double>::infinity())
    throw SupportError("point outside measure support: dynamical ball has zero measure");
  return -log_mass;
}

// -log mu(B_n(x, 2^-k))
double neg_log_ball(const MarkovMeasure& mu, const PointPrefix& x, std::size_t n, std::size_t k) {
  return checked_neg_log(log_cylinder_measure(mu, x.head(n + k)));
}

// Running sums over one point, accumulated in the same order as
// log_cylinder_measure and birkhoff_sum so the grid values agree bitwise with
// the single-cell functions.
struct PointProfile {
  Vector log_mass;  // log_mass[L] = log mu([x_0 .. x_{L-1}])
  Vector birkhoff;  // birkhoff[n] = S_n phi(x)

  PointProfile(const MarkovMeasure& mu, const LocallyConstantPotential& phi, const PointPrefix& x,
               std::size_t max_length, std::size_t max_n) {
    const auto symbols = x.head(std::max(max_length, max_n + phi.range() - 1));
    log_mass.assign(max_length + 1, 0.0);
    if (max_length > 0) {
      if (symbols[0] >= mu.alphabet_size()) throw InvalidArgument("symbol outside the alphabet");
      log_mass[1] = mu.log_stationary(symbols[0]);
      for (std::size_t l = 2; l <= max_length; ++l)
        log_mass[l] = log_mass[l - 1] + mu.log_transition(symbols[l - 2], symbols[l - 1]);
    }
    birkhoff.assign(max_n + 1, 0.0);
    for (std::size_t i = 0; i < max_n; ++i) birkhoff[i + 1] = birkhoff[i] + phi(symbols.subspan(i, phi.range()));
  }
};

}  // namespace

std::vector<GridCell> make_grid(std::span<const std::size_t> n_grid, std::span<const std::size_t> k_grid) {
  std::vector<GridCell> grid;
  for (std::size_t k : k_grid)
    for (std::size_t n : n_grid) grid.push_back({n, k});
  std::sort(grid.begin(), grid.end(), [](const GridCell& a, const GridCell& b) {
    return a.k != b.k ? a.k < b.k : a.n < b.n;
  });
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

double local_entropy_at(const MarkovMeasure& mu, const PointPrefix& x, std::size_t n, std::size_t k) {
  require_n(n);
  return neg_log_ball(mu, x, n, k) / static_cast<double>(n);
}

double local_pressure_at(const MarkovMeasure& mu, const LocallyConstantPotential& phi, const PointPrefix& x,
                         std::size_t n, std::size_t k) {
  require_n(n);
  require_matching(mu, phi);
  x.head(n + k + phi.range() - 1);
  return (neg_log_ball(mu, x, n, k) + birkhoff_sum(phi, x, n)) / static_cast<double>(n);
}

Decomposition decomposition_check(const MarkovMeasure& mu, const LocallyConstantPotential& phi,
                                  const PointPrefix& x, std::size_t n, std::size_t k) {
  const double lhs = local_pressure_at(mu, phi, x, n, k);
  const double rhs = local_entropy_at(mu, x, n, k) + birkhoff_sum(phi, x, n) / static_cast<double>(n);
  return {lhs, rhs};
}

double invariance_defect(const MarkovMeasure& mu, const LocallyConstantPotential& phi, const PointPrefix& x,
                         std::size_t n, std::size_t k) {
  if (n < 2) throw InvalidArgument("invariance defect needs n >= 2");
  const double here = local_pressure_at(mu, phi, x, n, k);
  const double there = local_pressure_at(mu, phi, shift(x, 1), n - 1, k);
  return std::abs(there - here);
}

LocalPressureEstimate estimate_local_pressure(const MarkovMeasure& mu, const LocallyConstantPotential& phi,
                                              const PointPrefix& x, std::span<const GridCell> grid,
                                              std::size_t point_id) {
  require_matching(mu, phi);
  if (grid.empty()) throw InvalidArgument("empty estimation grid");
  std::size_t max_length = 0;
  std::size_t max_n = 0;
  for (const auto& cell : grid) {
    require_n(cell.n);
    max_length = std::max(max_length, cell.n + cell.k);
    max_n = std::max(max_n, cell.n);
    x.head(cell.n + cell.k + phi.range() - 1);
  }
  const PointProfile profile(mu, phi, x, max_length, max_n);

  LocalPressureEstimate est;
  est.point_id = point_id;
  est.grid.assign(grid.begin(), grid.end());
  est.values.reserve(grid.size());
  est.entropy_values.reserve(grid.size());
  for (const auto& cell : grid) {
    const double neg_log = checked_neg_log(profile.log_mass[cell.n + cell.k]);
    const auto n = static_cast<double>(cell.n);
    est.values.push_back((neg_log + profile.birkhoff[cell.n]) / n);
    est.entropy_values.push_back(neg_log / n);
  }

  std::vector<std::size_t> ks;
  for (const auto& cell : grid) ks.push_back(cell.k);
  std::sort(ks.begin(), ks.end());
  ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
  for (std::size_t k : ks) {
    std::vector<std::pair<std::size_t, double>> series;
    for (std::size_t c = 0; c < grid.size(); ++c)
      if (grid[c].k == k) series.emplace_back(grid[c].n, est.values[c]);
    std::sort(series.begin(), series.end());
    const std::size_t tail = std::max<std::size_t>(1, (series.size() + 3) / 4);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (std::size_t i = series.size() - tail; i < series.size(); ++i) {
      lo = std::min(lo, series[i].second);
      hi = std::max(hi, series[i].second);
    }
    est.tails.push_back({k, series.back().second, hi - lo});
  }
  est.extrapolated = est.tails.back().value;
  return est;
}

TheoremAReport verify_theorem_a(const MarkovMeasure& mu, const LocallyConstantPotential& phi,
                                const SampleBatch& batch, std::span<const GridCell> grid, unsigned threads) {
  require_matching(mu, phi);
  if (batch.points.empty()) throw InvalidArgument("empty sample batch");
  if (batch.measure_id != mu.fingerprint()) throw InvalidArgument("sample batch was not drawn from this measure");
  if (grid.empty()) throw InvalidArgument("empty estimation grid");

  TheoremAReport report;
  report.finest = *std::max_element(grid.begin(), grid.end(), [](const GridCell& a, const GridCell& b) {
    return a.k != b.k ? a.k < b.k : a.n < b.n;
  });
  const auto finest_index = static_cast<std::size_t>(std::find(grid.begin(), grid.end(), report.finest) - grid.begin());

  const std::size_t count = batch.points.size();
  report.per_point.resize(count);
  Vector defects(count, 0.0);
  parallel_for(count, threads, [&](std::size_t i) {
    report.per_point[i] = estimate_local_pressure(mu, phi, batch.points[i], grid, i);
    if (report.finest.n >= 2)
      defects[i] = invariance_defect(mu, phi, batch.points[i], report.finest.n, report.finest.k);
  });

  double sum = 0.0;
  double defect_sum = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    sum += report.per_point[i].values[finest_index];
    defect_sum += defects[i];
  }
  report.sample_mean = sum / static_cast<double>(count);
  report.invariance_defect = defect_sum / static_cast<double>(count);
  double squares = 0.0;
  for (const auto& p : report.per_point) {
    const double d = p.values[finest_index] - report.sample_mean;
    squares += d * d;
  }
  report.sample_std = count > 1 ? std::sqrt(squares / static_cast<double>(count - 1)) : 0.0;
  report.target = entropy(mu) + integral(mu, phi);
  return report;
}

}  // namespace thermo
