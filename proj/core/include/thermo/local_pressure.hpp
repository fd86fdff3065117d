#pragma once

#include <compare>
#include <cstddef>
#include <span>
#include <vector>

#include "thermo/measures.hpp"
#include "thermo/potential.hpp"
#include "thermo/symbolic.hpp"

namespace thermo {

/// One finite scale: n iterates, radius 2^-k.
struct GridCell {
  std::size_t n = 0;
  std::size_t k = 0;
  friend auto operator<=>(const GridCell&, const GridCell&) = default;
};

/// Cartesian product, ordered by k then n.
std::vector<GridCell> make_grid(std::span<const std::size_t> n_grid, std::span<const std::size_t> k_grid);

/// [-log mu(B_n(x, 2^-k)) + S_n phi(x)] / n.
/// Needs n + k + r - 1 <= capacity; SupportError if the ball has zero mass.
double local_pressure_at(const MarkovMeasure& mu, const LocallyConstantPotential& phi,
                         const PointPrefix& x, std::size_t n, std::size_t k);

/// -log mu(B_n(x, 2^-k)) / n. Needs n + k <= capacity.
double local_entropy_at(const MarkovMeasure& mu, const PointPrefix& x, std::size_t n, std::size_t k);

struct Decomposition {
  double lhs = 0.0;  ///< local pressure
  double rhs = 0.0;  ///< local entropy + S_n phi / n
};

Decomposition decomposition_check(const MarkovMeasure& mu, const LocallyConstantPotential& phi,
                                  const PointPrefix& x, std::size_t n, std::size_t k);

/// |local pressure at f(x) on (n - 1, k) - local pressure at x on (n, k)|.
/// The ball of f(x) with n - 1 iterates is the tail of the ball of x, so
/// both use the same coordinates.
double invariance_defect(const MarkovMeasure& mu, const LocallyConstantPotential& phi,
                         const PointPrefix& x, std::size_t n, std::size_t k);

struct TailSummary {
  std::size_t k = 0;
  double value = 0.0;        ///< estimate at the largest n for this k
  double oscillation = 0.0;  ///< max - min over the last quarter of the n-grid
};

struct LocalPressureEstimate {
  std::size_t point_id = 0;
  std::vector<GridCell> grid;
  Vector values;          ///< local pressure per grid cell
  Vector entropy_values;  ///< local entropy per grid cell
  std::vector<TailSummary> tails;
  double extrapolated = 0.0;  ///< tail value at the largest k
};

LocalPressureEstimate estimate_local_pressure(const MarkovMeasure& mu, const LocallyConstantPotential& phi,
                                              const PointPrefix& x, std::span<const GridCell> grid,
                                              std::size_t point_id = 0);

struct TheoremAReport {
  GridCell finest;
  double sample_mean = 0.0;  ///< over points, at the finest cell
  double sample_std = 0.0;   ///< sample standard deviation (N - 1 denominator)
  double target = 0.0;       ///< entropy(mu) + integral(mu, phi)
  double invariance_defect = 0.0;  ///< mean invariance defect at the finest cell
  std::vector<LocalPressureEstimate> per_point;
};

/// Evaluates every point of the batch on the grid and compares the batch mean
/// at (max n, max k) with the metric pressure. Reductions run in point order,
/// so the report does not depend on `threads`.
TheoremAReport verify_theorem_a(const MarkovMeasure& mu, const LocallyConstantPotential& phi,
                                const SampleBatch& batch, std::span<const GridCell> grid,
                                unsigned threads = 1);

}  // namespace thermo
