#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "thermo/matrix.hpp"
#include "thermo/potential.hpp"
#include "thermo/symbolic.hpp"

namespace thermo {

/// Unique probability vector pi with pi Q = pi. Q must be row-stochastic and
/// irreducible; a reducible Q raises ReducibleError listing its communicating
/// classes.
Vector stationary_vector(const Matrix& stochastic);

/// Stationary Markov measure on a subshift of finite type.
///
/// Invariants enforced at construction:
///   - rows of Q sum to 1 within 1e-12, entries non-negative;
///   - Q[i][j] > 0 only where the transition matrix allows i -> j;
///   - pi is a probability vector (sum 1 within 1e-12) with |pi Q - pi|_inf <= 1e-10;
///   - non-atomic: Q restricted to the support of pi is not a permutation matrix.
class MarkovMeasure {
 public:
  static MarkovMeasure create(const SubshiftOfFiniteType& sft, Matrix stochastic, Vector stationary);
  /// Computes pi with stationary_vector().
  static MarkovMeasure from_stochastic(const SubshiftOfFiniteType& sft, Matrix stochastic);
  /// i.i.d. symbols with law p; requires a shift space allowing every pair in the support of p.
  static MarkovMeasure bernoulli(const SubshiftOfFiniteType& sft, Vector probabilities);

  const SubshiftOfFiniteType& shift_space() const noexcept { return sft_; }
  std::size_t alphabet_size() const noexcept { return sft_.alphabet_size(); }
  const Matrix& stochastic() const noexcept { return q_; }
  const Vector& stationary() const noexcept { return pi_; }
  double log_transition(Symbol from, Symbol to) const noexcept { return log_q_(from, to); }
  double log_stationary(Symbol s) const noexcept { return log_pi_[s]; }

  /// Stable 64-bit digest of (Q, pi); used as the measure id in sample batches.
  std::uint64_t fingerprint() const noexcept;

 private:
  MarkovMeasure(SubshiftOfFiniteType sft, Matrix q, Vector pi);

  SubshiftOfFiniteType sft_;
  Matrix q_;
  Vector pi_;
  Matrix log_q_;
  Vector log_pi_;
};

/// pi[w0] * prod Q[w_i][w_{i+1}]; 1 for the empty word, exactly 0 for words
/// outside the support. Symbols out of range raise InvalidArgument.
double cylinder_measure(const MarkovMeasure& mu, std::span<const Symbol> w);
double cylinder_measure(const MarkovMeasure& mu, const Word& w);

/// Natural log of cylinder_measure, accumulated left to right without
/// underflow. Returns -inf for zero-measure cylinders.
double log_cylinder_measure(const MarkovMeasure& mu, std::span<const Symbol> w);

/// Entropy rate -sum_i pi_i sum_j Q_ij log Q_ij, natural log.
double entropy(const MarkovMeasure& mu);

/// Integral of phi against mu, summing over words of length range().
double integral(const MarkovMeasure& mu, const LocallyConstantPotential& phi);

/// S_n phi(x) / n.
double birkhoff_average_oracle(const LocallyConstantPotential& phi, const PointPrefix& x, std::size_t n);

struct SampleBatch {
  std::vector<PointPrefix> points;
  std::uint64_t seed = 0;
  std::uint64_t measure_id = 0;
  std::size_t capacity = 0;
};

/// Draws `count` independent prefixes of length `capacity`: the first symbol
/// from pi, the rest along the rows of Q. Point i depends only on (seed, i),
/// so the batch is identical for any thread count.
SampleBatch sample(const MarkovMeasure& mu, std::size_t count, std::size_t capacity,
                   std::uint64_t seed, unsigned threads = 1);

}  // namespace thermo
