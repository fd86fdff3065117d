#include "thermo/measures.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <string>

#include "thermo/error.hpp"
#include "thermo/parallel.hpp"

namespace thermo {

namespace {

constexpr double kRowSumTol = 1e-12;
constexpr double kStationaryTol = 1e-10;

void require_stochastic(const Matrix& q) {
  if (!q.square() || q.rows() == 0) throw InvalidArgument("stochastic matrix must be square and non-empty");
  for (std::size_t i = 0; i < q.rows(); ++i) {
    double sum = 0.0;
    for (double v : q.row(i)) {
      if (!(v >= 0.0) || !std::isfinite(v)) throw InvalidArgument("stochastic matrix entries must be in [0, 1]");
      sum += v;
    }
    if (std::abs(sum - 1.0) > kRowSumTol)
      throw InvalidArgument("row " + std::to_string(i) + " of the stochastic matrix sums to " + std::to_string(sum));
  }
}

// Communicating classes from the reachability closure of the support graph.
std::vector<std::vector<std::size_t>> communicating_classes(const Matrix& q) {
  const std::size_t m = q.rows();
  std::vector<std::vector<bool>> reach(m, std::vector<bool>(m, false));
  for (std::size_t i = 0; i < m; ++i) {
    reach[i][i] = true;
    for (std::size_t j = 0; j < m; ++j)
      if (q(i, j) > 0.0) reach[i][j] = true;
  }
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i)
      if (reach[i][k])
        for (std::size_t j = 0; j < m; ++j)
          if (reach[k][j]) reach[i][j] = true;

  std::vector<std::vector<std::size_t>> classes;
  std::vector<bool> assigned(m, false);
  for (std::size_t i = 0; i < m; ++i) {
    if (assigned[i]) continue;
    std::vector<std::size_t> cls;
    for (std::size_t j = i; j < m; ++j)
      if (!assigned[j] && reach[i][j] && reach[j][i]) {
        cls.push_back(j);
        assigned[j] = true;
      }
    classes.push_back(std::move(cls));
  }
  return classes;
}

std::string describe_classes(const std::vector<std::vector<std::size_t>>& classes) {
  std::ostringstream out;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    out << (c ? ", " : "") << '{';
    for (std::size_t i = 0; i < classes[c].size(); ++i) out << (i ? "," : "") << classes[c][i];
    out << '}';
  }
  return out.str();
}

// Solves A x = b in place by Gaussian elimination with partial pivoting.
Vector solve(Matrix a, Vector b) {
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a(r, col)) > std::abs(a(pivot, col))) pivot = r;
    if (std::abs(a(pivot, col)) < 1e-300) throw Error("singular system in stationary_vector");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(pivot, j));
      std::swap(b[col], b[pivot]);
    }
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a(r, col) / a(col, col);
      if (f == 0.0) continue;
      for (std::size_t j = col; j < n; ++j) a(r, j) -= f * a(col, j);
      b[r] -= f * b[col];
    }
  }
  Vector x(n);
  for (std::size_t i = n; i-- > 0;) {
    double s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = s / a(i, i);
  }
  return x;
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

double unit_uniform(std::mt19937_64& gen) { return static_cast<double>(gen() >> 11) * 0x1.0p-53; }

Symbol draw(std::span<const double> probabilities, double u) {
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t s = 0; s < probabilities.size(); ++s) {
    if (probabilities[s] <= 0.0) continue;
    last_positive = s;
    cumulative += probabilities[s];
    if (u < cumulative) return static_cast<Symbol>(s);
  }
  return static_cast<Symbol>(last_positive);
}

}  // namespace

Vector stationary_vector(const Matrix& stochastic) {
  require_stochastic(stochastic);
  const auto classes = communicating_classes(stochastic);
  if (classes.size() != 1)
    throw ReducibleError("stochastic matrix is reducible; communicating classes " + describe_classes(classes));

  // (Q^T - I) pi = 0 with the last equation replaced by sum(pi) = 1.
  const std::size_t m = stochastic.rows();
  Matrix a = stochastic.transposed();
  for (std::size_t i = 0; i < m; ++i) a(i, i) -= 1.0;
  for (std::size_t j = 0; j < m; ++j) a(m - 1, j) = 1.0;
  Vector b(m, 0.0);
  b[m - 1] = 1.0;
  Vector pi = solve(std::move(a), std::move(b));
  double total = 0.0;
  for (double& p : pi) {
    p = std::max(p, 0.0);
    total += p;
  }
  for (double& p : pi) p /= total;
  return pi;
}

MarkovMeasure::MarkovMeasure(SubshiftOfFiniteType sft, Matrix q, Vector pi)
    : sft_(std::move(sft)), q_(std::move(q)), pi_(std::move(pi)), log_q_(q_.rows(), q_.cols()), log_pi_(pi_.size()) {
  for (std::size_t i = 0; i < q_.rows(); ++i) {
    log_pi_[i] = std::log(pi_[i]);
    for (std::size_t j = 0; j < q_.cols(); ++j) log_q_(i, j) = std::log(q_(i, j));
  }
}

MarkovMeasure MarkovMeasure::create(const SubshiftOfFiniteType& sft, Matrix stochastic, Vector stationary) {
  const std::size_t m = sft.alphabet_size();
  if (stochastic.rows() != m || stochastic.cols() != m || stationary.size() != m)
    throw InvalidArgument("measure dimensions do not match the alphabet size " + std::to_string(m));
  require_stochastic(stochastic);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (stochastic(i, j) > 0.0 && !sft.allowed(static_cast<Symbol>(i), static_cast<Symbol>(j)))
        throw InvalidArgument("stochastic matrix charges forbidden transition " + std::to_string(i) + "->" +
                              std::to_string(j));

  double total = 0.0;
  for (double p : stationary) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw InvalidArgument("stationary vector entries must be non-negative");
    total += p;
  }
  if (std::abs(total - 1.0) > kRowSumTol) throw InvalidArgument("stationary vector does not sum to 1");
  const Vector moved = multiply(stationary, stochastic);
  if (max_abs_difference(moved, stationary) > kStationaryTol)
    throw HypothesisError("stationary vector is not invariant under the stochastic matrix");

  // Atomic exactly when the support is a single periodic orbit: every
  // supported row has one successor.
  bool permutation = true;
  for (std::size_t i = 0; i < m && permutation; ++i) {
    if (stationary[i] <= 0.0) continue;
    std::size_t successors = 0;
    for (std::size_t j = 0; j < m; ++j)
      if (stationary[j] > 0.0 && stochastic(i, j) > 0.0) ++successors;
    permutation = successors == 1;
  }
  if (permutation) throw HypothesisError("measure is atomic: its support is a single periodic orbit");

  return MarkovMeasure(sft, std::move(stochastic), std::move(stationary));
}

MarkovMeasure MarkovMeasure::from_stochastic(const SubshiftOfFiniteType& sft, Matrix stochastic) {
  if (stochastic.rows() != sft.alphabet_size())
    throw InvalidArgument("stochastic matrix does not match the alphabet size");
  Vector pi = stationary_vector(stochastic);
  return create(sft, std::move(stochastic), std::move(pi));
}

MarkovMeasure MarkovMeasure::bernoulli(const SubshiftOfFiniteType& sft, Vector probabilities) {
  const std::size_t m = sft.alphabet_size();
  if (probabilities.size() != m) throw InvalidArgument("Bernoulli weights do not match the alphabet size");
  Matrix q(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) q(i, j) = probabilities[j];
  return create(sft, std::move(q), std::move(probabilities));
}

std::uint64_t MarkovMeasure::fingerprint() const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    for (int b = 0; b < 8; ++b) {
      h ^= (bits >> (8 * b)) & 0xffU;
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<double>(q_.rows()));
  for (std::size_t i = 0; i < q_.rows(); ++i)
    for (double v : q_.row(i)) mix(v);
  for (double v : pi_) mix(v);
  return h;
}

namespace {

void check_symbols(const MarkovMeasure& mu, std::span<const Symbol> w) {
  for (Symbol s : w)
    if (s >= mu.alphabet_size()) throw InvalidArgument("symbol " + std::to_string(s) + " outside the alphabet");
}

}  // namespace

double cylinder_measure(const MarkovMeasure& mu, std::span<const Symbol> w) {
  check_symbols(mu, w);
  if (w.empty()) return 1.0;
  double mass = mu.stationary()[w[0]];
  for (std::size_t i = 0; i + 1 < w.size() && mass > 0.0; ++i) mass *= mu.stochastic()(w[i], w[i + 1]);
  return mass;
}

double cylinder_measure(const MarkovMeasure& mu, const Word& w) { return cylinder_measure(mu, w.symbols()); }

double log_cylinder_measure(const MarkovMeasure& mu, std::span<const Symbol> w) {
  check_symbols(mu, w);
  if (w.empty()) return 0.0;
  double log_mass = mu.log_stationary(w[0]);
  for (std::size_t i = 0; i + 1 < w.size(); ++i) log_mass += mu.log_transition(w[i], w[i + 1]);
  return log_mass;
}

double entropy(const MarkovMeasure& mu) {
  const auto& q = mu.stochastic();
  const auto& pi = mu.stationary();
  double h = 0.0;
  for (std::size_t i = 0; i < q.rows(); ++i) {
    double row = 0.0;
    for (double p : q.row(i))
      if (p > 0.0) row -= p * std::log(p);
    h += pi[i] * row;
  }
  return h;
}

double integral(const MarkovMeasure& mu, const LocallyConstantPotential& phi) {
  if (phi.alphabet_size() != mu.alphabet_size()) throw InvalidArgument("potential and measure alphabets differ");
  double total = 0.0;
  mu.shift_space().for_each_admissible_word(phi.range(), [&](std::span<const Symbol> w) {
    const double mass = cylinder_measure(mu, w);
    if (mass > 0.0) total += mass * phi(w);
  });
  return total;
}

double birkhoff_average_oracle(const LocallyConstantPotential& phi, const PointPrefix& x, std::size_t n) {
  if (n == 0) throw InvalidArgument("Birkhoff average needs n >= 1");
  return birkhoff_sum(phi, x, n) / static_cast<double>(n);
}

SampleBatch sample(const MarkovMeasure& mu, std::size_t count, std::size_t capacity, std::uint64_t seed,
                   unsigned threads) {
  if (count == 0 || capacity == 0) throw InvalidArgument("sample needs count >= 1 and capacity >= 1");
  std::vector<std::vector<Symbol>> words(count);
  parallel_for(count, threads, [&](std::size_t index) {
    std::uint64_t state = seed ^ (0xD1B54A32D192ED03ULL * (index + 1));
    std::mt19937_64 gen(splitmix64(state));
    auto& w = words[index];
    w.resize(capacity);
    w[0] = draw(mu.stationary(), unit_uniform(gen));
    for (std::size_t i = 1; i < capacity; ++i) w[i] = draw(mu.stochastic().row(w[i - 1]), unit_uniform(gen));
  });
  SampleBatch batch;
  batch.seed = seed;
  batch.measure_id = mu.fingerprint();
  batch.capacity = capacity;
  batch.points.reserve(count);
  for (auto& w : words) batch.points.emplace_back(mu.shift_space(), Word(std::move(w)));
  return batch;
}

}  // namespace thermo
