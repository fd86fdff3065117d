#include "thermo/pressure.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <string>

#include "thermo/error.hpp"

namespace thermo {

namespace {

constexpr double kPerronTol = 1e-13;
constexpr std::size_t kPerronMaxIterations = 100000;

struct Eigenpair {
  double value = 0.0;
  Vector vector;
  std::size_t iterations = 0;
  double residual = 0.0;
};

// Power iteration with max-norm normalisation from the all-ones vector.
Eigenpair perron_eigenpair(const Matrix& l) {
  Vector v(l.rows(), 1.0);
  for (std::size_t it = 1; it <= kPerronMaxIterations; ++it) {
    Vector w = multiply(l, v);
    const double lambda = *std::max_element(w.begin(), w.end());
    if (!(lambda > 0.0) || !std::isfinite(lambda)) throw Error("transfer matrix has no positive Perron root");
    double residual = 0.0;
    for (std::size_t i = 0; i < w.size(); ++i) residual = std::max(residual, std::abs(w[i] - lambda * v[i]));
    residual /= lambda;
    if (residual <= kPerronTol) return {lambda, std::move(v), it, residual};
    for (double& x : w) x /= lambda;
    v = std::move(w);
  }
  throw Error("power iteration did not converge within " + std::to_string(kPerronMaxIterations) + " iterations");
}

void require_primitive(const SubshiftOfFiniteType& sft) {
  const std::size_t p = sft.period();
  if (p == 0) throw ReducibleError("shift space is not irreducible");
  if (p != 1)
    throw ReducibleError("shift space has period " + std::to_string(p) +
                         "; the Perron solver requires a primitive transition matrix");
}

void require_matching(const SubshiftOfFiniteType& sft, const LocallyConstantPotential& phi) {
  if (phi.alphabet_size() != sft.alphabet_size())
    throw InvalidArgument("potential alphabet (" + std::to_string(phi.alphabet_size()) +
                          ") differs from the shift space alphabet (" + std::to_string(sft.alphabet_size()) + ")");
}

}  // namespace

Matrix transfer_matrix(const SubshiftOfFiniteType& sft, const LocallyConstantPotential& phi) {
  require_matching(sft, phi);
  if (phi.range() > 2) throw InvalidArgument("transfer_matrix needs range <= 2; block_recode the potential first");
  const std::size_t m = sft.alphabet_size();
  Matrix l(m, m);
  for (Symbol i = 0; i < m; ++i)
    for (Symbol j = 0; j < m; ++j) {
      if (!sft.allowed(i, j)) continue;
      const Symbol pair[2] = {i, j};
      l(i, j) = std::exp(phi(std::span<const Symbol>(pair, phi.range())));
    }
  return l;
}

PressureReport topological_pressure(const SubshiftOfFiniteType& sft, const LocallyConstantPotential& phi) {
  require_matching(sft, phi);
  if (phi.range() > 2) {
    const auto recoding = block_recode(sft, phi);
    PressureReport report = topological_pressure(recoding.shift_space, recoding.potential);
    report.recoded = true;
    return report;
  }
  require_primitive(sft);
  const Matrix l = transfer_matrix(sft, phi);
  Eigenpair right = perron_eigenpair(l);
  Eigenpair left = perron_eigenpair(l.transposed());

  double overlap = 0.0;
  for (std::size_t i = 0; i < right.vector.size(); ++i) overlap += left.vector[i] * right.vector[i];
  for (double& x : left.vector) x /= overlap;

  PressureReport report;
  report.perron_eigenvalue = right.value;
  report.value = std::log(right.value);
  report.right_eigvec = std::move(right.vector);
  report.left_eigvec = std::move(left.vector);
  report.iterations = std::max(right.iterations, left.iterations);
  report.residual = std::max(right.residual, left.residual);
  return report;
}

double partition_function_oracle(const SubshiftOfFiniteType& sft, const LocallyConstantPotential& phi,
                                 std::size_t n, std::size_t budget) {
  require_matching(sft, phi);
  const std::size_t m = sft.alphabet_size();
  // admissible-word count by dynamic programming, so the budget bounds real work
  Vector ending(m, 1.0);
  for (std::size_t len = 1; len <= n; ++len) {
    const double words = std::accumulate(ending.begin(), ending.end(), 0.0);
    if (words > static_cast<double>(budget))
      throw InvalidArgument("enumeration budget exceeded for n = " + std::to_string(n));
    if (len == n) break;
    Vector next(m, 0.0);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        if (sft.allowed(a, b)) next[b] += ending[a];
    ending = std::move(next);
  }
  if (n == 0) return 1.0;

  const std::size_t r = phi.range();
  std::vector<Symbol> word(n);
  std::vector<double> partial(n + 1, 0.0);  // partial[d] = weight sum over windows ending before depth d
  double total = 0.0;

  auto descend = [&](auto&& self, std::size_t depth) -> void {
    for (Symbol s = 0; s < m; ++s) {
      if (depth > 0 && !sft.allowed(word[depth - 1], s)) continue;
      word[depth] = s;
      double acc = partial[depth];
      if (depth + 1 >= r) acc += phi(std::span<const Symbol>(word).subspan(depth + 1 - r, r));
      partial[depth + 1] = acc;
      if (depth + 1 == n) {
        total += std::exp(acc);
      } else {
        self(self, depth + 1);
      }
    }
  };
  descend(descend, 0);
  return total;
}

MarkovMeasure equilibrium_measure(const SubshiftOfFiniteType& sft, const LocallyConstantPotential& phi) {
  require_matching(sft, phi);
  if (phi.range() > 2) throw InvalidArgument("equilibrium_measure needs range <= 2; block_recode the potential first");
  const PressureReport report = topological_pressure(sft, phi);
  const Matrix l = transfer_matrix(sft, phi);
  const std::size_t m = sft.alphabet_size();
  const auto& h = report.right_eigvec;
  const auto& nu = report.left_eigvec;

  Matrix q(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      q(i, j) = l(i, j) * h[j] / (report.perron_eigenvalue * h[i]);
      row += q(i, j);
    }
    for (std::size_t j = 0; j < m; ++j) q(i, j) /= row;
  }
  Vector pi(m);
  double total = 0.0;
  for (std::size_t i = 0; i < m; ++i) total += pi[i] = nu[i] * h[i];
  for (double& p : pi) p /= total;
  return MarkovMeasure::create(sft, std::move(q), std::move(pi));
}

Word BlockRecoding::encode(const Word& original) const {
  if (original.size() < block_length)
    throw InvalidArgument("word shorter than the block length cannot be recoded");
  std::vector<Symbol> out;
  out.reserve(original.size() - block_length + 1);
  for (std::size_t i = 0; i + block_length <= original.size(); ++i) {
    const Word block(std::vector<Symbol>(original.begin() + static_cast<std::ptrdiff_t>(i),
                                         original.begin() + static_cast<std::ptrdiff_t>(i + block_length)));
    const auto it = std::lower_bound(blocks.begin(), blocks.end(), block);
    if (it == blocks.end() || *it != block) throw InvalidArgument("word contains an inadmissible block");
    out.push_back(static_cast<Symbol>(it - blocks.begin()));
  }
  return Word(std::move(out));
}

Word BlockRecoding::decode(const Word& recoded) const {
  if (recoded.empty()) return {};
  std::vector<Symbol> out;
  for (std::size_t i = 0; i < recoded.size(); ++i) {
    if (recoded[i] >= blocks.size()) throw InvalidArgument("recoded symbol outside the block alphabet");
    const Word& block = blocks[recoded[i]];
    if (i == 0) {
      out.assign(block.begin(), block.end());
      continue;
    }
    if (!std::equal(block.begin(), block.end() - 1, out.end() - static_cast<std::ptrdiff_t>(block_length - 1)))
      throw InvalidArgument("consecutive blocks do not overlap");
    out.push_back(block[block_length - 1]);
  }
  return Word(std::move(out));
}

BlockRecoding block_recode(const SubshiftOfFiniteType& sft, const LocallyConstantPotential& phi) {
  require_matching(sft, phi);
  const std::size_t r = phi.range();
  if (r < 3) throw InvalidArgument("block_recode needs range >= 3");
  const std::size_t block_length = r - 1;
  std::vector<Word> blocks = sft.admissible_words(block_length);  // lexicographic
  const std::size_t size = blocks.size();

  std::vector<std::vector<int>> transition(size, std::vector<int>(size, 0));
  std::vector<double> table(size * size, 0.0);
  std::vector<Symbol> glued(r);
  for (std::size_t u = 0; u < size; ++u)
    for (std::size_t v = 0; v < size; ++v) {
      const Word& a = blocks[u];
      const Word& b = blocks[v];
      if (!std::equal(a.begin() + 1, a.end(), b.begin())) continue;
      std::copy(a.begin(), a.end(), glued.begin());
      glued[r - 1] = b[block_length - 1];
      if (!sft.is_admissible(glued)) continue;
      transition[u][v] = 1;
      table[u * size + v] = phi(glued);
    }
  return BlockRecoding{SubshiftOfFiniteType(std::move(transition)),
                       LocallyConstantPotential(size, 2, std::move(table)), std::move(blocks), block_length};
}

}  // namespace thermo
