#pragma once

#include <cstddef>
#include <vector>

#include "thermo/matrix.hpp"
#include "thermo/measures.hpp"
#include "thermo/potential.hpp"
#include "thermo/symbolic.hpp"

namespace thermo {

/// Weighted transition matrix for potentials of range 1 or 2.
///   range 1: L[i][j] = A[i][j] * exp(phi(i))     (weight on the source symbol)
///   range 2: L[i][j] = A[i][j] * exp(phi(i, j))
/// Longer ranges must go through block_recode() first.
Matrix transfer_matrix(const SubshiftOfFiniteType& sft, const LocallyConstantPotential& phi);

struct PressureReport {
  double value = 0.0;              ///< log of the Perron root
  double perron_eigenvalue = 0.0;
  Vector right_eigvec;             ///< max-norm 1
  Vector left_eigvec;              ///< scaled so left . right = 1
  std::size_t iterations = 0;
  double residual = 0.0;           ///< max relative residual of both eigenpairs
  bool recoded = false;            ///< eigenvectors live on the (r-1)-block alphabet
};

/// Topological pressure by power iteration on the transfer matrix. The shift
/// space must be primitive (irreducible and aperiodic); otherwise ReducibleError.
PressureReport topological_pressure(const SubshiftOfFiniteType& sft, const LocallyConstantPotential& phi);

/// Z_n = sum over admissible n-words of exp(sum of phi over the windows that
/// fit inside the word), by explicit enumeration. Throws InvalidArgument when
/// the number of admissible n-words exceeds `budget`.
double partition_function_oracle(const SubshiftOfFiniteType& sft, const LocallyConstantPotential& phi,
                                 std::size_t n, std::size_t budget = std::size_t{1} << 24);

/// Ruelle-Perron-Frobenius Markov measure:
///   Q[i][j] = L[i][j] h[j] / (lambda h[i]),  pi[i] proportional to nu[i] h[i].
/// Requires range <= 2.
MarkovMeasure equilibrium_measure(const SubshiftOfFiniteType& sft, const LocallyConstantPotential& phi);

/// Higher-block presentation of a range-r potential (r >= 3): the new alphabet
/// is the admissible (r-1)-words, u -> v is allowed when they overlap in r-2
/// symbols, and the recoded potential has range 2.
struct BlockRecoding {
  SubshiftOfFiniteType shift_space;
  LocallyConstantPotential potential;
  std::vector<Word> blocks;  ///< blocks[s] is the original word for recoded symbol s
  std::size_t block_length;

  /// Original word of length L >= block_length to a recoded word of length L - block_length + 1.
  Word encode(const Word& original) const;
  Word decode(const Word& recoded) const;
};

BlockRecoding block_recode(const SubshiftOfFiniteType& sft, const LocallyConstantPotential& phi);

}  // namespace thermo
