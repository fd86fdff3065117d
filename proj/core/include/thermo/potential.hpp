#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "thermo/symbolic.hpp"

namespace thermo {

/// A potential depending on the first `range` coordinates. The table has one
/// entry per word of length `range` over the alphabet, in lexicographic order
/// (word w maps to index sum_i w_i * m^(range-1-i)). Entries for inadmissible
/// words are stored but never read by the shift-space operations.
class LocallyConstantPotential {
 public:
  LocallyConstantPotential(std::size_t alphabet_size, std::size_t range, std::vector<double> table);

  static LocallyConstantPotential zero(std::size_t alphabet_size);
  static LocallyConstantPotential constant(std::size_t alphabet_size, double value);
  static LocallyConstantPotential from_function(
      std::size_t alphabet_size, std::size_t range,
      const std::function<double(std::span<const Symbol>)>& fn);

  std::size_t alphabet_size() const noexcept { return alphabet_size_; }
  std::size_t range() const noexcept { return range_; }
  std::span<const double> table() const noexcept { return table_; }

  /// Evaluates on the first range() symbols of `window`.
  double operator()(std::span<const Symbol> window) const;
  std::size_t index_of(std::span<const Symbol> window) const;

  double max_abs() const;
  /// The same function viewed as depending on `range` >= range() coordinates.
  LocallyConstantPotential extended_to(std::size_t range) const;
  LocallyConstantPotential plus(double c) const;

 private:
  std::size_t alphabet_size_;
  std::size_t range_;
  std::vector<double> table_;
};

}  // namespace thermo
