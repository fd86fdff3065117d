#include "thermo/potential.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "thermo/error.hpp"

namespace thermo {

namespace {

std::size_t checked_power(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (out > (std::size_t{1} << 40) / base) throw InvalidArgument("potential table too large");
    out *= base;
  }
  return out;
}

}  // namespace

LocallyConstantPotential::LocallyConstantPotential(std::size_t alphabet_size, std::size_t range,
                                                   std::vector<double> table)
    : alphabet_size_(alphabet_size), range_(range), table_(std::move(table)) {
  if (alphabet_size_ == 0) throw InvalidArgument("potential alphabet must be non-empty");
  if (range_ == 0) throw InvalidArgument("potential range must be at least 1");
  const std::size_t expected = checked_power(alphabet_size_, range_);
  if (table_.size() != expected)
    throw InvalidArgument("potential table has " + std::to_string(table_.size()) + " entries, expected " +
                          std::to_string(expected));
  if (!std::all_of(table_.begin(), table_.end(), [](double v) { return std::isfinite(v); }))
    throw InvalidArgument("potential table must be finite");
}

LocallyConstantPotential LocallyConstantPotential::zero(std::size_t alphabet_size) {
  return constant(alphabet_size, 0.0);
}

LocallyConstantPotential LocallyConstantPotential::constant(std::size_t alphabet_size, double value) {
  return LocallyConstantPotential(alphabet_size, 1, std::vector<double>(alphabet_size, value));
}

LocallyConstantPotential LocallyConstantPotential::from_function(
    std::size_t alphabet_size, std::size_t range, const std::function<double(std::span<const Symbol>)>& fn) {
  const std::size_t size = checked_power(alphabet_size, range);
  std::vector<double> table(size);
  std::vector<Symbol> word(range);
  for (std::size_t index = 0; index < size; ++index) {
    std::size_t rest = index;
    for (std::size_t i = range; i-- > 0;) {
      word[i] = static_cast<Symbol>(rest % alphabet_size);
      rest /= alphabet_size;
    }
    table[index] = fn(word);
  }
  return LocallyConstantPotential(alphabet_size, range, std::move(table));
}

std::size_t LocallyConstantPotential::index_of(std::span<const Symbol> window) const {
  if (window.size() < range_) throw CapacityError("potential window shorter than its range");
  std::size_t index = 0;
  for (std::size_t i = 0; i < range_; ++i) {
    if (window[i] >= alphabet_size_) throw InvalidArgument("symbol outside the potential's alphabet");
    index = index * alphabet_size_ + window[i];
  }
  return index;
}

double LocallyConstantPotential::operator()(std::span<const Symbol> window) const {
  return table_[index_of(window)];
}

double LocallyConstantPotential::max_abs() const {
  double m = 0.0;
  for (double v : table_) m = std::max(m, std::abs(v));
  return m;
}

LocallyConstantPotential LocallyConstantPotential::extended_to(std::size_t range) const {
  if (range < range_) throw InvalidArgument("cannot shorten a potential's range");
  return from_function(alphabet_size_, range, [this](std::span<const Symbol> w) { return (*this)(w); });
}

LocallyConstantPotential LocallyConstantPotential::plus(double c) const {
  std::vector<double> table = table_;
  for (double& v : table) v += c;
  return LocallyConstantPotential(alphabet_size_, range_, std::move(table));
}

}  // namespace thermo
