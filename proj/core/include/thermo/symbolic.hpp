#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <vector>

namespace thermo {

class LocallyConstantPotential;

using Symbol = std::uint32_t;

/// A finite word over {0, ..., m-1}. Words of length n name cylinder sets;
/// the empty word names the whole space.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Symbol> symbols) : symbols_(std::move(symbols)) {}
  Word(std::initializer_list<Symbol> symbols) : symbols_(symbols) {}

  std::size_t size() const noexcept { return symbols_.size(); }
  bool empty() const noexcept { return symbols_.empty(); }
  Symbol operator[](std::size_t i) const noexcept { return symbols_[i]; }
  std::span<const Symbol> symbols() const noexcept { return symbols_; }
  auto begin() const noexcept { return symbols_.begin(); }
  auto end() const noexcept { return symbols_.end(); }

  Word prefix(std::size_t length) const;
  Word suffix(std::size_t from) const;
  /// True when this word is a prefix of `other` (cylinder of `other` nests in ours).
  bool is_prefix_of(const Word& other) const noexcept;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Symbol> symbols_;
};

/// One-sided subshift of finite type given by a 0/1 transition matrix.
/// Every symbol must have at least one successor and one predecessor.
class SubshiftOfFiniteType {
 public:
  explicit SubshiftOfFiniteType(std::vector<std::vector<int>> transition);

  static SubshiftOfFiniteType full_shift(std::size_t alphabet_size);
  /// Transition [[1,1],[1,0]]: the word 11 is forbidden.
  static SubshiftOfFiniteType golden_mean();

  std::size_t alphabet_size() const noexcept { return size_; }
  bool allowed(Symbol from, Symbol to) const noexcept { return allowed_[from * size_ + to] != 0; }
  std::vector<std::vector<int>> transition() const;

  /// Throws InvalidArgument for symbols outside the alphabet.
  bool is_admissible(std::span<const Symbol> word) const;
  bool is_irreducible() const;
  /// Greatest common divisor of cycle lengths; 0 for a reducible graph.
  std::size_t period() const;
  bool is_primitive() const { return period() == 1; }

  /// Calls visit(word) for every admissible word of the given length, in
  /// lexicographic order.
  void for_each_admissible_word(std::size_t length,
                                const std::function<void(std::span<const Symbol>)>& visit) const;
  std::vector<Word> admissible_words(std::size_t length) const;

  friend bool operator==(const SubshiftOfFiniteType&, const SubshiftOfFiniteType&) = default;

 private:
  std::size_t size_ = 0;
  std::vector<std::uint8_t> allowed_;
};

bool is_admissible(const SubshiftOfFiniteType& sft, const Word& w);

/// Finite prefix of a point x in the shift space. Any request for a
/// coordinate at index >= capacity() raises CapacityError.
class PointPrefix {
 public:
  /// Validates admissibility of `word` against `sft`.
  PointPrefix(const SubshiftOfFiniteType& sft, Word word);

  std::size_t capacity() const noexcept { return word_.size(); }
  const Word& word() const noexcept { return word_; }
  Symbol at(std::size_t i) const;
  /// Coordinates [0, length); throws CapacityError if length > capacity().
  std::span<const Symbol> head(std::size_t length) const;

  friend bool operator==(const PointPrefix&, const PointPrefix&) = default;

 private:
  explicit PointPrefix(Word admissible_word) : word_(std::move(admissible_word)) {}
  friend PointPrefix shift(const PointPrefix& x, std::size_t k);

  Word word_;
};

/// f^k(x): drops the first k symbols; capacity shrinks by k.
PointPrefix shift(const PointPrefix& x, std::size_t k);

/// The word whose cylinder equals the dynamical ball B_n(x, 2^-k) under
/// d(u, v) = 2^-min{i : u_i != v_i}: the length-(n + k) prefix of x.
Word dynamical_ball_cylinder(std::size_t n, std::size_t k, const PointPrefix& x);

/// S_n phi(x) = sum_{i<n} phi(x_i, ..., x_{i+r-1}). Needs n + r - 1 <= capacity.
double birkhoff_sum(const LocallyConstantPotential& phi, const PointPrefix& x, std::size_t n);

}  // namespace thermo
