#include "thermo/symbolic.hpp"

#include <numeric>
#include <string>

#include "thermo/error.hpp"
#include "thermo/potential.hpp"

namespace thermo {

Word Word::prefix(std::size_t length) const {
  if (length > symbols_.size()) throw CapacityError("word prefix longer than the word");
  return Word(std::vector<Symbol>(symbols_.begin(), symbols_.begin() + static_cast<std::ptrdiff_t>(length)));
}

Word Word::suffix(std::size_t from) const {
  if (from > symbols_.size()) throw CapacityError("word suffix starts past the end");
  return Word(std::vector<Symbol>(symbols_.begin() + static_cast<std::ptrdiff_t>(from), symbols_.end()));
}

bool Word::is_prefix_of(const Word& other) const noexcept {
  return size() <= other.size() && std::equal(begin(), end(), other.begin());
}

SubshiftOfFiniteType::SubshiftOfFiniteType(std::vector<std::vector<int>> transition)
    : size_(transition.size()), allowed_(size_ * size_, 0) {
  if (size_ == 0) throw InvalidArgument("alphabet must be non-empty");
  for (std::size_t i = 0; i < size_; ++i) {
    if (transition[i].size() != size_) throw InvalidArgument("transition matrix must be square");
    for (std::size_t j = 0; j < size_; ++j) {
      const int a = transition[i][j];
      if (a != 0 && a != 1) throw InvalidArgument("transition entries must be 0 or 1");
      allowed_[i * size_ + j] = static_cast<std::uint8_t>(a);
    }
  }
  for (std::size_t i = 0; i < size_; ++i) {
    bool has_successor = false;
    bool has_predecessor = false;
    for (std::size_t j = 0; j < size_; ++j) {
      has_successor |= allowed_[i * size_ + j] != 0;
      has_predecessor |= allowed_[j * size_ + i] != 0;
    }
    if (!has_successor || !has_predecessor)
      throw InvalidArgument("symbol " + std::to_string(i) + " is dead (empty row or column)");
  }
}

SubshiftOfFiniteType SubshiftOfFiniteType::full_shift(std::size_t alphabet_size) {
  return SubshiftOfFiniteType(std::vector<std::vector<int>>(alphabet_size, std::vector<int>(alphabet_size, 1)));
}

SubshiftOfFiniteType SubshiftOfFiniteType::golden_mean() {
  return SubshiftOfFiniteType({{1, 1}, {1, 0}});
}

std::vector<std::vector<int>> SubshiftOfFiniteType::transition() const {
  std::vector<std::vector<int>> out(size_, std::vector<int>(size_));
  for (std::size_t i = 0; i < size_; ++i)
    for (std::size_t j = 0; j < size_; ++j) out[i][j] = allowed_[i * size_ + j];
  return out;
}

bool SubshiftOfFiniteType::is_admissible(std::span<const Symbol> word) const {
  for (Symbol s : word)
    if (s >= size_) throw InvalidArgument("symbol " + std::to_string(s) + " outside alphabet of size " +
                                          std::to_string(size_));
  for (std::size_t i = 0; i + 1 < word.size(); ++i)
    if (!allowed(word[i], word[i + 1])) return false;
  return true;
}

namespace {

std::vector<std::size_t> bfs_levels(std::size_t size, const std::vector<std::uint8_t>& allowed, bool reverse) {
  constexpr auto unseen = static_cast<std::size_t>(-1);
  std::vector<std::size_t> level(size, unseen);
  std::vector<std::size_t> queue{0};
  level[0] = 0;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const std::size_t u = queue[head];
    for (std::size_t v = 0; v < size; ++v) {
      const bool edge = reverse ? allowed[v * size + u] : allowed[u * size + v];
      if (edge && level[v] == unseen) {
        level[v] = level[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return level;
}

}  // namespace

bool SubshiftOfFiniteType::is_irreducible() const {
  constexpr auto unseen = static_cast<std::size_t>(-1);
  for (bool reverse : {false, true}) {
    const auto level = bfs_levels(size_, allowed_, reverse);
    for (std::size_t l : level)
      if (l == unseen) return false;
  }
  return true;
}

std::size_t SubshiftOfFiniteType::period() const {
  if (!is_irreducible()) return 0;
  // gcd over edges u -> v of level(u) + 1 - level(v)
  const auto level = bfs_levels(size_, allowed_, false);
  std::size_t g = 0;
  for (std::size_t u = 0; u < size_; ++u)
    for (std::size_t v = 0; v < size_; ++v)
      if (allowed(static_cast<Symbol>(u), static_cast<Symbol>(v))) {
        const auto diff = static_cast<long long>(level[u]) + 1 - static_cast<long long>(level[v]);
        g = std::gcd(g, static_cast<std::size_t>(diff < 0 ? -diff : diff));
      }
  return g;
}

void SubshiftOfFiniteType::for_each_admissible_word(
    std::size_t length, const std::function<void(std::span<const Symbol>)>& visit) const {
  std::vector<Symbol> word(length);
  if (length == 0) {
    visit(word);
    return;
  }
  // Iterative depth-first walk over the transition graph.
  std::vector<Symbol> next(length, 0);
  std::size_t depth = 0;
  while (true) {
    if (next[depth] >= size_) {
      if (depth == 0) return;
      next[depth] = 0;
      --depth;
      continue;
    }
    const Symbol s = next[depth]++;
    if (depth > 0 && !allowed(word[depth - 1], s)) continue;
    word[depth] = s;
    if (depth + 1 == length) {
      visit(word);
    } else {
      ++depth;
    }
  }
}

std::vector<Word> SubshiftOfFiniteType::admissible_words(std::size_t length) const {
  std::vector<Word> out;
  for_each_admissible_word(length, [&](std::span<const Symbol> w) {
    out.emplace_back(std::vector<Symbol>(w.begin(), w.end()));
  });
  return out;
}

bool is_admissible(const SubshiftOfFiniteType& sft, const Word& w) { return sft.is_admissible(w.symbols()); }

PointPrefix::PointPrefix(const SubshiftOfFiniteType& sft, Word word) : word_(std::move(word)) {
  if (!sft.is_admissible(word_.symbols())) throw InvalidArgument("point prefix is not admissible");
}

Symbol PointPrefix::at(std::size_t i) const {
  if (i >= capacity())
    throw CapacityError("coordinate " + std::to_string(i) + " beyond prefix capacity " + std::to_string(capacity()));
  return word_[i];
}

std::span<const Symbol> PointPrefix::head(std::size_t length) const {
  if (length > capacity())
    throw CapacityError("horizon " + std::to_string(length) + " exceeds prefix capacity " +
                        std::to_string(capacity()));
  return word_.symbols().first(length);
}

PointPrefix shift(const PointPrefix& x, std::size_t k) {
  if (k > x.capacity())
    throw CapacityError("shift by " + std::to_string(k) + " exceeds prefix capacity " + std::to_string(x.capacity()));
  return PointPrefix(x.word().suffix(k));
}

Word dynamical_ball_cylinder(std::size_t n, std::size_t k, const PointPrefix& x) {
  if (n == 0) throw InvalidArgument("dynamical ball needs n >= 1");
  const auto head = x.head(n + k);
  return Word(std::vector<Symbol>(head.begin(), head.end()));
}

double birkhoff_sum(const LocallyConstantPotential& phi, const PointPrefix& x, std::size_t n) {
  const std::size_t r = phi.range();
  const auto symbols = x.head(n + r - 1);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += phi(symbols.subspan(i, r));
  return sum;
}

}  // namespace thermo
