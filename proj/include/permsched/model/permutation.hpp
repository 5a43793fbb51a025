#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace permsched {

/// Assignment of each of m elements to a distinct step in 1..m.
/// `position(i)` is the step at which element i (0-based) is realized.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<std::size_t> positions) : positions_(std::move(positions)) {
    const std::size_t m = positions_.size();
    std::vector<bool> seen(m, false);
    for (std::size_t p : positions_) {
      if (p < 1 || p > m || seen[p - 1]) {
        throw std::invalid_argument("positions are not a permutation of 1.." + std::to_string(m));
      }
      seen[p - 1] = true;
    }
  }

  static Permutation identity(std::size_t m) {
    std::vector<std::size_t> p(m);
    std::iota(p.begin(), p.end(), std::size_t{1});
    return Permutation(std::move(p));
  }

  /// Builds the permutation realizing `order[0]` first, `order[1]` second, ...
  static Permutation from_order(std::span<const std::size_t> order) {
    std::vector<std::size_t> p(order.size(), 0);
    for (std::size_t step = 0; step < order.size(); ++step) {
      if (order[step] >= order.size()) throw std::invalid_argument("order index out of range");
      p[order[step]] = step + 1;
    }
    return Permutation(std::move(p));
  }

  std::size_t size() const { return positions_.size(); }
  std::size_t position(std::size_t element) const { return positions_.at(element); }
  const std::vector<std::size_t>& positions() const { return positions_; }

  /// Elements listed by ascending step.
  std::vector<std::size_t> order() const {
    std::vector<std::size_t> o(positions_.size());
    for (std::size_t i = 0; i < positions_.size(); ++i) o[positions_[i] - 1] = i;
    return o;
  }

  std::vector<double> as_point() const { return {positions_.begin(), positions_.end()}; }

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<std::size_t> positions_;
};

/// Characteristic vectors of the chain H^1 ⊂ ... ⊂ H^m induced by a permutation.
/// `contains(i, j)` is entry i of the vector for H^j, with j in 1..m.
class ChainMatrix {
 public:
  explicit ChainMatrix(std::size_t m) : m_(m), bits_(m * m, false) {}

  std::size_t size() const { return m_; }

  bool contains(std::size_t element, std::size_t step) const {
    check(element, step);
    return bits_[element * m_ + (step - 1)];
  }

  void set(std::size_t element, std::size_t step, bool value) {
    check(element, step);
    bits_[element * m_ + (step - 1)] = value;
  }

  std::vector<bool> column(std::size_t step) const {
    std::vector<bool> c(m_);
    for (std::size_t i = 0; i < m_; ++i) c[i] = contains(i, step);
    return c;
  }

  friend bool operator==(const ChainMatrix&, const ChainMatrix&) = default;

 private:
  void check(std::size_t element, std::size_t step) const {
    if (element >= m_ || step < 1 || step > m_) throw std::out_of_range("chain index out of range");
  }

  std::size_t m_;
  std::vector<bool> bits_;
};

inline ChainMatrix chain_from_permutation(const Permutation& p) {
  ChainMatrix h(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) {
    for (std::size_t j = p.position(i); j <= p.size(); ++j) h.set(i, j, true);
  }
  return h;
}

/// Ranks elements by ascending y. Values within `tolerance` of each other are
/// treated as tied and ordered by ascending element index.
inline Permutation permutation_from_point(std::span<const double> y, double tolerance = 1e-6) {
  const std::size_t m = y.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return y[a] < y[b]; });
  for (std::size_t start = 0; start < m;) {
    std::size_t end = start + 1;
    while (end < m && y[order[end]] - y[order[start]] <= tolerance) ++end;
    std::sort(order.begin() + static_cast<std::ptrdiff_t>(start),
              order.begin() + static_cast<std::ptrdiff_t>(end));
    start = end;
  }
  return Permutation::from_order(order);
}

inline Permutation permutation_from_point(std::span<const double> y, std::size_t expected_size,
                                          double tolerance) {
  if (y.size() != expected_size) {
    throw std::invalid_argument("point has dimension " + std::to_string(y.size()) +
                                ", expected " + std::to_string(expected_size));
  }
  return permutation_from_point(y, tolerance);
}

/// True when y is within `tolerance` of the position vector of `p` in every coordinate.
inline bool is_near_permutation(std::span<const double> y, const Permutation& p, double tolerance) {
  if (y.size() != p.size()) return false;
  for (std::size_t i = 0; i < y.size(); ++i) {
    if (std::abs(y[i] - static_cast<double>(p.position(i))) > tolerance) return false;
  }
  return true;
}

}  // namespace permsched
