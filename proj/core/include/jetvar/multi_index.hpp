#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

namespace jetvar {

/// Longest multi-index representable inline. Bounds both the jet order of
/// coordinates and the derivative depth of function atoms.
inline constexpr std::size_t kMaxIndexLength = 15;

/// Symmetric multi-index: a non-decreasing sequence of small positive integers.
/// Entries are kept sorted, so two indices that differ only by ordering are the
/// same value.
class MultiIndex {
 public:
  MultiIndex() = default;
  MultiIndex(std::initializer_list<int> entries);
  explicit MultiIndex(std::span<const int> entries);

  std::size_t order() const noexcept { return size_; }
  bool empty() const noexcept { return size_ == 0; }
  int operator[](std::size_t k) const noexcept { return entries_[k]; }

  const std::uint8_t* begin() const noexcept { return entries_.data(); }
  const std::uint8_t* end() const noexcept { return entries_.data() + size_; }

  /// Returns a copy with `i` inserted at its sorted position.
  MultiIndex appended(int i) const;
  /// Returns a copy with one occurrence of `i` removed; `i` must be present.
  MultiIndex without(int i) const;
  /// Number of occurrences of `i`.
  int count(int i) const noexcept;
  bool contains(int i) const noexcept { return count(i) > 0; }
  int back() const noexcept { return entries_[size_ - 1]; }
  int front() const noexcept { return entries_[0]; }

  /// Number of distinct orderings of the entries (multinomial coefficient).
  long long orderings() const noexcept;

  std::vector<int> to_vector() const { return {begin(), end()}; }

  friend bool operator==(const MultiIndex& a, const MultiIndex& b) noexcept {
    return a.size_ == b.size_ && std::equal(a.begin(), a.end(), b.begin());
  }
  /// Lexicographic on the sorted entry sequence.
  friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) noexcept {
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
  }

 private:
  std::array<std::uint8_t, kMaxIndexLength> entries_{};
  std::uint8_t size_ = 0;
};

/// All non-decreasing multi-indices over [1, n] with exactly `order` entries,
/// in lexicographic order.
std::vector<MultiIndex> multi_indices_of_order(int n, int order);

/// All non-decreasing multi-indices over [1, n] of order 0..max_order.
std::vector<MultiIndex> multi_indices_up_to(int n, int max_order);

}  // namespace jetvar
