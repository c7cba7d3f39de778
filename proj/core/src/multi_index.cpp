#include "jetvar/multi_index.hpp"

#include <string>

#include "jetvar/errors.hpp"

namespace jetvar {

namespace {

void check_entry(int i) {
  if (i < 1 || i > 255) throw ContextError("multi-index entry out of range: " + std::to_string(i));
}

}  // namespace

MultiIndex::MultiIndex(std::initializer_list<int> entries)
    : MultiIndex(std::span<const int>(entries.begin(), entries.size())) {}

MultiIndex::MultiIndex(std::span<const int> entries) {
  if (entries.size() > kMaxIndexLength) throw OrderError("multi-index longer than supported maximum");
  for (int e : entries) {
    check_entry(e);
    entries_[size_++] = static_cast<std::uint8_t>(e);
  }
  std::sort(entries_.begin(), entries_.begin() + size_);
}

MultiIndex MultiIndex::appended(int i) const {
  check_entry(i);
  if (size_ == kMaxIndexLength) throw OrderError("multi-index longer than supported maximum");
  MultiIndex out = *this;
  auto pos = std::upper_bound(out.entries_.begin(), out.entries_.begin() + size_, static_cast<std::uint8_t>(i));
  std::move_backward(pos, out.entries_.begin() + size_, out.entries_.begin() + size_ + 1);
  *pos = static_cast<std::uint8_t>(i);
  ++out.size_;
  return out;
}

MultiIndex MultiIndex::without(int i) const {
  MultiIndex out = *this;
  auto first = out.entries_.begin();
  auto last = first + size_;
  auto pos = std::find(first, last, static_cast<std::uint8_t>(i));
  if (pos == last) throw ContextError("multi-index does not contain " + std::to_string(i));
  std::move(pos + 1, last, pos);
  --out.size_;
  out.entries_[out.size_] = 0;
  return out;
}

int MultiIndex::count(int i) const noexcept {
  return static_cast<int>(std::count(begin(), end(), static_cast<std::uint8_t>(i)));
}

long long MultiIndex::orderings() const noexcept {
  long long result = 1;
  long long k = 0;
  std::size_t run = 0;
  for (std::size_t p = 0; p < size_; ++p) {
    ++k;
    run = (p > 0 && entries_[p] == entries_[p - 1]) ? run + 1 : 1;
    result = result * k / static_cast<long long>(run);
  }
  return result;
}

std::vector<MultiIndex> multi_indices_of_order(int n, int order) {
  std::vector<MultiIndex> out;
  if (order == 0) {
    out.emplace_back();
    return out;
  }
  std::vector<int> current(static_cast<std::size_t>(order), 1);
  while (true) {
    out.emplace_back(std::span<const int>(current));
    int pos = order - 1;
    while (pos >= 0 && current[static_cast<std::size_t>(pos)] == n) --pos;
    if (pos < 0) break;
    int value = current[static_cast<std::size_t>(pos)] + 1;
    for (int q = pos; q < order; ++q) current[static_cast<std::size_t>(q)] = value;
  }
  return out;
}

std::vector<MultiIndex> multi_indices_up_to(int n, int max_order) {
  std::vector<MultiIndex> out;
  for (int k = 0; k <= max_order; ++k) {
    auto level = multi_indices_of_order(n, k);
    out.insert(out.end(), level.begin(), level.end());
  }
  return out;
}

}  // namespace jetvar
