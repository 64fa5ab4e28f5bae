#include "lzsi/permutation.hpp"

#include <stdexcept>

namespace lzsi {

permutation::permutation(std::vector<uint64_t> forward, uint64_t shortcut_period)
    : fwd_(std::move(forward)), period_(shortcut_period) {
  if (period_ < 1) throw std::invalid_argument("permutation: shortcut_period must be >= 1");
  std::vector<bool> seen(fwd_.size(), false);
  for (uint64_t v : fwd_) {
    if (v < 1 || v > fwd_.size() || seen[v - 1])
      throw std::invalid_argument("permutation: forward array is not a bijection");
    seen[v - 1] = true;
  }
  build_shortcuts();
}

void permutation::build_shortcuts() {
  uint64_t n = fwd_.size();
  flags_ = plain_bitmap(n);
  std::vector<std::pair<uint64_t, uint64_t>> marks;  // (element, target)
  std::vector<bool> visited(n, false);
  std::vector<uint64_t> cycle;
  for (uint64_t i = 1; i <= n; ++i) {
    if (visited[i - 1]) continue;
    cycle.clear();
    uint64_t x = i;
    do {
      visited[x - 1] = true;
      cycle.push_back(x);
      x = fwd_[x - 1];
    } while (x != i);
    uint64_t c = cycle.size();
    if (c <= period_) continue;
    for (uint64_t idx = 0; idx < c; ++idx) {
      bool mark = ((idx + 1) % period_ == 0) || idx + 1 == c;
      if (!mark) continue;
      uint64_t back = cycle[(idx + c - period_) % c];
      flags_.set(cycle[idx]);
      marks.emplace_back(cycle[idx], back);
    }
  }
  flags_.finalize();
  shortcuts_.assign(marks.size(), 0);
  for (auto& [elem, back] : marks) shortcuts_[flags_.rank1(elem) - 1] = back;
}

uint64_t permutation::apply(uint64_t i) const {
  if (i < 1 || i > fwd_.size()) throw std::out_of_range("permutation::apply: index out of range");
  return fwd_[i - 1];
}

uint64_t permutation::inverse(uint64_t j) const {
  if (j < 1 || j > fwd_.size()) throw std::out_of_range("permutation::inverse: index out of range");
  uint64_t x = j;
  while (true) {
    if (fwd_[x - 1] == j) return x;
    if (flags_.size() && flags_.get(x)) break;
    x = fwd_[x - 1];
  }
  uint64_t y = shortcuts_[flags_.rank1(x) - 1];
  while (fwd_[y - 1] != j) y = fwd_[y - 1];
  return y;
}

void permutation::serialize(detail::byte_writer& w) const {
  w.u64(period_);
  detail::write_packed(w, fwd_);
  flags_.serialize(w);
  detail::write_packed(w, shortcuts_);
}

permutation permutation::deserialize(detail::byte_reader& r) {
  permutation p;
  p.period_ = r.u64();
  if (p.period_ < 1) throw load_error(load_error_kind::bad_section, "invalid shortcut period");
  p.fwd_ = detail::read_packed(r);
  p.flags_ = plain_bitmap::deserialize(r);
  p.shortcuts_ = detail::read_packed(r);
  if (p.flags_.size() != p.fwd_.size() || p.shortcuts_.size() != p.flags_.ones())
    throw load_error(load_error_kind::bad_section, "permutation shape mismatch");
  return p;
}

}  // namespace lzsi
