#include "lzsi/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace lzsi::oracle {

std::vector<uint64_t> naive_locate(std::string_view text, std::string_view pattern) {
  if (pattern.empty()) throw std::invalid_argument("naive_locate: empty pattern");
  std::vector<uint64_t> out;
  size_t from = 0;
  while (true) {
    size_t hit = text.find(pattern, from);
    if (hit == std::string_view::npos) break;
    out.push_back(hit + 1);
    from = hit + 1;
  }
  return out;
}

depth_assignment naive_depths(const parsing& p) {
  source_layout layout = compute_source_order(p);
  uint64_t np = p.size();
  std::vector<int64_t> memo(np, -1);

  auto covers = [&](uint64_t a, uint64_t b) {  // does source a cover source b?
    if (layout.lens[a] == 0 || layout.lens[b] == 0) return false;
    uint64_t la = layout.starts[a], ra = la + layout.lens[a] - 1;
    uint64_t lb = layout.starts[b], rb = lb + layout.lens[b] - 1;
    return la < lb && ra >= rb;
  };

  auto depth_of = [&](auto&& self, uint64_t s) -> uint64_t {
    if (memo[s] >= 0) return memo[s];
    uint64_t best = 0;
    bool covered = false;
    for (uint64_t t = 0; t < np; ++t) {
      if (t == s || !covers(t, s)) continue;
      covered = true;
      best = std::max(best, self(self, t));
    }
    memo[s] = covered ? best + 1 : 0;
    return memo[s];
  };

  depth_assignment out;
  out.depths.resize(np);
  for (uint64_t s = 0; s < np; ++s) {
    out.depths[s] = static_cast<uint32_t>(depth_of(depth_of, s));
    out.delta = std::max(out.delta, out.depths[s]);
  }
  return out;
}

std::optional<uint64_t> naive_prev_less(std::span<const uint32_t> depths, uint64_t s,
                                        uint64_t d) {
  for (uint64_t i = std::min<uint64_t>(s - 1, depths.size()); i >= 1; --i)
    if (depths[i - 1] < d) return i;
  return std::nullopt;
}

classified_occurrences naive_classify(std::string_view text, const parsing& p,
                                      std::string_view pattern) {
  std::vector<uint64_t> ends = p.phrase_ends();
  classified_occurrences out;
  for (uint64_t pos : naive_locate(text, pattern)) {
    uint64_t lo = pos, hi = pos + pattern.size() - 1;
    auto it = std::lower_bound(ends.begin(), ends.end(), lo);
    bool primary = it != ends.end() && *it <= hi;
    (primary ? out.primary : out.secondary).push_back(pos);
  }
  return out;
}

}  // namespace lzsi::oracle
