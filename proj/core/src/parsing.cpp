#include "lzsi/parsing.hpp"

#include <algorithm>
#include <cstring>
#include <numeric>
#include <stdexcept>

namespace lzsi {

namespace {

// Suffix automaton over the processed prefix. min_end tracks the smallest
// occurrence end per state (for leftmost sources); boundary_end tracks the
// smallest occurrence end lying on a phrase boundary (for lzend sources).
class prefix_matcher {
public:
  prefix_matcher() {
    states_.push_back({});
    states_[0].len = 0;
    states_[0].link = -1;
  }

  void extend(uint8_t c, uint64_t pos) {
    int32_t cur = new_state();
    states_[cur].len = states_[last_].len + 1;
    states_[cur].min_end = pos;
    int32_t p = last_;
    while (p != -1 && transition(p, c) == 0) {
      set_transition(p, c, cur);
      p = states_[p].link;
    }
    if (p == -1) {
      states_[cur].link = 0;
    } else {
      int32_t q = transition(p, c);
      if (states_[p].len + 1 == states_[q].len) {
        states_[cur].link = q;
      } else {
        int32_t clone = new_state();
        states_[clone].len = states_[p].len + 1;
        states_[clone].link = states_[q].link;
        states_[clone].min_end = states_[q].min_end;
        states_[clone].boundary_end = states_[q].boundary_end;
        states_[clone].next = states_[q].next;
        while (p != -1 && transition(p, c) == q) {
          set_transition(p, c, clone);
          p = states_[p].link;
        }
        states_[q].link = clone;
        states_[cur].link = clone;
      }
    }
    last_ = cur;
  }

  // Record that position e (the last extended position) ends a phrase.
  void mark_boundary(uint64_t e) {
    int32_t v = last_;
    while (v > 0 && states_[v].boundary_end == 0) {
      states_[v].boundary_end = e;
      v = states_[v].link;
    }
  }

  // Longest prefix of text[i..] (length <= cap) occurring in the processed
  // prefix, with the leftmost occurrence start. Returns {length, start}.
  std::pair<uint64_t, uint64_t> longest_substring(std::string_view text, uint64_t i,
                                                  uint64_t cap) const {
    int32_t v = 0;
    uint64_t len = 0;
    while (len < cap) {
      int32_t t = transition(v, static_cast<uint8_t>(text[i - 1 + len]));
      if (t == 0) break;
      v = t;
      ++len;
    }
    if (len == 0) return {0, 0};
    return {len, states_[v].min_end - len + 1};
  }

  // Longest prefix of text[i..] (length <= cap) with an occurrence ending on
  // a phrase boundary, plus the leftmost such occurrence start.
  std::pair<uint64_t, uint64_t> longest_boundary_suffix(std::string_view text, uint64_t i,
                                                        uint64_t cap) const {
    int32_t v = 0;
    uint64_t len = 0, best_len = 0, best_start = 0;
    while (len < cap) {
      int32_t t = transition(v, static_cast<uint8_t>(text[i - 1 + len]));
      if (t == 0) break;
      v = t;
      ++len;
      if (states_[v].boundary_end != 0) {
        best_len = len;
        best_start = states_[v].boundary_end - len + 1;
      }
    }
    return {best_len, best_start};
  }

private:
  struct state {
    int32_t len = 0;
    int32_t link = -1;
    uint64_t min_end = 0;
    uint64_t boundary_end = 0;
    std::vector<uint64_t> next;  // sorted (char << 32) | target
  };

  int32_t new_state() {
    states_.push_back({});
    return static_cast<int32_t>(states_.size() - 1);
  }

  int32_t transition(int32_t s, uint8_t c) const {
    const auto& v = states_[s].next;
    uint64_t key = static_cast<uint64_t>(c) << 32;
    auto it = std::lower_bound(v.begin(), v.end(), key);
    if (it == v.end() || (*it >> 32) != c) return 0;
    return static_cast<int32_t>(*it & 0xffffffffu);
  }

  void set_transition(int32_t s, uint8_t c, int32_t target) {
    auto& v = states_[s].next;
    uint64_t key = static_cast<uint64_t>(c) << 32;
    auto it = std::lower_bound(v.begin(), v.end(), key);
    uint64_t entry = key | static_cast<uint32_t>(target);
    if (it != v.end() && (*it >> 32) == c) {
      *it = entry;
    } else {
      v.insert(it, entry);
    }
  }

  std::vector<state> states_;
  int32_t last_ = 0;
};

parsing parse_greedy(std::string_view text, parse_flavor flavor) {
  parsing out;
  out.flavor = flavor;
  out.text_len = text.size();
  prefix_matcher sam;
  uint64_t n = text.size();
  uint64_t i = 1;
  while (i <= n) {
    uint64_t cap = n - i;  // leave room for the explicit final byte
    auto [len, start] = flavor == parse_flavor::lz77
                            ? sam.longest_substring(text, i, cap)
                            : sam.longest_boundary_suffix(text, i, cap);
    phrase ph;
    ph.copy_start = len == 0 ? 0 : start;
    ph.copy_len = len;
    ph.last = static_cast<uint8_t>(text[i - 1 + len]);
    out.phrases.push_back(ph);
    uint64_t end = i + len;  // phrase covers [i, end]
    for (uint64_t pos = i; pos <= end; ++pos)
      sam.extend(static_cast<uint8_t>(text[pos - 1]), pos);
    sam.mark_boundary(end);
    i = end + 1;
  }
  return out;
}

}  // namespace

parsing parse_lz77(std::string_view text) { return parse_greedy(text, parse_flavor::lz77); }
parsing parse_lzend(std::string_view text) { return parse_greedy(text, parse_flavor::lzend); }

std::string parsing::decode() const {
  std::string out;
  out.reserve(text_len);
  for (const phrase& ph : phrases) {
    for (uint64_t j = 0; j < ph.copy_len; ++j)
      out.push_back(out[ph.copy_start - 1 + j]);
    out.push_back(static_cast<char>(ph.last));
  }
  return out;
}

std::vector<uint64_t> parsing::phrase_ends() const {
  std::vector<uint64_t> ends;
  ends.reserve(phrases.size());
  uint64_t pos = 0;
  for (const phrase& ph : phrases) {
    pos += ph.length();
    ends.push_back(pos);
  }
  return ends;
}

void parsing::serialize(detail::byte_writer& w) const {
  w.u8(static_cast<uint8_t>(flavor));
  w.u64(text_len);
  w.u64(phrases.size());
  for (const phrase& ph : phrases) {
    w.u64(ph.copy_start);
    w.u64(ph.copy_len);
    w.u8(ph.last);
  }
}

parsing parsing::deserialize(detail::byte_reader& r) {
  parsing p;
  uint8_t fl = r.u8();
  if (fl > 1) throw load_error(load_error_kind::bad_section, "invalid parse flavor");
  p.flavor = static_cast<parse_flavor>(fl);
  p.text_len = r.u64();
  uint64_t count = r.u64();
  p.phrases.reserve(count);
  for (uint64_t i = 0; i < count; ++i) {
    phrase ph;
    ph.copy_start = r.u64();
    ph.copy_len = r.u64();
    ph.last = r.u8();
    p.phrases.push_back(ph);
  }
  return p;
}

std::optional<parse_violation> validate_parsing(const parsing& p, std::string_view text) {
  using kind = parse_violation::kind;
  if (p.decode() != text || p.text_len != text.size())
    return parse_violation{kind::reconstruction, 0, "decoded text differs from input"};

  std::vector<uint64_t> ends = p.phrase_ends();
  for (uint64_t k = 1; k <= p.size(); ++k) {
    const phrase& ph = p.phrases[k - 1];
    uint64_t start = ends[k - 1] - ph.copy_len;
    if (ph.copy_len == 0) {
      if (ph.copy_start != 0)
        return parse_violation{kind::containment, k, "empty source with nonzero start"};
      continue;
    }
    if (ph.copy_start < 1 || ph.copy_start + ph.copy_len - 1 >= start)
      return parse_violation{kind::containment, k, "source overlaps or follows the phrase"};
    std::string_view copied = text.substr(start - 1, ph.copy_len);
    std::string_view source = text.substr(ph.copy_start - 1, ph.copy_len);
    if (copied != source)
      return parse_violation{kind::containment, k, "source text differs from copied part"};
  }

  if (p.flavor == parse_flavor::lzend) {
    std::vector<uint64_t> sorted_ends = ends;
    for (uint64_t k = 1; k <= p.size(); ++k) {
      const phrase& ph = p.phrases[k - 1];
      if (ph.copy_len == 0) continue;
      uint64_t source_end = ph.copy_start + ph.copy_len - 1;
      if (!std::binary_search(sorted_ends.begin(), sorted_ends.end(), source_end))
        return parse_violation{kind::boundary, k, "source does not end on a phrase boundary"};
    }
  }

  // Greedy maximality: the copied part extended by one byte must not be
  // available. The final phrase is exempt (end-of-text truncation).
  for (uint64_t k = 1; k + 1 <= p.size(); ++k) {
    const phrase& ph = p.phrases[k - 1];
    uint64_t start = ends[k - 1] - ph.copy_len;
    std::string_view longer = text.substr(start - 1, ph.copy_len + 1);
    std::string_view processed = text.substr(0, start - 1);
    if (p.flavor == parse_flavor::lz77) {
      if (processed.find(longer) != std::string_view::npos)
        return parse_violation{kind::maximality, k, "a longer copy was available"};
    } else {
      for (uint64_t e : ends) {
        if (e >= start) break;
        if (e < longer.size()) continue;
        if (text.substr(e - longer.size(), longer.size()) == longer)
          return parse_violation{kind::maximality, k, "a longer boundary copy was available"};
      }
    }
  }
  return std::nullopt;
}

height_report compute_height(const parsing& p) {
  height_report rep;
  rep.copy_counts.assign(p.text_len, 0);
  std::vector<uint64_t> ends = p.phrase_ends();
  for (uint64_t k = 1; k <= p.size(); ++k) {
    const phrase& ph = p.phrases[k - 1];
    uint64_t b = ends[k - 1];
    uint64_t a = b - ph.copy_len;
    rep.copy_counts[b - 1] = 1;
    for (uint64_t pos = a; pos < b; ++pos)
      rep.copy_counts[pos - 1] = rep.copy_counts[ph.copy_start - 1 + (pos - a)] + 1;
  }
  uint64_t sum = 0;
  for (uint32_t c : rep.copy_counts) {
    rep.h = std::max<uint64_t>(rep.h, c);
    sum += c;
  }
  rep.avg_c = p.text_len ? static_cast<double>(sum) / p.text_len : 0.0;
  return rep;
}

source_layout compute_source_order(const parsing& p) {
  uint64_t np = p.size();
  std::vector<uint64_t> ends = p.phrase_ends();
  struct item {
    uint64_t start, len, k;
  };
  std::vector<item> items;
  items.reserve(np);
  for (uint64_t k = 1; k <= np; ++k) {
    const phrase& ph = p.phrases[k - 1];
    items.push_back({ph.copy_len == 0 ? 0 : ph.copy_start, ph.copy_len, k});
  }
  std::sort(items.begin(), items.end(), [](const item& a, const item& b) {
    if (a.start != b.start) return a.start < b.start;
    if (a.len != b.len) return a.len < b.len;
    return a.k < b.k;
  });
  source_layout out;
  out.order.resize(np);
  out.target_rank.resize(np);
  out.starts.resize(np);
  out.lens.resize(np);
  for (uint64_t r = 1; r <= np; ++r) {
    out.order[r - 1] = items[r - 1].k;
    out.starts[r - 1] = items[r - 1].start;
    out.lens[r - 1] = items[r - 1].len;
    out.target_rank[items[r - 1].k - 1] = r;
  }
  return out;
}

namespace {

// Prefix-max Fenwick tree used by the depth sweep.
class max_fenwick {
public:
  explicit max_fenwick(size_t n) : vals_(n + 1, 0) {}
  void update(size_t i, uint64_t v) {
    for (; i < vals_.size(); i += i & (~i + 1)) vals_[i] = std::max(vals_[i], v);
  }
  uint64_t query(size_t i) const {  // max over [1, i]
    uint64_t m = 0;
    for (; i > 0; i -= i & (~i + 1)) m = std::max(m, vals_[i]);
    return m;
  }

private:
  std::vector<uint64_t> vals_;
};

}  // namespace

depth_assignment compute_source_depths(const parsing& p) {
  source_layout layout = compute_source_order(p);
  uint64_t np = p.size();
  depth_assignment out;
  out.depths.assign(np, 0);

  // Coordinates: sources ordered by (start, len); covering sources start
  // strictly earlier and end no earlier. Sweep starts in ascending order,
  // querying a prefix-max structure keyed by descending end position.
  std::vector<uint64_t> end_coords;
  end_coords.reserve(np);
  for (uint64_t r = 0; r < np; ++r)
    if (layout.lens[r] > 0) end_coords.push_back(layout.starts[r] + layout.lens[r] - 1);
  std::sort(end_coords.begin(), end_coords.end());
  end_coords.erase(std::unique(end_coords.begin(), end_coords.end()), end_coords.end());
  if (end_coords.empty()) return out;

  auto coord_of = [&](uint64_t r_end) {
    // descending index: larger ends map to smaller indices
    size_t idx = std::lower_bound(end_coords.begin(), end_coords.end(), r_end) -
                 end_coords.begin();
    return end_coords.size() - idx;
  };

  max_fenwick fw(end_coords.size());
  uint64_t r = 0;
  while (r < np && layout.lens[r] == 0) ++r;  // empty sources stay at depth 0
  while (r < np) {
    // group of equal starts: none of them covers another within the group
    uint64_t group_end = r;
    while (group_end < np && layout.starts[group_end] == layout.starts[r]) ++group_end;
    for (uint64_t q = r; q < group_end; ++q) {
      uint64_t right = layout.starts[q] + layout.lens[q] - 1;
      // stored depths are offset by one so 0 means "nothing covers"
      uint64_t best = fw.query(coord_of(right));
      out.depths[q] = static_cast<uint32_t>(best);
    }
    for (uint64_t q = r; q < group_end; ++q) {
      uint64_t right = layout.starts[q] + layout.lens[q] - 1;
      fw.update(coord_of(right), out.depths[q] + 1);
    }
    r = group_end;
  }
  for (uint32_t d : out.depths) out.delta = std::max(out.delta, d);
  return out;
}

}  // namespace lzsi
