#include "lzsi/wavelet_tree.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace lzsi {

wavelet_tree::wavelet_tree(std::span<const uint64_t> seq) {
  max_ = 0;
  for (uint64_t v : seq) max_ = std::max(max_, v);
  build(seq);
}

wavelet_tree::wavelet_tree(std::span<const uint64_t> seq, uint64_t max_symbol)
    : max_(max_symbol) {
  for (uint64_t v : seq)
    if (v > max_) throw std::invalid_argument("wavelet_tree: symbol exceeds max_symbol");
  build(seq);
}

void wavelet_tree::build(std::span<const uint64_t> seq) {
  n_ = seq.size();
  unsigned height = max_ == 0 ? 0 : std::bit_width(max_);
  levels_.reserve(height);

  struct slice {
    uint64_t lo, hi;
    std::vector<uint64_t> vals;
  };
  std::vector<slice> cur;
  cur.push_back({0, max_, {seq.begin(), seq.end()}});

  for (unsigned level = 0; level < height; ++level) {
    plain_bitmap bm(n_);
    std::vector<slice> next;
    uint64_t pos = 1;
    for (auto& sl : cur) {
      if (sl.lo == sl.hi) {
        // single-symbol slice: keeps its positions, bits stay 0
        pos += sl.vals.size();
        next.push_back(std::move(sl));
        continue;
      }
      uint64_t mid = sl.lo + (sl.hi - sl.lo) / 2;
      slice left{sl.lo, mid, {}};
      slice right{mid + 1, sl.hi, {}};
      for (size_t i = 0; i < sl.vals.size(); ++i) {
        if (sl.vals[i] <= mid) {
          left.vals.push_back(sl.vals[i]);
        } else {
          bm.set(pos + i);
          right.vals.push_back(sl.vals[i]);
        }
      }
      pos += sl.vals.size();
      next.push_back(std::move(left));
      next.push_back(std::move(right));
    }
    bm.finalize();
    levels_.push_back(std::move(bm));
    cur = std::move(next);
  }
}

uint64_t wavelet_tree::slice_rank1(uint32_t level, const node& nd, uint64_t i) const {
  const plain_bitmap& bm = levels_[level];
  return bm.rank1(nd.start - 1 + i) - bm.rank1(nd.start - 1);
}

wavelet_tree::node wavelet_tree::child(uint32_t level, const node& nd, bool right) const {
  uint64_t ones = slice_rank1(level, nd, nd.size);
  uint64_t zeros = nd.size - ones;
  uint64_t mid = nd.lo + (nd.hi - nd.lo) / 2;
  if (right) return {nd.start + zeros, ones, mid + 1, nd.hi};
  return {nd.start, zeros, nd.lo, mid};
}

uint64_t wavelet_tree::access(uint64_t i) const {
  if (i < 1 || i > n_) throw std::out_of_range("wavelet_tree::access: position out of range");
  node nd = root();
  uint32_t level = 0;
  while (nd.lo < nd.hi) {
    uint64_t r1 = slice_rank1(level, nd, i);
    bool bit = levels_[level].get(nd.start - 1 + i);
    nd = child(level, nd, bit);
    i = bit ? r1 : i - r1;
    ++level;
  }
  return nd.lo;
}

uint64_t wavelet_tree::rank(uint64_t symbol, uint64_t i) const {
  if (i > n_) throw std::out_of_range("wavelet_tree::rank: position out of range");
  if (symbol > max_) return 0;
  node nd = root();
  uint32_t level = 0;
  while (nd.lo < nd.hi && i > 0) {
    uint64_t mid = nd.lo + (nd.hi - nd.lo) / 2;
    uint64_t r1 = slice_rank1(level, nd, i);
    bool right = symbol > mid;
    i = right ? r1 : i - r1;
    nd = child(level, nd, right);
    ++level;
  }
  return i;
}

uint64_t wavelet_tree::select(uint64_t symbol, uint64_t k) const {
  if (symbol > max_) throw std::out_of_range("wavelet_tree::select: symbol out of range");
  if (k < 1) throw std::out_of_range("wavelet_tree::select: rank out of range");
  node nd = root();
  std::vector<frame> path;
  uint32_t level = 0;
  while (nd.lo < nd.hi) {
    uint64_t mid = nd.lo + (nd.hi - nd.lo) / 2;
    bool right = symbol > mid;
    path.push_back({level, nd.start, right});
    nd = child(level, nd, right);
    ++level;
  }
  if (k > nd.size) throw std::out_of_range("wavelet_tree::select: rank out of range");
  return climb(path, k);
}

uint64_t wavelet_tree::climb(std::span<const frame> path, uint64_t pos) const {
  for (size_t i = path.size(); i-- > 0;) {
    const frame& fr = path[i];
    const plain_bitmap& bm = levels_[fr.level];
    if (fr.right) {
      uint64_t base = bm.rank1(fr.start - 1);
      pos = bm.select1(base + pos) - (fr.start - 1);
    } else {
      uint64_t base = bm.rank0(fr.start - 1);
      pos = bm.select0(base + pos) - (fr.start - 1);
    }
  }
  return pos;
}

std::vector<std::pair<uint64_t, uint64_t>> wavelet_tree::range_report(
    uint64_t i_lo, uint64_t i_hi, uint64_t j_lo, uint64_t j_hi) const {
  std::vector<std::pair<uint64_t, uint64_t>> out;
  if (i_lo > i_hi || j_lo > j_hi) return out;
  if (i_lo < 1 || i_hi > n_)
    throw std::out_of_range("wavelet_tree::range_report: position range out of range");
  j_hi = std::min(j_hi, max_);
  if (j_lo > j_hi) return out;
  std::vector<frame> path;
  report_rec(0, root(), i_lo, i_hi, j_lo, j_hi, path, out);
  return out;
}

void wavelet_tree::report_rec(uint32_t level, const node& nd, uint64_t a, uint64_t b,
                              uint64_t j_lo, uint64_t j_hi, std::vector<frame>& path,
                              std::vector<std::pair<uint64_t, uint64_t>>& out) const {
  if (a > b) return;
  if (nd.hi < j_lo || nd.lo > j_hi) return;
  if (nd.lo == nd.hi) {
    for (uint64_t p = a; p <= b; ++p) out.emplace_back(climb(path, p), nd.lo);
    return;
  }
  uint64_t r1a = slice_rank1(level, nd, a - 1);
  uint64_t r1b = slice_rank1(level, nd, b);
  uint64_t r0a = (a - 1) - r1a;
  uint64_t r0b = b - r1b;
  path.push_back({level, nd.start, false});
  report_rec(level + 1, child(level, nd, false), r0a + 1, r0b, j_lo, j_hi, path, out);
  path.back().right = true;
  report_rec(level + 1, child(level, nd, true), r1a + 1, r1b, j_lo, j_hi, path, out);
  path.pop_back();
}

std::optional<uint64_t> wavelet_tree::prev_less(uint64_t s, uint64_t d) const {
  if (s < 1 || s > n_ + 1) throw std::out_of_range("wavelet_tree::prev_less: position out of range");
  d = std::min(d, max_ + 1);  // thresholds above the alphabet admit everything
  uint64_t r = prev_less_rec(0, root(), s - 1, d);
  if (r == 0) return std::nullopt;
  return r;
}

uint64_t wavelet_tree::prev_less_rec(uint32_t level, const node& nd, uint64_t t,
                                     uint64_t d) const {
  if (t == 0 || d == 0) return 0;
  if (nd.lo >= d) return 0;   // every symbol here is >= d
  if (nd.hi < d) return t;    // every symbol here qualifies
  const plain_bitmap& bm = levels_[level];
  uint64_t mid = nd.lo + (nd.hi - nd.lo) / 2;
  uint64_t r1t = slice_rank1(level, nd, t);
  uint64_t r0t = t - r1t;
  if (d <= mid + 1) {
    // nothing of interest on the right side
    uint64_t r = prev_less_rec(level + 1, child(level, nd, false), r0t, d);
    if (r == 0) return 0;
    return bm.select0(bm.rank0(nd.start - 1) + r) - (nd.start - 1);
  }
  // whole left side qualifies; best candidate there is the last 0 before t
  uint64_t v0 = 0;
  if (r0t > 0) v0 = bm.select0(bm.rank0(nd.start - 1) + r0t) - (nd.start - 1);
  uint64_t v1 = prev_less_rec(level + 1, child(level, nd, true), r1t, d);
  if (v1 > 0) v1 = bm.select1(bm.rank1(nd.start - 1) + v1) - (nd.start - 1);
  return std::max(v0, v1);
}

void wavelet_tree::serialize(detail::byte_writer& w) const {
  w.u64(n_);
  w.u64(max_);
  w.u64(levels_.size());
  for (const auto& bm : levels_) bm.serialize(w);
}

wavelet_tree wavelet_tree::deserialize(detail::byte_reader& r) {
  wavelet_tree wt;
  wt.n_ = r.u64();
  wt.max_ = r.u64();
  uint64_t nlevels = r.u64();
  unsigned expect = wt.max_ == 0 ? 0 : std::bit_width(wt.max_);
  if (nlevels != expect)
    throw load_error(load_error_kind::bad_section, "wavelet level count mismatch");
  for (uint64_t i = 0; i < nlevels; ++i) {
    plain_bitmap bm = plain_bitmap::deserialize(r);
    if (bm.size() != wt.n_)
      throw load_error(load_error_kind::bad_section, "wavelet level size mismatch");
    wt.levels_.push_back(std::move(bm));
  }
  return wt;
}

}  // namespace lzsi
