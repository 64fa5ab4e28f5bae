#include "lzsi/patricia.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace lzsi {

namespace {

struct tmp_node {
  uint64_t depth = 0;  // string depth
  int16_t label = 0;
  uint64_t leaf_lo = 0, leaf_hi = 0;
  std::vector<uint32_t> children;
};

struct builder {
  const patricia_tree::char_accessor& at;
  std::span<const uint64_t> lengths;
  std::vector<uint64_t> lcp;  // lcp[i] = LCP(string i+1, string i+2)
  std::vector<tmp_node> nodes;

  uint32_t make(uint64_t depth, int16_t label, uint64_t lo, uint64_t hi) {
    nodes.push_back({depth, label, lo, hi, {}});
    return static_cast<uint32_t>(nodes.size() - 1);
  }

  int16_t label_at(uint64_t leaf, uint64_t parent_depth) {
    if (lengths[leaf - 1] == parent_depth) return -1;
    return static_cast<int16_t>(at(leaf, parent_depth + 1));
  }

  // Builds the subtree over leaves [a, b]; label is the first character of
  // the edge entering it.
  uint32_t build_range(uint64_t a, uint64_t b, int16_t label) {
    if (a == b) return make(lengths[a - 1], label, a, b);
    uint64_t depth = lcp[a - 1];
    for (uint64_t i = a; i < b; ++i) depth = std::min(depth, lcp[i - 1]);
    uint32_t me = make(depth, label, a, b);
    uint64_t child_start = a;
    for (uint64_t i = a; i <= b; ++i) {
      bool split_here = i == b || lcp[i - 1] == depth;
      if (!split_here) continue;
      uint32_t child =
          build_range(child_start, i, label_at(child_start, depth));
      nodes[me].children.push_back(child);
      child_start = i + 1;
    }
    return me;
  }
};

}  // namespace

patricia_tree patricia_tree::build(const char_accessor& at,
                                   std::span<const uint64_t> lengths,
                                   uint32_t skip_dac_width,
                                   std::vector<uint64_t> payloads) {
  patricia_tree t;
  t.leaf_count_ = lengths.size();
  t.payloads_ = std::move(payloads);
  if (!t.payloads_.empty() && t.payloads_.size() != t.leaf_count_)
    throw std::invalid_argument("patricia_tree: payload count mismatch");
  if (t.leaf_count_ == 0) {
    t.skips_ = dac({}, skip_dac_width);
    return t;
  }

  builder b{at, lengths, {}, {}};
  b.lcp.resize(t.leaf_count_ ? t.leaf_count_ - 1 : 0);
  for (uint64_t i = 1; i + 1 <= t.leaf_count_; ++i) {
    uint64_t q = 1;
    while (true) {
      int ca = at(i, q), cb = at(i + 1, q);
      if (ca == -1 || ca != cb) break;
      ++q;
    }
    b.lcp[i - 1] = q - 1;
  }
  uint32_t root = b.build_range(1, t.leaf_count_, 0);

  // Flatten breadth-first so every node's children are contiguous.
  std::vector<uint32_t> order;
  std::vector<uint32_t> final_id(b.nodes.size(), 0);
  std::deque<uint32_t> queue{root};
  while (!queue.empty()) {
    uint32_t v = queue.front();
    queue.pop_front();
    final_id[v] = static_cast<uint32_t>(order.size());
    order.push_back(v);
    for (uint32_t c : b.nodes[v].children) queue.push_back(c);
  }
  t.nodes_.resize(order.size());
  std::vector<uint64_t> skip_values(order.size());
  uint32_t next_child = 1;
  for (uint32_t id = 0; id < order.size(); ++id) {
    const tmp_node& tn = b.nodes[order[id]];
    node& n = t.nodes_[id];
    n.label = tn.label;
    n.leaf_lo = tn.leaf_lo;
    n.leaf_hi = tn.leaf_hi;
    n.nchildren = static_cast<uint32_t>(tn.children.size());
    n.first_child = tn.children.empty() ? 0 : next_child;
    for (uint32_t c : tn.children) {
      t.nodes_[final_id[c]].parent = id;
      ++next_child;
    }
    uint64_t parent_depth = id == 0 ? 0 : b.nodes[order[n.parent]].depth;
    // The root's skip is its own string depth; an edge consumes the branching
    // character plus the skip.
    skip_values[id] = id == 0 ? tn.depth : tn.depth - parent_depth - 1;
  }
  t.skips_ = dac(skip_values, skip_dac_width);
  return t;
}

uint64_t patricia_tree::string_depth(uint64_t node_id) const {
  uint64_t d = skip_of(node_id) + (node_id == 0 ? 0 : 1);
  while (node_id != 0) {
    node_id = nodes_[node_id].parent;
    d += skip_of(node_id) + (node_id == 0 ? 0 : 1);
  }
  return d;
}

const patricia_tree::node* patricia_tree::find_child(const node& parent,
                                                     int16_t label) const {
  uint32_t lo = parent.first_child, hi = parent.first_child + parent.nchildren;
  while (lo < hi) {
    uint32_t mid = lo + (hi - lo) / 2;
    if (nodes_[mid].label < label) lo = mid + 1;
    else hi = mid;
  }
  if (lo < parent.first_child + parent.nchildren && nodes_[lo].label == label)
    return &nodes_[lo];
  return nullptr;
}

search_range patricia_tree::search(std::span<const uint8_t> key) const {
  if (leaf_count_ == 0) return {};
  uint64_t m = key.size();
  if (m == 0) return {1, leaf_count_, true};

  const node* cur = &nodes_[0];
  uint64_t consumed = std::min<uint64_t>(m, skip_of(0));
  if (consumed == m) return {cur->leaf_lo, cur->leaf_hi, false};
  while (true) {
    if (cur->nchildren == 0) return {};  // the single string here is shorter than the key
    const node* child = find_child(*cur, static_cast<int16_t>(key[consumed]));
    if (child == nullptr) return {};
    uint64_t edge = 1 + skip_of(child - nodes_.data());
    consumed += std::min(edge, m - consumed);
    if (consumed == m) return {child->leaf_lo, child->leaf_hi, false};
    cur = child;
  }
}

std::vector<uint64_t> patricia_tree::recompute_skips(const char_accessor& at) const {
  std::vector<uint64_t> depth(nodes_.size(), 0);
  std::vector<uint64_t> out(nodes_.size(), 0);
  for (uint64_t id = 0; id < nodes_.size(); ++id) {
    const node& n = nodes_[id];
    uint64_t d;
    if (n.nchildren == 0) {
      // leaf depth = full string length, found by probing for the end
      uint64_t q = 1;
      while (at(n.leaf_lo, q) != -1) ++q;
      d = q - 1;
    } else {
      // internal: shared prefix length of the extreme descendant strings
      uint64_t q = id == 0 ? 1 : depth[n.parent] + 1;
      while (true) {
        int ca = at(n.leaf_lo, q), cb = at(n.leaf_hi, q);
        if (ca == -1 || ca != cb) break;
        ++q;
      }
      d = q - 1;
    }
    depth[id] = d;
    out[id] = id == 0 ? d : d - depth[n.parent] - 1;
  }
  return out;
}

void patricia_tree::serialize(detail::byte_writer& w) const {
  w.u64(leaf_count_);
  w.u64(nodes_.size());
  std::vector<uint64_t> first_child(nodes_.size()), nchildren(nodes_.size()),
      leaf_lo(nodes_.size()), leaf_hi(nodes_.size()), labels(nodes_.size());
  for (size_t i = 0; i < nodes_.size(); ++i) {
    first_child[i] = nodes_[i].first_child;
    nchildren[i] = nodes_[i].nchildren;
    leaf_lo[i] = nodes_[i].leaf_lo;
    leaf_hi[i] = nodes_[i].leaf_hi;
    labels[i] = static_cast<uint64_t>(nodes_[i].label + 1);  // -1 -> 0
  }
  detail::write_packed(w, first_child);
  detail::write_packed(w, nchildren);
  detail::write_packed(w, leaf_lo);
  detail::write_packed(w, leaf_hi);
  detail::write_packed(w, labels);
  skips_.serialize(w);
  w.u8(payloads_.empty() ? 0 : 1);
  if (!payloads_.empty()) detail::write_packed(w, payloads_);
}

patricia_tree patricia_tree::deserialize(detail::byte_reader& r) {
  patricia_tree t;
  t.leaf_count_ = r.u64();
  uint64_t count = r.u64();
  auto first_child = detail::read_packed(r);
  auto nchildren = detail::read_packed(r);
  auto leaf_lo = detail::read_packed(r);
  auto leaf_hi = detail::read_packed(r);
  auto labels = detail::read_packed(r);
  if (first_child.size() != count || nchildren.size() != count ||
      leaf_lo.size() != count || leaf_hi.size() != count || labels.size() != count)
    throw load_error(load_error_kind::bad_section, "patricia array shape mismatch");
  t.nodes_.resize(count);
  for (uint64_t i = 0; i < count; ++i) {
    node& n = t.nodes_[i];
    if (first_child[i] >= count && !(first_child[i] == 0))
      throw load_error(load_error_kind::bad_section, "patricia child out of range");
    n.first_child = static_cast<uint32_t>(first_child[i]);
    n.nchildren = static_cast<uint32_t>(nchildren[i]);
    if (n.first_child + n.nchildren > count)
      throw load_error(load_error_kind::bad_section, "patricia child out of range");
    n.leaf_lo = leaf_lo[i];
    n.leaf_hi = leaf_hi[i];
    if (labels[i] > 256)
      throw load_error(load_error_kind::bad_section, "patricia label out of range");
    n.label = static_cast<int16_t>(static_cast<int64_t>(labels[i]) - 1);
    for (uint32_t c = n.first_child; c < n.first_child + n.nchildren; ++c)
      if (c < count) t.nodes_[c].parent = static_cast<uint32_t>(i);
  }
  t.skips_ = dac::deserialize(r);
  if (t.skips_.size() != count)
    throw load_error(load_error_kind::bad_section, "patricia skip count mismatch");
  if (r.u8() != 0) t.payloads_ = detail::read_packed(r);
  return t;
}

search_range binsearch_range(uint64_t count, const patricia_tree::char_accessor& at,
                             std::span<const uint8_t> key) {
  if (key.empty()) return {1, count, true};
  if (count == 0) return {};
  enum cmp { less, prefix, greater };
  auto compare = [&](uint64_t r) {
    for (uint64_t q = 1; q <= key.size(); ++q) {
      int c = at(r, q);
      if (c == -1) return less;  // string is a proper prefix of the key
      if (c < key[q - 1]) return less;
      if (c > key[q - 1]) return greater;
    }
    return prefix;
  };
  // first string not below the key
  uint64_t lo = 1, hi = count + 1;
  while (lo < hi) {
    uint64_t mid = lo + (hi - lo) / 2;
    if (compare(mid) == less) lo = mid + 1;
    else hi = mid;
  }
  uint64_t first = lo;
  // first string above every key-prefixed string
  hi = count + 1;
  while (lo < hi) {
    uint64_t mid = lo + (hi - lo) / 2;
    if (compare(mid) != greater) lo = mid + 1;
    else hi = mid;
  }
  if (first >= lo) return {};
  return {first, lo - 1, true};
}

}  // namespace lzsi
