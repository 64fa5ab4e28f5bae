#include "lzsi/index.hpp"

#include <algorithm>
#include <cstring>
#include <istream>
#include <iterator>
#include <ostream>
#include <stdexcept>

namespace lzsi {

namespace {

constexpr uint16_t kFormatVersion = 1;
constexpr char kMagic[4] = {'L', 'Z', 'S', 'I'};

constexpr const char* kTagMeta = "TMET";
constexpr const char* kTagLchars = "LCHR";
constexpr const char* kTagB = "BBMP";
constexpr const char* kTagS = "SBMP";
constexpr const char* kTagPerm = "PERM";
constexpr const char* kTagDwt = "DWVT";
constexpr const char* kTagRwt = "RWVT";
constexpr const char* kTagSuf = "SUFS";
constexpr const char* kTagRev = "REVS";

uint64_t default_period(uint64_t np) {
  return std::max<uint64_t>(1, detail::ceil_log2(np));
}

}  // namespace

uint64_t lz_index::phrase_start(uint64_t k) const {
  return k == 1 ? 1 : b_.select1(k - 1) + 1;
}

lz_index lz_index::build(std::string_view text, const index_config& cfg) {
  if (text.empty()) throw std::invalid_argument("empty input");
  if (cfg.variant < 1 || cfg.variant > 5)
    throw std::invalid_argument("variant must be between 1 and 5");
  if (cfg.bitmap_sample_rate < 1)
    throw std::invalid_argument("bitmap sample rate must be >= 1");
  if (cfg.dac_chunk_width < 1 || cfg.dac_chunk_width > 64)
    throw std::invalid_argument("dac chunk width must be in [1,64]");

  lz_index ix;
  ix.cfg_ = cfg;

  parsing par =
      cfg.flavor == parse_flavor::lz77 ? parse_lz77(text) : parse_lzend(text);
  ix.n_ = text.size();
  ix.np_ = par.size();

  std::vector<uint64_t> ends = par.phrase_ends();
  std::vector<uint64_t> starts(ix.np_);
  for (uint64_t k = 1; k <= ix.np_; ++k)
    starts[k - 1] = ends[k - 1] - par.phrases[k - 1].copy_len;

  ix.lchars_.reserve(ix.np_);
  for (const phrase& ph : par.phrases) ix.lchars_.push_back(static_cast<char>(ph.last));

  ix.b_ = sparse_bitmap(ends, ix.n_, cfg.bitmap_sample_rate);

  source_layout layout = compute_source_order(par);
  std::vector<uint64_t> spositions(ix.np_);
  for (uint64_t r = 1; r <= ix.np_; ++r)
    spositions[r - 1] = layout.starts[r - 1] + r;
  ix.s_ = sparse_bitmap(spositions, ix.n_ + ix.np_ + 1, cfg.bitmap_sample_rate);

  ix.cfg_.perm_shortcut_period = cfg.perm_shortcut_period
                                     ? cfg.perm_shortcut_period
                                     : default_period(ix.np_);
  ix.perm_ = permutation(layout.target_rank, ix.cfg_.perm_shortcut_period);

  depth_assignment da = compute_source_depths(par);
  ix.delta_ = da.delta;
  {
    std::vector<uint64_t> d64(da.depths.begin(), da.depths.end());
    ix.dwt_ = wavelet_tree(d64, ix.delta_);
    uint64_t sum = 0;
    for (uint32_t d : da.depths) sum += d;
    ix.avg_depth_ = ix.np_ ? static_cast<double>(sum) / ix.np_ : 0.0;
  }

  height_report hr = compute_height(par);
  ix.h_ = hr.h;
  ix.avg_c_ = hr.avg_c;

  // Lexicographic order of the phrase-start suffixes (id) and of the
  // reversed phrases (rev_id).
  std::vector<uint64_t> id(ix.np_);
  for (uint64_t k = 1; k <= ix.np_; ++k) id[k - 1] = k;
  std::sort(id.begin(), id.end(), [&](uint64_t a, uint64_t b) {
    return text.substr(starts[a - 1] - 1) < text.substr(starts[b - 1] - 1);
  });

  auto rev_char = [&](uint64_t k, uint64_t q) -> int {
    uint64_t len = ends[k - 1] - starts[k - 1] + 1;
    if (q > len) return -1;
    return static_cast<uint8_t>(text[ends[k - 1] - q]);
  };
  ix.rev_id_.resize(ix.np_);
  for (uint64_t k = 1; k <= ix.np_; ++k) ix.rev_id_[k - 1] = k;
  std::sort(ix.rev_id_.begin(), ix.rev_id_.end(), [&](uint64_t a, uint64_t b) {
    uint64_t q = 1;
    while (true) {
      int ca = rev_char(a, q), cb = rev_char(b, q);
      if (ca != cb) return ca < cb;
      if (ca == -1) return a < b;  // equal strings keep phrase order
      ++q;
    }
  });

  std::vector<uint64_t> rev_rank(ix.np_);
  for (uint64_t j = 1; j <= ix.np_; ++j) rev_rank[ix.rev_id_[j - 1] - 1] = j;
  ix.rev_rank_last_ = rev_rank[ix.np_ - 1];

  std::vector<uint64_t> range_seq(ix.np_);
  for (uint64_t row = 1; row <= ix.np_; ++row) {
    uint64_t k = id[row - 1];
    if (k == 1) {
      range_seq[row - 1] = 0;
      ix.sentinel_row_ = row;
    } else {
      range_seq[row - 1] = rev_rank[k - 2];
    }
  }
  ix.rwt_ = wavelet_tree(range_seq, ix.np_);

  bool seen[256] = {};
  for (char c : text) seen[static_cast<uint8_t>(c)] = true;
  ix.sigma_ = static_cast<uint64_t>(std::count(std::begin(seen), std::end(seen), true));

  if (cfg.variant == 2 || cfg.variant == 4) ix.id_ = id;
  ix.build_sides(text, id, starts);
  return ix;
}

void lz_index::build_sides(std::string_view text, const std::vector<uint64_t>& id,
                           const std::vector<uint64_t>& starts) {
  bool want_suffix_trie = cfg_.variant == 1 || cfg_.variant == 3;
  bool want_rev_trie = cfg_.variant == 1 || cfg_.variant == 2;
  if (!want_suffix_trie && !want_rev_trie) return;

  std::vector<uint64_t> ends(np_);
  for (uint64_t k = 1; k <= np_; ++k) ends[k - 1] = k == np_ ? n_ : starts[k] - 1;

  if (want_suffix_trie) {
    std::vector<uint64_t> lengths(np_);
    for (uint64_t r = 1; r <= np_; ++r) lengths[r - 1] = n_ - starts[id[r - 1] - 1] + 1;
    auto at = [&text, &id, &starts, this](uint64_t r, uint64_t q) -> int {
      uint64_t pos = starts[id[r - 1] - 1] + q - 1;
      if (pos > n_) return -1;
      return static_cast<uint8_t>(text[pos - 1]);
    };
    suffix_trie_ = std::make_unique<patricia_tree>(
        patricia_tree::build(at, lengths, cfg_.dac_chunk_width));
  }
  if (want_rev_trie) {
    std::vector<uint64_t> lengths(np_);
    for (uint64_t j = 1; j <= np_; ++j) {
      uint64_t k = rev_id_[j - 1];
      lengths[j - 1] = ends[k - 1] - starts[k - 1] + 1;
    }
    auto at = [&text, &ends, &starts, this](uint64_t j, uint64_t q) -> int {
      uint64_t k = rev_id_[j - 1];
      if (q > ends[k - 1] - starts[k - 1] + 1) return -1;
      return static_cast<uint8_t>(text[ends[k - 1] - q]);
    };
    reverse_trie_ = std::make_unique<patricia_tree>(
        patricia_tree::build(at, lengths, cfg_.dac_chunk_width));
  }
}

uint64_t lz_index::suffix_id(uint64_t rank) const {
  if (rank < 1 || rank > np_) throw std::out_of_range("suffix_id: rank out of range");
  if (!id_.empty()) return id_[rank - 1];
  if (rank == sentinel_row_) return 1;
  return rev_id_[rwt_.access(rank) - 1] + 1;
}

patricia_tree::char_accessor lz_index::suffix_accessor() const {
  return [this](uint64_t r, uint64_t q) -> int {
    uint64_t pos = phrase_start(suffix_id(r)) + q - 1;
    if (pos > n_) return -1;
    return char_at(pos);
  };
}

patricia_tree::char_accessor lz_index::reverse_accessor() const {
  return [this](uint64_t j, uint64_t q) -> int {
    uint64_t k = rev_id_[j - 1];
    uint64_t b = phrase_end(k);
    uint64_t a = phrase_start(k);
    if (q > b - a + 1) return -1;
    return char_at(b - q + 1);
  };
}

search_range lz_index::suffix_search(std::string_view key) const {
  std::span<const uint8_t> bytes(reinterpret_cast<const uint8_t*>(key.data()),
                                 key.size());
  if (suffix_trie_) return suffix_trie_->search(bytes);
  return binsearch_range(np_, suffix_accessor(), bytes);
}

search_range lz_index::reverse_search(std::string_view key) const {
  std::span<const uint8_t> bytes(reinterpret_cast<const uint8_t*>(key.data()),
                                 key.size());
  if (reverse_trie_) return reverse_trie_->search(bytes);
  return binsearch_range(np_, reverse_accessor(), bytes);
}

uint8_t lz_index::char_at(uint64_t pos) const {
  if (pos < 1 || pos > n_) throw std::out_of_range("char_at: position out of range");
  while (true) {
    uint64_t k = b_.rank1(pos - 1) + 1;
    uint64_t bk = b_.select1(k);
    if (pos == bk) return static_cast<uint8_t>(lchars_[k - 1]);
    uint64_t a = phrase_start(k);
    uint64_t pk = perm_.apply(k);
    uint64_t t = s_.select1(pk) - pk;
    pos = t + (pos - a);
  }
}

std::string lz_index::extract(uint64_t s, uint64_t e) const {
  extract_stats st;
  return extract(s, e, st);
}

std::string lz_index::extract(uint64_t s, uint64_t e, extract_stats& st) const {
  if (s < 1 || e < s || e > n_) throw std::out_of_range("extract: range out of range");
  std::string out;
  out.reserve(e - s + 1);
  extract_rec(s, e, 1, out, st);
  return out;
}

void lz_index::extract_rec(uint64_t s, uint64_t e, uint64_t depth, std::string& out,
                           extract_stats& st) const {
  st.steps += 1;
  st.max_depth = std::max(st.max_depth, depth);
  uint64_t k1 = b_.rank1(s - 1) + 1;
  uint64_t k2 = b_.rank1(e - 1) + 1;
  uint64_t prev_end = k1 == 1 ? 0 : b_.select1(k1 - 1);
  for (uint64_t k = k1; k <= k2; ++k) {
    uint64_t bk = b_.select1(k);
    uint64_t a = prev_end + 1;
    prev_end = bk;
    uint64_t lo = std::max(s, a);
    uint64_t hi = std::min(e, bk);
    uint64_t interior_hi = hi == bk ? bk - 1 : hi;
    if (lo <= interior_hi) {
      uint64_t pk = perm_.apply(k);
      uint64_t t = s_.select1(pk) - pk;
      extract_rec(t + (lo - a), t + (interior_hi - a), depth + 1, out, st);
    }
    if (hi == bk) {
      out.push_back(lchars_[k - 1]);
      st.steps += 1;
    }
  }
}

std::vector<primary_hit> lz_index::find_primary(std::string_view pattern) const {
  if (pattern.empty()) throw std::invalid_argument("find_primary: empty pattern");
  uint64_t m = pattern.size();
  std::vector<primary_hit> hits;
  std::string revleft;
  for (uint64_t i = 1; i <= m; ++i) {
    revleft.assign(pattern.rend() - i, pattern.rend());
    search_range rev_range = reverse_search(revleft);
    if (rev_range.empty()) continue;

    std::string_view right = pattern.substr(i);
    search_range suf_range =
        right.empty() ? search_range{1, np_, true} : suffix_search(right);
    if (suf_range.empty()) continue;

    std::vector<primary_hit> cands;
    for (auto [row, j] :
         rwt_.range_report(suf_range.lo, suf_range.hi, rev_range.lo, rev_range.hi)) {
      (void)row;
      uint64_t k = rev_id_[j - 1];
      int64_t pos = static_cast<int64_t>(phrase_end(k)) - static_cast<int64_t>(i) + 1;
      cands.push_back(
          {pos < 1 ? 0 : static_cast<uint64_t>(pos), k, static_cast<uint32_t>(i)});
    }
    // R links phrase k to phrase k+1, so a pattern lying at the very end of
    // the text (a suffix of the final phrase, empty right part) never lands
    // on a point; probe the final phrase against the reverse range directly.
    if (right.empty() && rev_range.lo <= rev_rank_last_ &&
        rev_rank_last_ <= rev_range.hi && m <= n_) {
      cands.push_back({n_ - m + 1, np_, static_cast<uint32_t>(i)});
    }
    if (cands.empty()) continue;

    if (!(rev_range.verified && suf_range.verified)) {
      // Deferred Patricia verification: one extraction decides the whole
      // split (all of the range is right or none of it is).
      const primary_hit& probe = cands.front();
      if (probe.position < 1 || probe.position + m - 1 > n_) continue;
      if (extract(probe.position, probe.position + m - 1) != pattern) continue;
    }
    for (const primary_hit& hit : cands) hits.push_back(hit);
  }
  return hits;
}

bool lz_index::exists(std::string_view pattern) const {
  if (pattern.empty()) throw std::invalid_argument("exists: empty pattern");
  return !find_primary(pattern).empty();
}

void lz_index::chase_step(uint64_t pos, uint64_t len,
                          std::vector<uint64_t>& found) const {
  uint64_t pos0 = s_.select0(pos + 1);
  uint64_t scur = s_.rank1(pos0);
  uint64_t d = delta_ + 1;
  while (scur >= 1) {
    uint64_t j = s_.select1(scur);
    uint64_t t = j - scur;  // source start in the text, 0 for empty sources
    uint64_t f = perm_.inverse(scur);
    uint64_t bf = phrase_end(f);
    uint64_t af = phrase_start(f);
    uint64_t l = bf - af;  // source length = phrase length - 1
    bool covers = t >= 1 && l >= len && t <= pos && pos + len - 1 <= t + l - 1;
    if (covers) {
      found.push_back(af + (pos - t));
    } else {
      d = dwt_.access(scur);
    }
    auto nxt = dwt_.prev_less(scur, d);
    if (!nxt) break;
    scur = *nxt;
  }
}

std::vector<uint64_t> lz_index::chase_from(uint64_t pos, uint64_t len) const {
  if (pos < 1 || len < 1 || pos + len - 1 > n_)
    throw std::out_of_range("chase_from: occurrence out of range");
  std::vector<uint64_t> all;
  std::vector<uint64_t> work{pos};
  while (!work.empty()) {
    uint64_t cur = work.back();
    work.pop_back();
    size_t before = all.size();
    chase_step(cur, len, all);
    for (size_t i = before; i < all.size(); ++i) work.push_back(all[i]);
  }
  return all;
}

occurrence_set lz_index::locate(std::string_view pattern) const {
  if (pattern.empty()) throw std::invalid_argument("locate: empty pattern");
  occurrence_set out;
  std::vector<primary_hit> prim = find_primary(pattern);
  out.primary_count = prim.size();
  std::vector<uint64_t> all;
  std::vector<uint64_t> work;
  for (const primary_hit& hit : prim) {
    all.push_back(hit.position);
    work.push_back(hit.position);
  }
  while (!work.empty()) {
    uint64_t cur = work.back();
    work.pop_back();
    size_t before = all.size();
    chase_step(cur, pattern.size(), all);
    for (size_t i = before; i < all.size(); ++i) work.push_back(all[i]);
  }
  out.secondary_count = all.size() - out.primary_count;
  std::sort(all.begin(), all.end());
  out.positions = std::move(all);
  return out;
}

std::vector<std::pair<std::string, std::string>> lz_index::build_sections() const {
  std::vector<std::pair<std::string, std::string>> sections;
  auto add = [&](const char* tag, detail::byte_writer&& w) {
    sections.emplace_back(tag, std::move(w).take());
  };
  {
    detail::byte_writer w;
    w.u64(n_);
    w.u64(np_);
    w.u64(sigma_);
    w.u64(h_);
    w.u64(delta_);
    w.f64(avg_c_);
    w.f64(avg_depth_);
    w.u64(sentinel_row_);
    w.u64(cfg_.bitmap_sample_rate);
    w.u64(cfg_.perm_shortcut_period);
    w.u8(static_cast<uint8_t>(cfg_.dac_chunk_width));
    add(kTagMeta, std::move(w));
  }
  {
    detail::byte_writer w;
    w.u64(lchars_.size());
    w.bytes(lchars_.data(), lchars_.size());
    add(kTagLchars, std::move(w));
  }
  {
    detail::byte_writer w;
    b_.serialize(w);
    add(kTagB, std::move(w));
  }
  {
    detail::byte_writer w;
    s_.serialize(w);
    add(kTagS, std::move(w));
  }
  {
    detail::byte_writer w;
    perm_.serialize(w);
    add(kTagPerm, std::move(w));
  }
  {
    detail::byte_writer w;
    dwt_.serialize(w);
    add(kTagDwt, std::move(w));
  }
  {
    detail::byte_writer w;
    rwt_.serialize(w);
    add(kTagRwt, std::move(w));
  }
  {
    detail::byte_writer w;
    uint8_t mode = suffix_trie_ ? 0 : !id_.empty() ? 1 : 2;
    w.u8(mode);
    if (mode == 0) suffix_trie_->serialize(w);
    if (mode == 1) detail::write_packed(w, id_);
    add(kTagSuf, std::move(w));
  }
  {
    detail::byte_writer w;
    detail::write_packed(w, rev_id_);
    w.u8(reverse_trie_ ? 1 : 0);
    if (reverse_trie_) reverse_trie_->serialize(w);
    add(kTagRev, std::move(w));
  }
  return sections;
}

index_stats lz_index::stats() const {
  index_stats st;
  st.n = n_;
  st.n_prime = np_;
  st.sigma = sigma_;
  st.h = h_;
  st.delta = delta_;
  st.avg_copy_count = avg_c_;
  st.avg_source_depth = avg_depth_;
  st.lz_bits = np_ * (2 * detail::ceil_log2(n_) + detail::ceil_log2(sigma_));
  auto sections = build_sections();
  static const std::pair<const char*, const char*> kNames[] = {
      {kTagMeta, "text_meta"},    {kTagLchars, "last_chars"},
      {kTagB, "end_bitmap"},      {kTagS, "source_bitmap"},
      {kTagPerm, "permutation"},  {kTagDwt, "depth_wavelet"},
      {kTagRwt, "range_wavelet"}, {kTagSuf, "suffix_side"},
      {kTagRev, "reverse_side"},
  };
  uint64_t section_sum = 0;
  for (auto& [tag, data] : sections) {
    const char* name = tag.c_str();
    for (auto& [t, n] : kNames)
      if (tag == t) name = n;
    st.component_bytes.emplace_back(name, data.size());
    section_sum += data.size();
  }
  uint64_t header = 4 + 2 + 1 + 1 + 8 + sections.size() * 24;
  st.component_bytes.emplace_back("header_and_table", header);
  st.total_bytes = section_sum + header;
  return st;
}

std::string lz_index::serialize_to_string() const {
  auto sections = build_sections();
  detail::byte_writer head;
  head.bytes(kMagic, 4);
  head.u16(kFormatVersion);
  head.u8(static_cast<uint8_t>(cfg_.flavor));
  head.u8(static_cast<uint8_t>(cfg_.variant));
  head.u64(sections.size());
  uint64_t offset = 4 + 2 + 1 + 1 + 8 + sections.size() * 24;
  detail::byte_writer table;
  for (auto& [tag, data] : sections) {
    table.bytes(tag.data(), 4);
    table.u64(offset);
    table.u64(data.size());
    table.u32(detail::crc32(
        {reinterpret_cast<const uint8_t*>(data.data()), data.size()}));
    offset += data.size();
  }
  std::string out = head.take();
  out += table.take();
  for (auto& [tag, data] : sections) out += data;
  return out;
}

void lz_index::serialize(std::ostream& os) const {
  std::string blob = serialize_to_string();
  os.write(blob.data(), static_cast<std::streamsize>(blob.size()));
}

lz_index lz_index::deserialize(std::istream& in) {
  std::string bytes{std::istreambuf_iterator<char>(in),
                    std::istreambuf_iterator<char>()};
  return deserialize(std::string_view(bytes));
}

lz_index lz_index::deserialize(std::string_view bytes) {
  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0)
    throw load_error(load_error_kind::bad_magic, "bad magic");
  std::span<const uint8_t> all(reinterpret_cast<const uint8_t*>(bytes.data()),
                               bytes.size());
  detail::byte_reader head(all);
  head.raw(4);
  uint16_t version = head.u16();
  if (version != kFormatVersion)
    throw load_error(load_error_kind::unsupported_version, "unsupported version");
  uint8_t flavor = head.u8();
  uint8_t variant = head.u8();
  if (flavor > 1) throw load_error(load_error_kind::bad_section, "invalid flavor");
  if (variant < 1 || variant > 5)
    throw load_error(load_error_kind::bad_section, "invalid variant");

  uint64_t count = head.u64();
  struct entry {
    char tag[5] = {};
    uint64_t offset = 0, length = 0;
    uint32_t crc = 0;
  };
  std::vector<entry> entries(count);
  for (auto& e : entries) {
    head.bytes(e.tag, 4);
    e.offset = head.u64();
    e.length = head.u64();
    e.crc = head.u32();
    if (e.offset > bytes.size() || e.length > bytes.size() - e.offset)
      throw load_error(load_error_kind::truncated, "truncated section");
  }
  auto section = [&](const char* tag) -> std::span<const uint8_t> {
    for (auto& e : entries) {
      if (std::memcmp(e.tag, tag, 4) != 0) continue;
      auto span = all.subspan(e.offset, e.length);
      if (detail::crc32(span) != e.crc)
        throw load_error(load_error_kind::checksum_mismatch, "checksum mismatch");
      return span;
    }
    throw load_error(load_error_kind::bad_section,
                     std::string("missing section ") + tag);
  };

  lz_index ix;
  ix.cfg_.flavor = static_cast<parse_flavor>(flavor);
  ix.cfg_.variant = variant;

  {
    detail::byte_reader r(section(kTagMeta));
    ix.n_ = r.u64();
    ix.np_ = r.u64();
    ix.sigma_ = r.u64();
    ix.h_ = r.u64();
    ix.delta_ = r.u64();
    ix.avg_c_ = r.f64();
    ix.avg_depth_ = r.f64();
    ix.sentinel_row_ = r.u64();
    ix.cfg_.bitmap_sample_rate = r.u64();
    ix.cfg_.perm_shortcut_period = r.u64();
    ix.cfg_.dac_chunk_width = r.u8();
  }
  {
    detail::byte_reader r(section(kTagLchars));
    uint64_t len = r.u64();
    if (len != ix.np_)
      throw load_error(load_error_kind::bad_section, "L length mismatch");
    ix.lchars_.resize(len);
    r.bytes(ix.lchars_.data(), len);
  }
  {
    detail::byte_reader r(section(kTagB));
    ix.b_ = sparse_bitmap::deserialize(r);
    if (ix.b_.universe() != ix.n_ || ix.b_.ones() != ix.np_)
      throw load_error(load_error_kind::bad_section, "end bitmap shape mismatch");
  }
  {
    detail::byte_reader r(section(kTagS));
    ix.s_ = sparse_bitmap::deserialize(r);
    if (ix.s_.universe() != ix.n_ + ix.np_ + 1 || ix.s_.ones() != ix.np_)
      throw load_error(load_error_kind::bad_section, "source bitmap shape mismatch");
  }
  {
    detail::byte_reader r(section(kTagPerm));
    ix.perm_ = permutation::deserialize(r);
    if (ix.perm_.size() != ix.np_)
      throw load_error(load_error_kind::bad_section, "permutation size mismatch");
  }
  {
    detail::byte_reader r(section(kTagDwt));
    ix.dwt_ = wavelet_tree::deserialize(r);
    if (ix.dwt_.size() != ix.np_ || ix.dwt_.max_symbol() != ix.delta_)
      throw load_error(load_error_kind::bad_section, "depth tree shape mismatch");
  }
  {
    detail::byte_reader r(section(kTagRwt));
    ix.rwt_ = wavelet_tree::deserialize(r);
    if (ix.rwt_.size() != ix.np_ || ix.rwt_.max_symbol() != ix.np_)
      throw load_error(load_error_kind::bad_section, "range tree shape mismatch");
  }
  {
    detail::byte_reader r(section(kTagSuf));
    uint8_t mode = r.u8();
    uint8_t expect =
        (variant == 1 || variant == 3) ? 0 : (variant == 2 || variant == 4) ? 1 : 2;
    if (mode != expect)
      throw load_error(load_error_kind::bad_section, "suffix side mode mismatch");
    if (mode == 0) {
      ix.suffix_trie_ =
          std::make_unique<patricia_tree>(patricia_tree::deserialize(r));
      if (ix.suffix_trie_->leaf_count() != ix.np_)
        throw load_error(load_error_kind::bad_section, "suffix trie leaf mismatch");
    } else if (mode == 1) {
      ix.id_ = detail::read_packed(r);
      if (ix.id_.size() != ix.np_)
        throw load_error(load_error_kind::bad_section, "id array size mismatch");
    }
  }
  {
    detail::byte_reader r(section(kTagRev));
    ix.rev_id_ = detail::read_packed(r);
    if (ix.rev_id_.size() != ix.np_)
      throw load_error(load_error_kind::bad_section, "rev_id size mismatch");
    bool has_trie = r.u8() != 0;
    bool expect_trie = variant == 1 || variant == 2;
    if (has_trie != expect_trie)
      throw load_error(load_error_kind::bad_section, "reverse side mode mismatch");
    if (has_trie) {
      ix.reverse_trie_ =
          std::make_unique<patricia_tree>(patricia_tree::deserialize(r));
      if (ix.reverse_trie_->leaf_count() != ix.np_)
        throw load_error(load_error_kind::bad_section, "reverse trie leaf mismatch");
    }
  }
  for (uint64_t j = 1; j <= ix.np_; ++j) {
    if (ix.rev_id_[j - 1] < 1 || ix.rev_id_[j - 1] > ix.np_)
      throw load_error(load_error_kind::bad_section, "rev_id entry out of range");
    if (ix.rev_id_[j - 1] == ix.np_) ix.rev_rank_last_ = j;
  }
  return ix;
}

}  // namespace lzsi
