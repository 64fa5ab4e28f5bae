#include <doctest.h>

#include <algorithm>
#include <array>
#include <random>
#include <set>
#include <string>

#include "lzsi/oracle.hpp"
#include "lzsi/parsing.hpp"

using namespace lzsi;

namespace {

const std::string kExample = "alabar_a_la_alabarda$";

// Reference parsers: plain scans straight off the definitions.

parsing brute_lz77(std::string_view text) {
  parsing out;
  out.flavor = parse_flavor::lz77;
  out.text_len = text.size();
  uint64_t n = text.size(), i = 1;
  while (i <= n) {
    uint64_t cap = n - i;
    uint64_t best_len = 0, best_start = 0;
    for (uint64_t len = 1; len <= cap; ++len) {
      auto hit = text.substr(0, i - 1).find(text.substr(i - 1, len));
      if (hit == std::string_view::npos) break;  // copyable prefixes are nested
      best_len = len;
      best_start = hit + 1;
    }
    out.phrases.push_back({best_start, best_len, static_cast<uint8_t>(text[i - 1 + best_len])});
    i += best_len + 1;
  }
  return out;
}

parsing brute_lzend(std::string_view text) {
  parsing out;
  out.flavor = parse_flavor::lzend;
  out.text_len = text.size();
  uint64_t n = text.size(), i = 1;
  std::vector<uint64_t> ends;
  while (i <= n) {
    uint64_t cap = n - i;
    uint64_t best_len = 0, best_start = 0;
    for (uint64_t len = 1; len <= cap; ++len) {
      uint64_t found = 0;
      for (uint64_t e : ends) {
        if (e < len) continue;
        if (text.substr(e - len, len) == text.substr(i - 1, len)) {
          found = e - len + 1;
          break;
        }
      }
      if (found) {
        best_len = len;
        best_start = found;
      }
    }
    out.phrases.push_back({best_start, best_len, static_cast<uint8_t>(text[i - 1 + best_len])});
    ends.push_back(i + best_len);
    i += best_len + 1;
  }
  return out;
}

bool same_parsing(const parsing& a, const parsing& b) {
  if (a.size() != b.size() || a.text_len != b.text_len) return false;
  for (uint64_t k = 0; k < a.size(); ++k) {
    if (a.phrases[k].copy_start != b.phrases[k].copy_start ||
        a.phrases[k].copy_len != b.phrases[k].copy_len ||
        a.phrases[k].last != b.phrases[k].last)
      return false;
  }
  return true;
}

std::string random_text(std::mt19937_64& rng, uint64_t len, unsigned alphabet) {
  std::string s(len, 0);
  if (alphabet <= 26) {
    for (auto& c : s) c = static_cast<char>('a' + rng() % alphabet);
  } else {
    for (auto& c : s) c = static_cast<char>(rng() % alphabet);
  }
  return s;
}

std::string repetitive_text(std::mt19937_64& rng, uint64_t seed_len, unsigned copies,
                            double mutation_rate) {
  std::string seed(seed_len, 0);
  for (auto& c : seed) c = static_cast<char>('a' + rng() % 4);
  std::string text = seed;
  std::bernoulli_distribution mutate(mutation_rate);
  for (unsigned c = 1; c < copies; ++c) {
    std::string copy = seed;
    for (auto& ch : copy)
      if (mutate(rng)) ch = static_cast<char>('a' + rng() % 4);
    text += copy;
  }
  return text;
}

}  // namespace

TEST_CASE("lz77 parse of the worked example") {
  parsing p = parse_lz77(kExample);
  REQUIRE(p.size() == 9);
  // a | l | ab | ar | _ | a_ | la_ | alabard | a$
  const std::vector<phrase> want = {
      {0, 0, 'a'}, {0, 0, 'l'}, {1, 1, 'b'}, {1, 1, 'r'}, {0, 0, '_'},
      {1, 1, '_'}, {2, 2, '_'}, {1, 6, 'd'}, {1, 1, '$'},
  };
  for (size_t k = 0; k < want.size(); ++k) {
    CAPTURE(k);
    CHECK(p.phrases[k].copy_start == want[k].copy_start);
    CHECK(p.phrases[k].copy_len == want[k].copy_len);
    CHECK(p.phrases[k].last == want[k].last);
  }
  CHECK(p.phrase_ends() == std::vector<uint64_t>{1, 2, 4, 6, 7, 9, 12, 19, 21});
  CHECK(p.decode() == kExample);
  CHECK_FALSE(validate_parsing(p, kExample).has_value());
}

TEST_CASE("empty text and the end-of-text rule") {
  CHECK(parse_lz77("").size() == 0);
  CHECK(parse_lzend("").size() == 0);
  CHECK_FALSE(validate_parsing(parse_lz77(""), "").has_value());

  parsing p = parse_lz77("aaaa");
  REQUIRE(p.size() == 3);  // a | aa | a
  CHECK(p.phrases[1].copy_start == 1);
  CHECK(p.phrases[1].copy_len == 1);
  CHECK(p.phrases[2].copy_len == 0);  // truncated final phrase
  CHECK(p.decode() == "aaaa");

  parsing q = parse_lzend("aaaa");
  REQUIRE(q.size() == 3);
  CHECK(q.decode() == "aaaa");
  CHECK(same_parsing(q, brute_lzend("aaaa")));
}

TEST_CASE("lzend structural properties on the worked example") {
  parsing p = parse_lzend(kExample);
  CHECK(p.size() >= 9);
  CHECK(p.decode() == kExample);
  CHECK_FALSE(validate_parsing(p, kExample).has_value());
  std::vector<uint64_t> ends = p.phrase_ends();
  for (const phrase& ph : p.phrases) {
    if (ph.copy_len == 0) continue;
    CHECK(std::binary_search(ends.begin(), ends.end(), ph.copy_start + ph.copy_len - 1));
  }
}

TEST_CASE("validate_parsing flags constructed violations") {
  parsing p = parse_lz77(kExample);
  SUBCASE("maximality") {
    // replace phrase 3 ("ab") by an explicit 'a' and an explicit 'b'; a
    // longer copy was clearly available at the 'a'
    parsing bad = p;
    bad.phrases[2] = {0, 0, 'a'};
    bad.phrases.insert(bad.phrases.begin() + 3, phrase{0, 0, 'b'});
    auto v = validate_parsing(bad, kExample);
    REQUIRE(v.has_value());
    CHECK(v->what == parse_violation::kind::maximality);
    CHECK(v->phrase_index == 3);
  }
  SUBCASE("reconstruction") {
    parsing bad = p;
    bad.phrases[8].last = 'x';
    auto v = validate_parsing(bad, kExample);
    REQUIRE(v.has_value());
    CHECK(v->what == parse_violation::kind::reconstruction);
  }
  SUBCASE("containment") {
    parsing bad = p;
    bad.phrases[7].copy_start = 13;  // source would overlap the phrase
    auto v = validate_parsing(bad, kExample);
    REQUIRE(v.has_value());
    CHECK(v->what != parse_violation::kind::maximality);
  }
  SUBCASE("lzend boundary") {
    parsing bad = parse_lzend(kExample);
    for (auto& ph : bad.phrases) {
      if (ph.copy_len != 2) continue;
      ph.copy_start += 1;  // off a boundary; also breaks the copied text
      break;
    }
    auto v = validate_parsing(bad, kExample);
    REQUIRE(v.has_value());
  }
}

TEST_CASE("height of the worked example and friends") {
  height_report hr = compute_height(parse_lz77(kExample));
  CHECK(hr.h == 3);
  CHECK(hr.copy_counts[10] == 3);  // position 11, through 'la_' then 'ab'

  CHECK(compute_height(parse_lz77("abcdef")).h == 1);

  height_report aaaa = compute_height(parse_lz77("aaaa"));
  CHECK(aaaa.h == 2);
  CHECK(aaaa.copy_counts == std::vector<uint32_t>{1, 2, 1, 1});
}

TEST_CASE("source depths of the worked example") {
  depth_assignment da = compute_source_depths(parse_lz77(kExample));
  CHECK(da.delta == 1);
  CHECK(da.depths == std::vector<uint32_t>{0, 0, 0, 0, 0, 0, 0, 0, 1});

  depth_assignment fresh = compute_source_depths(parse_lz77("abcdef"));
  CHECK(fresh.delta == 0);
  for (uint32_t d : fresh.depths) CHECK(d == 0);
}

TEST_CASE("source order of the worked example") {
  source_layout layout = compute_source_order(parse_lz77(kExample));
  CHECK(layout.target_rank == std::vector<uint64_t>{1, 2, 4, 5, 3, 6, 9, 8, 7});
  CHECK(layout.order == std::vector<uint64_t>{1, 2, 5, 3, 4, 6, 9, 8, 7});
}

TEST_CASE("parsers match the reference parsers exactly") {
  std::mt19937_64 rng(0x715a);
  std::vector<std::string> texts = {"a",      "ab",          "abab",   "aabbaabb",
                                    "banana", "mississippi", kExample};
  for (int i = 0; i < 40; ++i) {
    unsigned alpha = i % 3 == 0 ? 2 : i % 3 == 1 ? 4 : 26;
    texts.push_back(random_text(rng, 1 + rng() % 400, alpha));
  }
  texts.push_back(repetitive_text(rng, 80, 5, 0.02));
  for (const std::string& t : texts) {
    CAPTURE(t.size());
    CHECK(same_parsing(parse_lz77(t), brute_lz77(t)));
    CHECK(same_parsing(parse_lzend(t), brute_lzend(t)));
  }
}

TEST_CASE("parsing invariants on random and repetitive texts") {
  std::mt19937_64 rng(0xfeed);
  for (int round = 0; round < 60; ++round) {
    std::string text;
    if (round % 5 == 4) {
      text = repetitive_text(rng, 100 + rng() % 300, 2 + rng() % 8,
                             0.001 + 0.01 * (rng() % 5));
    } else {
      unsigned alphabet = std::array<unsigned, 4>{2, 4, 26, 256}[round % 4];
      text = random_text(rng, 1 + rng() % 2000, alphabet);
    }
    for (parse_flavor flavor : {parse_flavor::lz77, parse_flavor::lzend}) {
      parsing p = flavor == parse_flavor::lz77 ? parse_lz77(text) : parse_lzend(text);
      CAPTURE(text.size());
      CAPTURE(static_cast<int>(flavor));
      CHECK(p.decode() == text);
      auto violation = validate_parsing(p, text);
      if (violation.has_value()) CAPTURE(violation->detail);
      CHECK_FALSE(violation.has_value());

      uint64_t max_len = 0;
      for (const phrase& ph : p.phrases) max_len = std::max(max_len, ph.length());
      CHECK(compute_height(p).h <= max_len);

      depth_assignment got = compute_source_depths(p);
      depth_assignment want = oracle::naive_depths(p);
      CHECK(got.delta == want.delta);
      CHECK(got.depths == want.depths);
    }
    parsing p77 = parse_lz77(text);
    parsing pend = parse_lzend(text);
    CHECK(pend.size() >= p77.size());

    // untruncated phrases are pairwise distinct strings
    std::set<std::string> seen;
    uint64_t pos = 1;
    for (uint64_t k = 0; k + 1 < p77.size(); ++k) {
      std::string ph = std::string(text.substr(pos - 1, p77.phrases[k].length()));
      CHECK(seen.insert(ph).second);
      pos += p77.phrases[k].length();
    }
  }
}

TEST_CASE("nested depths match the pairwise oracle") {
  // copies of copies push sources below other sources
  std::string t = "abcabcdabcdabcde";
  for (int i = 0; i < 4; ++i) t += t;
  parsing p = parse_lz77(t);
  depth_assignment got = compute_source_depths(p);
  depth_assignment want = oracle::naive_depths(p);
  CHECK(got.depths == want.depths);
  CHECK(got.delta == want.delta);
  CHECK(got.delta >= 1);
}

TEST_CASE("parsing serialization round-trip") {
  parsing p = parse_lzend(kExample);
  detail::byte_writer w;
  p.serialize(w);
  std::string blob = w.take();
  detail::byte_reader r({reinterpret_cast<const uint8_t*>(blob.data()), blob.size()});
  parsing q = parsing::deserialize(r);
  CHECK(same_parsing(p, q));
  CHECK(q.flavor == parse_flavor::lzend);
}
