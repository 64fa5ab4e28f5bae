#include <doctest.h>

#include <algorithm>
#include <bit>
#include <numeric>
#include <random>
#include <set>
#include <vector>

#include "lzsi/dac.hpp"
#include "lzsi/permutation.hpp"
#include "lzsi/plain_bitmap.hpp"
#include "lzsi/sparse_bitmap.hpp"
#include "lzsi/wavelet_tree.hpp"

using namespace lzsi;

namespace {

// Structures of the running example text "alabar_a_la_alabarda$".
const std::vector<uint64_t> kExampleB = {1, 2, 4, 6, 7, 9, 12, 19, 21};
const std::vector<uint64_t> kExampleS = {1, 2, 3, 5, 6, 7, 8, 9, 11};
const std::vector<uint64_t> kExampleD = {0, 0, 0, 0, 0, 0, 0, 0, 1};
const std::vector<uint64_t> kExampleR = {9, 7, 2, 8, 0, 4, 6, 3, 5};

std::vector<uint64_t> random_positions(std::mt19937_64& rng, uint64_t universe,
                                       double density) {
  std::vector<uint64_t> pos;
  std::bernoulli_distribution coin(density);
  for (uint64_t i = 1; i <= universe; ++i)
    if (coin(rng)) pos.push_back(i);
  return pos;
}

}  // namespace

TEST_CASE("sparse bitmap on the worked example") {
  sparse_bitmap b(kExampleB, 21);
  CHECK(b.rank1(6) == 4);
  CHECK(b.rank1(0) == 0);
  CHECK(b.select1(3) == 4);
  CHECK(b.select1(9) == 21);

  sparse_bitmap s(kExampleS, 31);
  CHECK(s.rank0(11) == 2);
  CHECK(s.select0(3) == 12);
}

TEST_CASE("sparse bitmap edge shapes") {
  sparse_bitmap empty({}, 10);
  CHECK(empty.rank1(10) == 0);
  CHECK(empty.rank0(10) == 10);
  CHECK(empty.select0(7) == 7);
  CHECK_THROWS_AS(empty.select1(1), std::out_of_range);

  std::vector<uint64_t> all(64);
  std::iota(all.begin(), all.end(), 1);
  sparse_bitmap ones(all, 64);
  for (uint64_t i = 0; i <= 64; ++i) CHECK(ones.rank1(i) == i);
  CHECK_THROWS_AS(ones.select0(1), std::out_of_range);
}

TEST_CASE("sparse bitmap validation and range errors") {
  CHECK_THROWS_AS(sparse_bitmap(std::vector<uint64_t>{3, 3}, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(sparse_bitmap(std::vector<uint64_t>{5, 4}, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(sparse_bitmap(std::vector<uint64_t>{11}, 10),
                  std::invalid_argument);
  sparse_bitmap b(kExampleB, 21);
  CHECK_THROWS_AS(b.rank1(22), std::out_of_range);
  CHECK_THROWS_AS(b.select1(10), std::out_of_range);
  CHECK_THROWS_AS(b.select1(0), std::out_of_range);
}

TEST_CASE("rank/select axioms against a naive bit array") {
  std::mt19937_64 rng(0xb175);
  for (double density : {0.001, 0.01, 0.1, 0.5}) {
    uint64_t universe = density < 0.01 ? 100000 : 20000;
    auto positions = random_positions(rng, universe, density);
    for (uint64_t rate : {1ull, 7ull, 32ull}) {
      sparse_bitmap bm(positions, universe, rate);
      std::vector<bool> naive(universe + 1, false);
      for (uint64_t p : positions) naive[p] = true;
      uint64_t ones = 0;
      std::vector<uint64_t> checkpoints;
      for (int i = 0; i < 300; ++i)
        checkpoints.push_back(rng() % (universe + 1));
      std::sort(checkpoints.begin(), checkpoints.end());
      uint64_t cursor = 0, acc = 0;
      for (uint64_t cp : checkpoints) {
        while (cursor < cp) acc += naive[++cursor] ? 1 : 0;
        CHECK(bm.rank1(cp) == acc);
        CHECK(bm.rank0(cp) + bm.rank1(cp) == cp);
      }
      for (uint64_t p = 1; p <= universe; ++p) ones += naive[p] ? 1 : 0;
      CHECK(bm.ones() == ones);
      for (int i = 0; i < 100 && ones > 0; ++i) {
        uint64_t k = rng() % ones + 1;
        uint64_t pos = bm.select1(k);
        CHECK(naive[pos]);
        CHECK(bm.rank1(pos) == k);
        CHECK(bm.rank1(pos - 1) == k - 1);
      }
      uint64_t zeros = universe - ones;
      for (int i = 0; i < 100 && zeros > 0; ++i) {
        uint64_t k = rng() % zeros + 1;
        uint64_t pos = bm.select0(k);
        CHECK(!naive[pos]);
        CHECK(bm.rank0(pos) == k);
      }
    }
  }
}

TEST_CASE("plain bitmap rank/select") {
  std::mt19937_64 rng(0xa7a7);
  for (uint64_t n : {1ull, 63ull, 64ull, 65ull, 4096ull, 10000ull}) {
    plain_bitmap bm(n);
    std::vector<bool> naive(n + 1, false);
    for (uint64_t i = 1; i <= n; ++i) {
      if (rng() % 3 == 0) {
        bm.set(i);
        naive[i] = true;
      }
    }
    bm.finalize();
    uint64_t acc = 0;
    for (uint64_t i = 1; i <= n; ++i) {
      acc += naive[i];
      CHECK(bm.rank1(i) == acc);
      CHECK(bm.get(i) == naive[i]);
    }
    for (uint64_t k = 1; k <= bm.ones(); ++k) CHECK(bm.rank1(bm.select1(k)) == k);
    for (uint64_t k = 1; k <= bm.zeros(); ++k) CHECK(bm.rank0(bm.select0(k)) == k);
  }
}

TEST_CASE("wavelet tree on the worked example sequences") {
  wavelet_tree d(kExampleD, 1);
  CHECK(d.height() == 1);
  CHECK(d.rank(0, 9) == 8);
  CHECK(d.select(1, 1) == 9);

  wavelet_tree r(kExampleR, 9);
  CHECK(r.max_symbol() == 9);
  CHECK(r.access(9) == 5);
  for (size_t i = 0; i < kExampleR.size(); ++i) CHECK(r.access(i + 1) == kExampleR[i]);

  auto pts = r.range_report(8, 9, 5, 5);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0] == std::pair<uint64_t, uint64_t>{9, 5});

  auto all = r.range_report(1, 9, 1, 9);
  CHECK(all.size() == 8);  // everything except the sentinel 0 at row 5

  CHECK(r.range_report(3, 2, 1, 9).empty());
}

TEST_CASE("wavelet tree prev_less on the worked example") {
  wavelet_tree d(kExampleD, 1);
  CHECK(d.prev_less(9, 1) == 8);
  CHECK_FALSE(d.prev_less(1, 5).has_value());
  CHECK_FALSE(d.prev_less(9, 0).has_value());
}

TEST_CASE("empty wavelet tree rejects queries") {
  wavelet_tree wt(std::vector<uint64_t>{});
  CHECK(wt.size() == 0);
  CHECK_THROWS_AS(wt.access(1), std::out_of_range);
  CHECK_THROWS_AS(wt.select(0, 1), std::out_of_range);
  CHECK_THROWS_AS(wt.rank(0, 1), std::out_of_range);
  CHECK_FALSE(wt.prev_less(1, 1).has_value());
}

TEST_CASE("wavelet tree operations against naive scans") {
  std::mt19937_64 rng(0x3eed);
  for (int round = 0; round < 24; ++round) {
    uint64_t n = 1 + rng() % (round < 20 ? 300 : 10000);
    uint64_t sigma = 1 + rng() % 64;
    std::vector<uint64_t> seq(n);
    for (auto& v : seq) v = rng() % sigma;
    wavelet_tree wt(seq);
    uint64_t mx = *std::max_element(seq.begin(), seq.end());
    CHECK(wt.max_symbol() == mx);
    if (mx > 0) CHECK(wt.height() == static_cast<uint64_t>(std::bit_width(mx)));

    for (int q = 0; q < 40; ++q) {
      uint64_t i = 1 + rng() % n;
      CHECK(wt.access(i) == seq[i - 1]);
      uint64_t c = rng() % (mx + 1);
      uint64_t upto = rng() % (n + 1);
      uint64_t naive = 0;
      for (uint64_t p = 1; p <= upto; ++p) naive += seq[p - 1] == c;
      CHECK(wt.rank(c, upto) == naive);
      if (naive > 0) {
        uint64_t k = 1 + rng() % naive;
        uint64_t want = 0, cnt = 0;
        for (uint64_t p = 1; p <= n && want == 0; ++p)
          if (seq[p - 1] == c && ++cnt == k) want = p;
        CHECK(wt.select(c, k) == want);
      }
    }

    for (int q = 0; q < 10; ++q) {
      uint64_t a = 1 + rng() % n, b = 1 + rng() % n;
      if (a > b) std::swap(a, b);
      uint64_t jl = rng() % (mx + 1), jh = rng() % (mx + 1);
      if (jl > jh) std::swap(jl, jh);
      auto got = wt.range_report(a, b, jl, jh);
      std::set<std::pair<uint64_t, uint64_t>> got_set(got.begin(), got.end());
      CHECK(got_set.size() == got.size());
      std::set<std::pair<uint64_t, uint64_t>> want;
      for (uint64_t p = a; p <= b; ++p)
        if (seq[p - 1] >= jl && seq[p - 1] <= jh) want.insert({p, seq[p - 1]});
      CHECK(got_set == want);
    }

    for (int q = 0; q < 40; ++q) {
      uint64_t s = 1 + rng() % (n + 1);
      uint64_t dd = rng() % (mx + 2);
      auto got = wt.prev_less(s, dd);
      uint64_t want = 0;
      for (uint64_t p = s - 1; p >= 1; --p) {
        if (seq[p - 1] < dd) {
          want = p;
          break;
        }
      }
      if (want == 0) {
        CHECK_FALSE(got.has_value());
      } else {
        REQUIRE(got.has_value());
        CHECK(*got == want);
        // everything between the answer and s is >= dd
        for (uint64_t p = *got + 1; p < s; ++p) CHECK(seq[p - 1] >= dd);
      }
    }
  }
}

TEST_CASE("permutation of the worked example") {
  permutation p({1, 2, 4, 5, 3, 6, 9, 8, 7}, 2);
  CHECK(p.apply(7) == 9);
  CHECK(p.inverse(9) == 7);
  for (uint64_t i = 1; i <= 9; ++i) CHECK(p.inverse(p.apply(i)) == i);
}

TEST_CASE("permutation identity and single cycle") {
  permutation ident({1, 2, 3, 4, 5}, 2);
  CHECK(ident.inverse(3) == 3);

  // cycle (2,3,...,n,1)
  uint64_t n = 17;
  std::vector<uint64_t> fwd(n);
  for (uint64_t i = 1; i <= n; ++i) fwd[i - 1] = i % n + 1;
  permutation cyc(fwd, 1);
  CHECK(cyc.inverse(1) == n);
  for (uint64_t i = 1; i <= n; ++i) CHECK(cyc.inverse(cyc.apply(i)) == i);
}

TEST_CASE("permutation validation") {
  CHECK_THROWS_AS(permutation({1, 1, 3}, 1), std::invalid_argument);
  CHECK_THROWS_AS(permutation({0, 1, 2}, 1), std::invalid_argument);
  CHECK_THROWS_AS(permutation({1, 2, 4}, 1), std::invalid_argument);
  permutation p({2, 1}, 1);
  CHECK_THROWS_AS(p.apply(0), std::out_of_range);
  CHECK_THROWS_AS(p.inverse(3), std::out_of_range);
}

TEST_CASE("permutation inverse against a stored inverse") {
  std::mt19937_64 rng(0x9e37);
  for (uint64_t n : {1ull, 2ull, 5ull, 64ull, 257ull, 2000ull}) {
    std::vector<uint64_t> fwd(n);
    std::iota(fwd.begin(), fwd.end(), 1);
    std::shuffle(fwd.begin(), fwd.end(), rng);
    std::vector<uint64_t> inv(n);
    for (uint64_t i = 1; i <= n; ++i) inv[fwd[i - 1] - 1] = i;
    uint64_t logn = std::max<uint64_t>(1, std::bit_width(n));
    for (uint64_t l : {uint64_t{1}, uint64_t{2}, uint64_t{4}, logn}) {
      permutation p(fwd, l);
      for (uint64_t j = 1; j <= n; ++j) CHECK(p.inverse(j) == inv[j - 1]);
    }
  }
}

TEST_CASE("dac examples") {
  dac small(std::vector<uint64_t>{0, 0, 1, 0}, 2);
  CHECK(small.levels() == 1);
  CHECK(small.access(3) == 1);
  CHECK(small.access(1) == 0);

  dac five(std::vector<uint64_t>{5}, 2);
  CHECK(five.levels() == 2);
  CHECK(five.access(1) == 5);

  dac empty(std::vector<uint64_t>{}, 4);
  CHECK(empty.size() == 0);
  CHECK_THROWS_AS(empty.access(1), std::out_of_range);
}

TEST_CASE("dac round-trips values across widths") {
  std::mt19937_64 rng(0xdac0);
  std::vector<uint64_t> values;
  for (int i = 0; i < 500; ++i) {
    int cls = rng() % 4;
    uint64_t v = cls == 0   ? 0
                 : cls == 1 ? rng() % 16
                 : cls == 2 ? rng() % 100000
                            : (uint64_t{1} << 32) + rng() % 1000000;
    values.push_back(v);
  }
  for (uint32_t b : {1u, 2u, 4u, 8u}) {
    dac d(values, b);
    for (size_t i = 0; i < values.size(); ++i) CHECK(d.access(i + 1) == values[i]);
  }
}
