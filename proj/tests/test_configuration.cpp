#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "configk3/configuration.hpp"

using namespace configk3;

namespace {

// Independent oracle: plain backtracking over increasing line chains with the
// first line pinned to {0,1,2}, deduplicated by a brute-force isomorphism
// search. Kept deliberately separate from the library's canonical labeling.
namespace oracle {

bool extend_iso(const Configuration& c1, const Configuration& c2,
                std::vector<int>& map, int next) {
  if (next == c1.n) {
    std::set<std::array<int, 3>> lines2(c2.lines.begin(), c2.lines.end());
    for (auto l : c1.lines) {
      std::array<int, 3> img{map[size_t(l[0])], map[size_t(l[1])],
                             map[size_t(l[2])]};
      std::sort(img.begin(), img.end());
      if (!lines2.count(img)) return false;
    }
    return true;
  }
  std::vector<bool> used(size_t(c2.n), false);
  for (int i = 0; i < next; ++i) used[size_t(map[size_t(i)])] = true;
  for (int tgt = 0; tgt < c2.n; ++tgt) {
    if (used[size_t(tgt)]) continue;
    map[size_t(next)] = tgt;
    // Pair compatibility with already-mapped points.
    bool ok = true;
    for (int p = 0; p < next && ok; ++p) {
      bool collinear1 = false;
      for (auto l : c1.lines) {
        int hits = 0;
        for (int q : l)
          if (q == p || q == next) ++hits;
        if (hits == 2) collinear1 = true;
      }
      bool collinear2 = false;
      for (auto l : c2.lines) {
        int hits = 0;
        for (int q : l)
          if (q == map[size_t(p)] || q == tgt) ++hits;
        if (hits == 2) collinear2 = true;
      }
      if (collinear1 != collinear2) ok = false;
    }
    if (ok && extend_iso(c1, c2, map, next + 1)) return true;
  }
  map[size_t(next)] = -1;
  return false;
}

bool isomorphic(const Configuration& c1, const Configuration& c2) {
  if (c1.n != c2.n || c1.lines.size() != c2.lines.size()) return false;
  std::vector<int> map(size_t(c1.n), -1);
  return extend_iso(c1, c2, map, 0);
}

void search(int n, std::vector<std::array<int, 3>>& chosen,
            std::vector<int>& degree, std::vector<std::vector<bool>>& pair_used,
            const std::vector<std::array<int, 3>>& cands, size_t from,
            std::vector<Configuration>& reps) {
  if (int(chosen.size()) == n) {
    for (int p = 0; p < n; ++p)
      if (degree[size_t(p)] != 3) return;
    Configuration c = Configuration::from_lines(n, chosen);
    for (const auto& r : reps)
      if (isomorphic(c, r)) return;
    reps.push_back(c);
    return;
  }
  for (size_t i = from; i < cands.size(); ++i) {
    const auto& l = cands[i];
    bool ok = true;
    for (int p : l)
      if (degree[size_t(p)] >= 3) ok = false;
    if (ok && (pair_used[size_t(l[0])][size_t(l[1])] ||
               pair_used[size_t(l[0])][size_t(l[2])] ||
               pair_used[size_t(l[1])][size_t(l[2])]))
      ok = false;
    if (!ok) continue;
    for (int p : l) ++degree[size_t(p)];
    pair_used[size_t(l[0])][size_t(l[1])] = true;
    pair_used[size_t(l[0])][size_t(l[2])] = true;
    pair_used[size_t(l[1])][size_t(l[2])] = true;
    chosen.push_back(l);
    search(n, chosen, degree, pair_used, cands, i + 1, reps);
    chosen.pop_back();
    for (int p : l) --degree[size_t(p)];
    pair_used[size_t(l[0])][size_t(l[1])] = false;
    pair_used[size_t(l[0])][size_t(l[2])] = false;
    pair_used[size_t(l[1])][size_t(l[2])] = false;
  }
}

std::vector<Configuration> enumerate(int n) {
  std::vector<std::array<int, 3>> cands;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) cands.push_back({a, b, c});
  std::vector<std::array<int, 3>> chosen{{0, 1, 2}};
  std::vector<int> degree(size_t(n), 0);
  std::vector<std::vector<bool>> pair_used(size_t(n),
                                           std::vector<bool>(size_t(n), false));
  degree[0] = degree[1] = degree[2] = 1;
  pair_used[0][1] = pair_used[0][2] = pair_used[1][2] = true;
  std::vector<Configuration> reps;
  // Candidates after {0,1,2} in increasing order.
  std::vector<std::array<int, 3>> later(cands.begin() + 1, cands.end());
  search(n, chosen, degree, pair_used, later, 0, reps);
  return reps;
}

}  // namespace oracle

Configuration fano() {
  // Difference set {1,2,4} mod 7.
  std::vector<std::array<int, 3>> lines;
  for (int i = 0; i < 7; ++i)
    lines.push_back({(1 + i) % 7, (2 + i) % 7, (4 + i) % 7});
  return Configuration::from_lines(7, lines);
}

}  // namespace

TEST_CASE("validate_n3 on L_V and corrupted inputs") {
  CHECK(validate_n3(builtin_lv()).ok);
  CHECK(validate_n3(fano()).ok);

  // Two lines sharing the pair {0,1}.
  Configuration bad = Configuration::from_lines(
      7, {{0, 1, 2}, {0, 1, 3}, {2, 3, 4}, {4, 5, 6}, {0, 4, 5}, {1, 5, 6},
          {2, 5, 6}});
  auto rep = validate_n3(bad);
  CHECK(!rep.ok);
  CHECK(!rep.violations.empty());
}

TEST_CASE("duality") {
  Configuration lv = builtin_lv();
  Configuration d = dual_configuration(lv);
  CHECK(validate_n3(d).ok);
  CHECK(are_isomorphic(dual_configuration(d), lv).has_value());
  // All 10_3 configurations are self-dual.
  CHECK(are_isomorphic(d, lv).has_value());

  Configuration f = fano();
  CHECK(oracle::isomorphic(dual_configuration(f), f));
  CHECK(are_isomorphic(dual_configuration(f), f).has_value());
}

TEST_CASE("isomorphism with random relabeling") {
  Configuration lv = builtin_lv();
  std::mt19937_64 rng(4242);
  std::vector<int> perm(10);
  for (int i = 0; i < 10; ++i) perm[size_t(i)] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::array<int, 3>> lines;
  for (auto l : lv.lines)
    lines.push_back({perm[size_t(l[0])], perm[size_t(l[1])], perm[size_t(l[2])]});
  Configuration shuffled = Configuration::from_lines(10, lines);
  auto bij = are_isomorphic(lv, shuffled);
  REQUIRE(bij.has_value());
  // Verified image check: every line maps onto a line.
  for (auto l : lv.lines) {
    std::array<int, 3> img{(*bij)[size_t(l[0])], (*bij)[size_t(l[1])],
                           (*bij)[size_t(l[2])]};
    std::sort(img.begin(), img.end());
    CHECK(std::binary_search(shuffled.lines.begin(), shuffled.lines.end(), img));
  }
}

TEST_CASE("oracle counts for n = 7 and n = 9, then main enumeration") {
  auto o7 = oracle::enumerate(7);
  CHECK(o7.size() == 1);
  auto e7 = enumerate_n3(7);
  REQUIRE(e7.size() == 1);
  CHECK(validate_n3(e7[0]).ok);
  CHECK(are_isomorphic(e7[0], fano()).has_value());

  auto o9 = oracle::enumerate(9);
  CHECK(o9.size() == 3);
  auto e9 = enumerate_n3(9);
  REQUIRE(e9.size() == 3);
  for (const auto& c : e9) CHECK(validate_n3(c).ok);
  // Cross-check: each oracle class appears exactly once in the main list.
  for (const auto& oc : o9) {
    int hits = 0;
    for (const auto& ec : e9)
      if (are_isomorphic(oc, ec).has_value()) ++hits;
    CHECK(hits == 1);
  }
}

TEST_CASE("enumerate 8 and 10; parallel matches serial") {
  auto e8 = enumerate_n3(8);
  CHECK(e8.size() == 1);

  auto e10 = enumerate_n3(10);
  REQUIRE(e10.size() == 10);
  for (const auto& c : e10) CHECK(validate_n3(c).ok);

  // Pairwise non-isomorphic.
  for (size_t i = 0; i < e10.size(); ++i)
    for (size_t j = i + 1; j < e10.size(); ++j)
      CHECK(!are_isomorphic(e10[i], e10[j]).has_value());

  // One class is Eq.(1)'s L_V.
  int lv_hits = 0;
  for (const auto& c : e10)
    if (are_isomorphic(c, builtin_lv()).has_value()) ++lv_hits;
  CHECK(lv_hits == 1);

  // dual o dual = identity up to isomorphism on every class; self-duality.
  for (const auto& c : e10) {
    Configuration d = dual_configuration(c);
    CHECK(are_isomorphic(dual_configuration(d), c).has_value());
    CHECK(are_isomorphic(d, c).has_value());
  }

  CHECK(enumerate_n3_serial(10) == e10);
  CHECK(enumerate_n3_serial(7) == enumerate_n3(7));

  CHECK_THROWS(enumerate_n3(6));
  CHECK_THROWS(enumerate_n3(11));
}

TEST_CASE("fast rejection on differing invariants") {
  auto e10 = enumerate_n3(10);
  // Find two classes with different line-meet multisets: count via triangles
  // is not exposed, so simply assert the fast path returns nullopt quickly for
  // at least one pair (they are non-isomorphic regardless).
  CHECK(!are_isomorphic(e10[0], e10[9]).has_value());

  // Canonical representatives are fixed points of canonical_form.
  for (const auto& c : e10) CHECK(canonical_form(c).config == c);
}
