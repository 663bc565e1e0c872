#include "configk3/configuration.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "configk3/parallel.hpp"

namespace configk3 {

Configuration Configuration::from_lines(int n,
                                        std::vector<std::array<int, 3>> lines) {
  for (auto& l : lines) std::sort(l.begin(), l.end());
  std::sort(lines.begin(), lines.end());
  return Configuration{n, std::move(lines)};
}

std::vector<int> Configuration::lines_through(int point) const {
  std::vector<int> out;
  for (size_t i = 0; i < lines.size(); ++i)
    if (lines[i][0] == point || lines[i][1] == point || lines[i][2] == point)
      out.push_back(int(i));
  return out;
}

bool Configuration::has_line(int p, int q, int r) const {
  std::array<int, 3> l{p, q, r};
  std::sort(l.begin(), l.end());
  return std::binary_search(lines.begin(), lines.end(), l);
}

std::string Configuration::str() const {
  std::ostringstream out;
  out << n << ":";
  for (const auto& l : lines) out << " " << l[0] << l[1] << l[2];
  return out.str();
}

Configuration builtin_lv() {
  return Configuration::from_lines(
      10, {{1, 2, 4}, {1, 3, 8}, {1, 7, 9}, {2, 3, 7}, {2, 5, 9},
           {3, 5, 0}, {4, 5, 6}, {4, 8, 0}, {6, 7, 8}, {6, 9, 0}});
}

ValidationReport validate_n3(const Configuration& c) {
  ValidationReport rep;
  auto fail = [&](const std::string& msg) {
    rep.ok = false;
    rep.violations.push_back(msg);
  };

  for (const auto& l : c.lines) {
    if (l[0] == l[1] || l[1] == l[2] || l[0] == l[2])
      fail("line with repeated point: " + std::to_string(l[0]) + "," +
           std::to_string(l[1]) + "," + std::to_string(l[2]));
    for (int p : l)
      if (p < 0 || p >= c.n) fail("point out of range: " + std::to_string(p));
  }
  for (size_t i = 0; i < c.lines.size(); ++i)
    for (size_t j = i + 1; j < c.lines.size(); ++j) {
      int common = 0;
      for (int p : c.lines[i])
        for (int q : c.lines[j])
          if (p == q) ++common;
      if (common > 1)
        fail("lines share more than one point: " + std::to_string(int(i)) +
             " and " + std::to_string(int(j)));
    }
  if (int(c.lines.size()) != c.n)
    fail("expected " + std::to_string(c.n) + " lines, found " +
         std::to_string(int(c.lines.size())));
  std::vector<int> deg(size_t(c.n), 0);
  for (const auto& l : c.lines)
    for (int p : l)
      if (p >= 0 && p < c.n) ++deg[size_t(p)];
  for (int p = 0; p < c.n; ++p)
    if (deg[size_t(p)] != 3)
      fail("point " + std::to_string(p) + " lies on " +
           std::to_string(deg[size_t(p)]) + " lines, expected 3");
  return rep;
}

Configuration dual_configuration(const Configuration& c) {
  auto rep = validate_n3(c);
  if (!rep.ok) throw std::invalid_argument("dual: input is not n_3-valid");
  std::vector<std::array<int, 3>> dual_lines;
  for (int p = 0; p < c.n; ++p) {
    auto through = c.lines_through(p);
    dual_lines.push_back({through[0], through[1], through[2]});
  }
  return Configuration::from_lines(c.n, std::move(dual_lines));
}

namespace {

Configuration relabel(const Configuration& c, const std::vector<int>& lab) {
  std::vector<std::array<int, 3>> lines;
  lines.reserve(c.lines.size());
  for (const auto& l : c.lines)
    lines.push_back({lab[size_t(l[0])], lab[size_t(l[1])], lab[size_t(l[2])]});
  return Configuration::from_lines(c.n, std::move(lines));
}

// Sorted multiset of per-line meeting counts: cheap isomorphism invariant.
std::vector<int> line_meet_invariant(const Configuration& c) {
  std::vector<int> counts;
  for (size_t i = 0; i < c.lines.size(); ++i) {
    int m = 0;
    for (size_t j = 0; j < c.lines.size(); ++j) {
      if (i == j) continue;
      for (int p : c.lines[i])
        for (int q : c.lines[j])
          if (p == q) ++m;
    }
    counts.push_back(m);
  }
  std::sort(counts.begin(), counts.end());
  return counts;
}

}  // namespace

CanonicalForm canonical_form(const Configuration& c) {
  auto rep = validate_n3(c);
  if (!rep.ok)
    throw std::invalid_argument("canonical_form: input is not n_3-valid");

  // Any relabeling achieving the lexicographic minimum must send some point
  // to 0 and its three lines to {0,1,2},{0,3,4},{0,5,6}; remaining points get
  // the leftover labels in some order.
  std::optional<Configuration> best;
  std::vector<int> best_lab;

  std::vector<int> others_base;
  for (int p0 = 0; p0 < c.n; ++p0) {
    auto through = c.lines_through(p0);
    std::array<std::array<int, 2>, 3> rest;
    for (int i = 0; i < 3; ++i) {
      int k = 0;
      for (int q : c.lines[size_t(through[size_t(i)])])
        if (q != p0) rest[size_t(i)][size_t(k++)] = q;
    }
    int perm3[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2},
                       {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    for (auto& pm : perm3) {
      for (int flips = 0; flips < 8; ++flips) {
        std::vector<int> lab(size_t(c.n), -1);
        lab[size_t(p0)] = 0;
        for (int i = 0; i < 3; ++i) {
          auto pair = rest[size_t(pm[i])];
          if (flips & (1 << i)) std::swap(pair[0], pair[1]);
          lab[size_t(pair[0])] = 1 + 2 * i;
          lab[size_t(pair[1])] = 2 + 2 * i;
        }
        others_base.clear();
        for (int q = 0; q < c.n; ++q)
          if (lab[size_t(q)] < 0) others_base.push_back(q);
        std::sort(others_base.begin(), others_base.end());
        std::vector<int> others = others_base;
        do {
          std::vector<int> full = lab;
          for (size_t i = 0; i < others.size(); ++i)
            full[size_t(others[i])] = 7 + int(i);
          Configuration cand = relabel(c, full);
          if (!best || cand.lines < best->lines) {
            best = cand;
            best_lab = full;
          }
        } while (std::next_permutation(others.begin(), others.end()));
      }
    }
  }
  return {*best, best_lab};
}

std::optional<std::vector<int>> are_isomorphic(const Configuration& c1,
                                               const Configuration& c2) {
  if (c1.n != c2.n) return std::nullopt;
  if (line_meet_invariant(c1) != line_meet_invariant(c2)) return std::nullopt;
  CanonicalForm f1 = canonical_form(c1), f2 = canonical_form(c2);
  if (!(f1.config == f2.config)) return std::nullopt;
  // bijection = lab2^{-1} o lab1.
  std::vector<int> inv2(size_t(c2.n));
  for (int p = 0; p < c2.n; ++p) inv2[size_t(f2.labeling[size_t(p)])] = p;
  std::vector<int> bij(size_t(c1.n));
  for (int p = 0; p < c1.n; ++p)
    bij[size_t(p)] = inv2[size_t(f1.labeling[size_t(p)])];
  // Direct image check.
  if (!(relabel(c1, bij) == c2)) return std::nullopt;
  return bij;
}

namespace {

struct SearchState {
  int n;
  std::vector<std::array<int, 3>> candidates;
  std::vector<std::array<int, 3>> chosen;  // beyond the fixed prefix
  std::vector<int> degree;
  std::vector<std::vector<bool>> pair_used;
  std::set<std::vector<std::array<int, 3>>>* found;  // canonical line sets

  bool can_place(const std::array<int, 3>& l) const {
    for (int p : l)
      if (degree[size_t(p)] >= 3) return false;
    return !pair_used[size_t(l[0])][size_t(l[1])] &&
           !pair_used[size_t(l[0])][size_t(l[2])] &&
           !pair_used[size_t(l[1])][size_t(l[2])];
  }
  void place(const std::array<int, 3>& l, bool on) {
    for (int p : l) degree[size_t(p)] += on ? 1 : -1;
    pair_used[size_t(l[0])][size_t(l[1])] = on;
    pair_used[size_t(l[0])][size_t(l[2])] = on;
    pair_used[size_t(l[1])][size_t(l[2])] = on;
  }
};

void search(SearchState& st, size_t from, int remaining) {
  if (remaining == 0) {
    for (int p = 0; p < st.n; ++p)
      if (st.degree[size_t(p)] != 3) return;
    std::vector<std::array<int, 3>> all = {{0, 1, 2}, {0, 3, 4}, {0, 5, 6}};
    all.insert(all.end(), st.chosen.begin(), st.chosen.end());
    Configuration c = Configuration::from_lines(st.n, all);
    if (!validate_n3(c).ok) return;
    st.found->insert(canonical_form(c).config.lines);
    return;
  }
  // Deficit bound: every line still to be placed covers 3 degree slots.
  int deficit = 0;
  for (int p = 0; p < st.n; ++p) deficit += 3 - st.degree[size_t(p)];
  if (deficit != 3 * remaining) {
    if (deficit < 3 * remaining) return;
  }
  for (size_t i = from; i + size_t(remaining) <= st.candidates.size(); ++i) {
    const auto& l = st.candidates[i];
    if (!st.can_place(l)) continue;
    st.place(l, true);
    st.chosen.push_back(l);
    search(st, i + 1, remaining - 1);
    st.chosen.pop_back();
    st.place(l, false);
  }
}

std::vector<Configuration> enumerate_impl(int n, bool parallel) {
  if (n < 7 || n > 10)
    throw std::invalid_argument("enumerate_n3: n must be between 7 and 10");

  // Fix the three lines through point 0 to {0,1,2},{0,3,4},{0,5,6}; every
  // isomorphism class admits such a labeling.
  std::vector<std::array<int, 3>> candidates;
  for (int a = 1; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      for (int c = b + 1; c < n; ++c) {
        auto bad_pair = [&](int p, int q) {
          return (p == 1 && q == 2) || (p == 3 && q == 4) || (p == 5 && q == 6);
        };
        if (bad_pair(a, b) || bad_pair(b, c) || bad_pair(a, c)) continue;
        candidates.push_back({a, b, c});
      }

  auto make_state = [&](std::set<std::vector<std::array<int, 3>>>* found) {
    SearchState st;
    st.n = n;
    st.candidates = candidates;
    st.degree.assign(size_t(n), 0);
    st.pair_used.assign(size_t(n), std::vector<bool>(size_t(n), false));
    st.found = found;
    for (auto l : {std::array<int, 3>{0, 1, 2}, std::array<int, 3>{0, 3, 4},
                   std::array<int, 3>{0, 5, 6}})
      st.place(l, true);
    return st;
  };

  int want = n - 3;
  std::set<std::vector<std::array<int, 3>>> merged;
  if (!parallel) {
    SearchState st = make_state(&merged);
    search(st, 0, want);
  } else {
    // Branch over the first chosen line; merge per-branch sets afterwards.
    int m = int(candidates.size());
    std::vector<std::set<std::vector<std::array<int, 3>>>> buckets;
    buckets.resize(size_t(m));
    parallel_for(m, [&](int i) {
      SearchState st = make_state(&buckets[size_t(i)]);
      const auto& l = candidates[size_t(i)];
      if (!st.can_place(l)) return;
      st.place(l, true);
      st.chosen.push_back(l);
      search(st, size_t(i) + 1, want - 1);
    });
    for (const auto& b : buckets) merged.insert(b.begin(), b.end());
  }

  std::vector<Configuration> out;
  for (const auto& lines : merged) out.push_back(Configuration{n, lines});
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Configuration> enumerate_n3(int n) { return enumerate_impl(n, true); }

std::vector<Configuration> enumerate_n3_serial(int n) {
  return enumerate_impl(n, false);
}

}  // namespace configk3
