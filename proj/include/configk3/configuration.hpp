#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace configk3 {

// Abstract incidence configuration: points 0..n-1, lines as 3-element subsets.
struct Configuration {
  int n = 0;
  std::vector<std::array<int, 3>> lines;  // each sorted, list sorted

  static Configuration from_lines(int n, std::vector<std::array<int, 3>> lines);

  // Lines through a given point, as indices into `lines`.
  std::vector<int> lines_through(int point) const;
  bool has_line(int p, int q, int r) const;

  friend bool operator==(const Configuration& a, const Configuration& b) {
    return a.n == b.n && a.lines == b.lines;
  }
  friend bool operator<(const Configuration& a, const Configuration& b) {
    if (a.n != b.n) return a.n < b.n;
    return a.lines < b.lines;
  }

  std::string str() const;
};

// The configuration of Eq-style literals {124, 138, ...} is spelled directly
// where needed; this is the Sturmfels 10_3 configuration.
Configuration builtin_lv();

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Checks the n_3 axioms: pairwise line intersections <= 1, |lines| = n,
// every point on exactly 3 lines, every line with 3 distinct points in range.
ValidationReport validate_n3(const Configuration& c);

// Incidence transpose; requires an n_3-valid input.
Configuration dual_configuration(const Configuration& c);

// Lexicographically least line set over all relabelings, with one labeling
// achieving it (old point -> new point).
struct CanonicalForm {
  Configuration config;
  std::vector<int> labeling;
};
CanonicalForm canonical_form(const Configuration& c);

// A point bijection carrying lines of c1 onto lines of c2, if one exists.
std::optional<std::vector<int>> are_isomorphic(const Configuration& c1,
                                               const Configuration& c2);

// All n_3 configurations up to isomorphism, as canonical representatives.
// The OpenMP kernel splits the search over first-line branches; the serial
// variant is the reference implementation.
std::vector<Configuration> enumerate_n3(int n);
std::vector<Configuration> enumerate_n3_serial(int n);

}  // namespace configk3
