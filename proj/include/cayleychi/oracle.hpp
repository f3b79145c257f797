#pragma once

// Exact brute-force ground truth on finite graphs and two-sided chromatic
// bounds for infinite Cayley graphs.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cayleychi/cayley.hpp"
#include "cayleychi/intmat.hpp"

namespace cayleychi {

using Coloring = std::vector<int>;

enum class Decision { Yes, No, Unknown };

struct SearchResult {
  Decision decision = Decision::Unknown;
  Coloring coloring;  // filled when decision == Yes
  std::uint64_t nodes = 0;
};

// DSATUR backtracking. A node budget of 0 means unlimited; when the budget
// runs out the answer is Unknown.
SearchResult color_search(const FiniteGraph& g, int k, std::uint64_t node_budget = 0);

std::optional<Coloring> k_colorable(const FiniteGraph& g, int k);
int exact_chi(const FiniteGraph& g);
// Proper and uses colors in [0, k) (any k when k <= 0).
bool verify_coloring(const FiniteGraph& g, const Coloring& c, int k = 0);
std::size_t greedy_clique_size(const FiniteGraph& g);

inline constexpr std::size_t kIndependenceCap = 64;
std::size_t independence_number(const FiniteGraph& g, std::size_t cap = kIndependenceCap);

struct ChiBoundsOptions {
  std::size_t radius = 7;
  std::vector<Int> moduli{6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 17, 18, 19, 20, 21, 22, 23, 24};
  // Directions j for the extra quotient column N * e_j; empty means all.
  std::vector<std::size_t> directions;
  // Extra quotient columns supplied verbatim, tried before the moduli sweep.
  std::vector<IntVec> extra_columns;
  std::size_t ball_cap = kDefaultBallCap;
  std::size_t quotient_cap = 200'000;
  std::uint64_t node_budget = 2'000'000;
};

struct ChiBounds {
  int lower = 1;
  // Radius of the smallest ball that is not (lower - 1)-colorable; 0 when the
  // lower bound is the trivial one.
  std::size_t lower_radius = 0;
  std::string lower_evidence;

  std::optional<int> upper;
  std::vector<IntVec> upper_extra_columns;  // the quotient that was colored
  std::size_t upper_quotient_order = 0;
  Coloring upper_coloring;
  std::string upper_evidence;

  bool collapsed() const { return upper && *upper == lower; }
};

// M must have independent columns and no loops.
ChiBounds chi_bounds_infinite(const Matrix& m, const ChiBoundsOptions& opts = {});

}  // namespace cayleychi
