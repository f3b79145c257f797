#include "cayleychi/oracle.hpp"

#include <algorithm>
#include <bit>
#include <map>

namespace cayleychi {

namespace {

class Dsatur {
 public:
  Dsatur(const FiniteGraph& g, int k, std::uint64_t budget)
      : g_(g), k_(k), budget_(budget), color_(g.order, -1), count_(g.order * static_cast<std::size_t>(k), 0),
        sat_(g.order, 0) {}

  SearchResult run() {
    SearchResult r;
    if (g_.order == 0) {
      r.decision = Decision::Yes;
      return r;
    }
    bool ok = false;
    try {
      ok = search(0, 0);
    } catch (const BudgetOut&) {
      r.decision = Decision::Unknown;
      r.nodes = nodes_;
      return r;
    }
    r.nodes = nodes_;
    r.decision = ok ? Decision::Yes : Decision::No;
    if (ok) r.coloring = color_;
    return r;
  }

 private:
  struct BudgetOut {};

  // Highest saturation, then most uncolored neighbors, then lowest index.
  std::size_t pick() const {
    std::size_t best = g_.order;
    int best_sat = -1;
    std::size_t best_deg = 0;
    for (std::size_t v = 0; v < g_.order; ++v) {
      if (color_[v] >= 0) continue;
      if (sat_[v] < best_sat) continue;
      std::size_t deg = 0;
      for (Vertex w : g_.adjacency[v]) deg += color_[w] < 0;
      if (sat_[v] > best_sat || deg > best_deg) {
        best = v;
        best_sat = sat_[v];
        best_deg = deg;
      }
    }
    return best;
  }

  std::size_t slot(std::size_t v, int c) const { return v * static_cast<std::size_t>(k_) + static_cast<std::size_t>(c); }

  void assign(std::size_t v, int c) {
    color_[v] = c;
    for (Vertex w : g_.adjacency[v])
      if (count_[slot(w, c)]++ == 0) ++sat_[w];
  }

  void unassign(std::size_t v) {
    int c = color_[v];
    color_[v] = -1;
    for (Vertex w : g_.adjacency[v])
      if (--count_[slot(w, c)] == 0) --sat_[w];
  }

  bool search(std::size_t colored, int used) {
    if (colored == g_.order) return true;
    if (budget_ != 0 && ++nodes_ > budget_) throw BudgetOut{};
    if (budget_ == 0) ++nodes_;
    const std::size_t v = pick();
    if (sat_[v] >= k_) return false;
    const int limit = std::min(k_, used + 1);
    for (int c = 0; c < limit; ++c) {
      if (count_[slot(v, c)] != 0) continue;
      assign(v, c);
      if (search(colored + 1, std::max(used, c + 1))) return true;
      unassign(v);
    }
    return false;
  }

  const FiniteGraph& g_;
  const int k_;
  const std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<int> color_;
  std::vector<int> count_;
  std::vector<int> sat_;
};

void require_loop_free(const FiniteGraph& g, const char* who) {
  if (g.has_loops) throw PreconditionError(std::string(who) + ": graph has loops");
}

}  // namespace

SearchResult color_search(const FiniteGraph& g, int k, std::uint64_t node_budget) {
  require_loop_free(g, "color_search");
  if (k <= 0) {
    SearchResult r;
    r.decision = g.order == 0 ? Decision::Yes : Decision::No;
    return r;
  }
  return Dsatur(g, k, node_budget).run();
}

std::optional<Coloring> k_colorable(const FiniteGraph& g, int k) {
  SearchResult r = color_search(g, k);
  if (r.decision == Decision::Yes) return std::move(r.coloring);
  return std::nullopt;
}

std::size_t greedy_clique_size(const FiniteGraph& g) {
  std::size_t best = g.order > 0 ? 1 : 0;
  for (std::size_t v = 0; v < g.order; ++v) {
    std::vector<Vertex> clique{static_cast<Vertex>(v)};
    for (Vertex w : g.adjacency[v]) {
      bool all = std::all_of(clique.begin(), clique.end(), [&](Vertex u) { return g.adjacent(u, w); });
      if (all) clique.push_back(w);
    }
    best = std::max(best, clique.size());
  }
  return best;
}

int exact_chi(const FiniteGraph& g) {
  require_loop_free(g, "exact_chi");
  if (g.order == 0) throw PreconditionError("exact_chi: empty graph");
  for (int k = static_cast<int>(greedy_clique_size(g));; ++k)
    if (color_search(g, k).decision == Decision::Yes) return k;
}

bool verify_coloring(const FiniteGraph& g, const Coloring& c, int k) {
  if (c.size() != g.order) return false;
  for (std::size_t v = 0; v < g.order; ++v) {
    if (c[v] < 0 || (k > 0 && c[v] >= k)) return false;
    for (Vertex w : g.adjacency[v])
      if (c[w] == c[v]) return false;
  }
  return true;
}

namespace {

std::size_t mis(const std::vector<std::uint64_t>& nb, std::uint64_t p, std::size_t current, std::size_t best) {
  if (p == 0) return std::max(best, current);
  if (current + static_cast<std::size_t>(std::popcount(p)) <= best) return best;
  int pick = -1, pick_deg = -1;
  for (std::uint64_t rest = p; rest; rest &= rest - 1) {
    int v = std::countr_zero(rest);
    int d = std::popcount(nb[v] & p);
    if (d > pick_deg) {
      pick = v;
      pick_deg = d;
    }
  }
  if (pick_deg == 0) return std::max(best, current + static_cast<std::size_t>(std::popcount(p)));
  const std::uint64_t bit = std::uint64_t{1} << pick;
  best = mis(nb, p & ~bit & ~nb[pick], current + 1, best);
  return mis(nb, p & ~bit, current, best);
}

}  // namespace

std::size_t independence_number(const FiniteGraph& g, std::size_t cap) {
  if (g.order > cap || g.order > 64)
    throw CapExceeded("independence_number: order " + std::to_string(g.order) + " exceeds cap " +
                      std::to_string(std::min<std::size_t>(cap, 64)));
  std::vector<std::uint64_t> nb(g.order, 0);
  for (std::size_t v = 0; v < g.order; ++v)
    for (Vertex w : g.adjacency[v]) nb[v] |= std::uint64_t{1} << w;
  std::uint64_t all = g.order == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << g.order) - 1;
  for (Vertex v : g.loop_vertices) all &= ~(std::uint64_t{1} << v);
  return mis(nb, all, 0, 0);
}

// ---------------------------------------------------------------------------

ChiBounds chi_bounds_infinite(const Matrix& m, const ChiBoundsOptions& opts) {
  if (columns_dependent(m)) throw PreconditionError("chi_bounds_infinite: columns are linearly dependent");
  Lattice lat(m);
  for (std::size_t j = 0; j < m.rows(); ++j) {
    IntVec e(m.rows(), 0);
    e[j] = 1;
    if (lat.contains(e)) throw PreconditionError("chi_bounds_infinite: graph has loops");
  }

  ChiBounds out;
  constexpr int kMaxColors = 16;

  // Lower bound from balls.
  std::map<std::size_t, FiniteGraph> balls;
  auto ball = [&](std::size_t r) -> const FiniteGraph& {
    auto it = balls.find(r);
    if (it == balls.end()) it = balls.emplace(r, bfs_ball(m, {r, {}}, opts.ball_cap)).first;
    return it->second;
  };
  const FiniteGraph& big = ball(opts.radius);
  if (big.edge_count() > 0) {
    out.lower = 2;
    out.lower_radius = 1;
    out.lower_evidence = "ball radius 1 has an edge";
  }
  for (int k = out.lower; k < kMaxColors; ++k) {
    if (color_search(big, k, opts.node_budget).decision != Decision::No) break;
    std::size_t r = 1;
    for (; r < opts.radius; ++r)
      if (color_search(ball(r), k, opts.node_budget).decision == Decision::No) break;
    out.lower = k + 1;
    out.lower_radius = r;
    out.lower_evidence = "ball radius " + std::to_string(r) + " is not " + std::to_string(k) + "-colorable";
  }

  // Upper bound from finite quotients. A rank deficit d needs d extra columns;
  // the sweep uses N * e_j over every d-subset of the directions.
  const std::size_t deficit = m.rows() - m.cols();
  std::vector<std::vector<IntVec>> candidates;
  if (deficit == 1)
    for (const auto& c : opts.extra_columns) candidates.push_back({c});
  else if (!opts.extra_columns.empty())
    candidates.push_back(opts.extra_columns);
  std::vector<std::size_t> dirs = opts.directions;
  if (dirs.empty())
    for (std::size_t j = 0; j < m.rows(); ++j) dirs.push_back(j);
  for (std::size_t j : dirs)
    if (j >= m.rows()) throw PreconditionError("chi_bounds_infinite: direction out of range");
  std::vector<std::vector<std::size_t>> subsets;
  if (deficit > 0 && deficit <= dirs.size()) {
    std::vector<bool> pick(dirs.size(), false);
    std::fill(pick.begin(), pick.begin() + static_cast<std::ptrdiff_t>(deficit), true);
    do {
      std::vector<std::size_t> sub;
      for (std::size_t i = 0; i < dirs.size(); ++i)
        if (pick[i]) sub.push_back(dirs[i]);
      subsets.push_back(sub);
    } while (std::prev_permutation(pick.begin(), pick.end()));
  }
  for (Int n : opts.moduli) {
    if (n <= 0) throw PreconditionError("chi_bounds_infinite: moduli must be positive");
    for (const auto& sub : subsets) {
      std::vector<IntVec> cols;
      for (std::size_t j : sub) {
        IntVec c(m.rows(), 0);
        c[j] = n;
        cols.push_back(c);
      }
      candidates.push_back(cols);
    }
  }
  std::vector<std::optional<FiniteGraph>> quotients(candidates.size());
  std::vector<bool> usable(candidates.size(), true);
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    Matrix aug = m;
    for (const auto& c : candidates[i]) aug.append_col(c);
    if (rank(aug) != m.rows()) {
      usable[i] = false;
      continue;
    }
    try {
      FiniteGraph q = finite_quotient_graph(m, candidates[i], opts.quotient_cap);
      if (q.has_loops) {
        usable[i] = false;
        continue;
      }
      quotients[i] = std::move(q);
    } catch (const CapExceeded&) {
      usable[i] = false;
    }
  }
  for (int k = out.lower; k < kMaxColors && !out.upper; ++k) {
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      if (!usable[i]) continue;
      SearchResult r = color_search(*quotients[i], k, opts.node_budget);
      if (r.decision != Decision::Yes) continue;
      out.upper = k;
      out.upper_extra_columns = candidates[i];
      out.upper_quotient_order = quotients[i]->order;
      out.upper_coloring = std::move(r.coloring);
      std::string col;
      for (const auto& c : candidates[i]) {
        std::string one;
        for (Int x : c) one += (one.empty() ? "" : ",") + std::to_string(x);
        col += (col.empty() ? "(" : " (") + one + ")";
      }
      out.upper_evidence = "quotient by extra columns " + col + " of order " +
                           std::to_string(quotients[i]->order) + " is " + std::to_string(k) + "-colorable";
      break;
    }
  }
  return out;
}

}  // namespace cayleychi
