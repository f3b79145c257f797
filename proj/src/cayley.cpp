#include "cayleychi/cayley.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace cayleychi {

namespace {

struct VecHash {
  std::size_t operator()(const IntVec& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (Int x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

void finalize(FiniteGraph& g) {
  for (auto& nb : g.adjacency) {
    std::sort(nb.begin(), nb.end());
    nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
  }
  std::sort(g.loop_vertices.begin(), g.loop_vertices.end());
  g.loop_vertices.erase(std::unique(g.loop_vertices.begin(), g.loop_vertices.end()), g.loop_vertices.end());
  g.has_loops = !g.loop_vertices.empty();
}

}  // namespace

FiniteGraph FiniteGraph::from_edges(std::size_t order, const std::vector<std::pair<Vertex, Vertex>>& edges) {
  FiniteGraph g;
  g.order = order;
  g.adjacency.assign(order, {});
  for (auto [u, v] : edges) {
    if (u >= order || v >= order) throw std::out_of_range("edge endpoint out of range");
    if (u == v) {
      g.loop_vertices.push_back(u);
      continue;
    }
    g.adjacency[u].push_back(v);
    g.adjacency[v].push_back(u);
  }
  finalize(g);
  return g;
}

bool FiniteGraph::adjacent(Vertex u, Vertex v) const {
  const auto& nb = adjacency.at(u);
  return std::binary_search(nb.begin(), nb.end(), v);
}

std::size_t FiniteGraph::edge_count() const {
  std::size_t s = 0;
  for (const auto& nb : adjacency) s += nb.size();
  return s / 2;
}

// ---------------------------------------------------------------------------

CosetSpace::CosetSpace(const Matrix& generators) : m_(generators.rows()), snf_(smith_normal_form(generators)) {
  moduli_.assign(m_, 0);
  for (std::size_t i = 0; i < snf_.rank; ++i) moduli_[i] = snf_.D(i, i);
  for (std::size_t j = 0; j < m_; ++j) {
    IntVec e(m_, 0);
    e[j] = 1;
    gens_.push_back(canonical(e));
  }
}

Int CosetSpace::order() const {
  if (!finite()) throw PreconditionError("coset space is infinite");
  Int n = 1;
  for (Int d : moduli_) n = checked::mul(n, d);
  return n;
}

IntVec CosetSpace::canonical(std::span<const Int> v) const {
  if (v.size() != m_) throw ShapeError("canonical: vector length mismatch");
  IntVec y = multiply(snf_.U, v);
  for (std::size_t i = 0; i < m_; ++i)
    if (moduli_[i] != 0) y[i] = mod(y[i], moduli_[i]);
  return y;
}

IntVec CosetSpace::add(std::span<const Int> key, std::span<const Int> delta, Int sign) const {
  IntVec y(m_);
  for (std::size_t i = 0; i < m_; ++i) {
    Int s = checked::add(key[i], checked::mul(sign, delta[i]));
    y[i] = moduli_[i] != 0 ? mod(s, moduli_[i]) : s;
  }
  return y;
}

IntVec CosetSpace::representative(std::span<const Int> key) const { return multiply(snf_.U_inv, key); }

// ---------------------------------------------------------------------------

FiniteGraph finite_quotient_graph(const Matrix& m, const std::vector<IntVec>& extra_columns, std::size_t cap) {
  Matrix aug = m;
  for (const auto& c : extra_columns) aug.append_col(c);
  CosetSpace space(aug);
  if (!space.finite()) throw PreconditionError("finite_quotient_graph: quotient is infinite");
  const Int order = space.order();
  if (order <= 0 || static_cast<std::size_t>(order) > cap)
    throw CapExceeded("finite_quotient_graph: order " + std::to_string(order) + " exceeds cap " +
                      std::to_string(cap));

  const std::size_t dim = space.dimension();
  const IntVec& d = space.moduli();
  FiniteGraph g;
  g.order = static_cast<std::size_t>(order);
  g.adjacency.assign(g.order, {});
  g.labels.resize(g.order);
  g.representatives.resize(g.order);

  // Mixed radix with the last coordinate varying fastest.
  auto index_of = [&](const IntVec& key) {
    std::size_t idx = 0;
    for (std::size_t i = 0; i < dim; ++i) idx = idx * static_cast<std::size_t>(d[i]) + static_cast<std::size_t>(key[i]);
    return static_cast<Vertex>(idx);
  };
  IntVec key(dim, 0);
  for (std::size_t v = 0; v < g.order; ++v) {
    g.labels[v] = key;
    g.representatives[v] = space.representative(key);
    for (std::size_t i = dim; i-- > 0;) {
      if (++key[i] < d[i]) break;
      key[i] = 0;
    }
  }
  for (std::size_t v = 0; v < g.order; ++v) {
    for (std::size_t j = 0; j < dim; ++j) {
      const IntVec& gen = space.generator(j);
      if (std::all_of(gen.begin(), gen.end(), [](Int x) { return x == 0; })) {
        g.loop_vertices.push_back(static_cast<Vertex>(v));
        continue;
      }
      Vertex w = index_of(space.add(g.labels[v], gen, 1));
      g.adjacency[v].push_back(w);
      g.adjacency[w].push_back(static_cast<Vertex>(v));
    }
  }
  finalize(g);
  return g;
}

FiniteGraph circulant_graph(const CirculantSpec& c) {
  c.validate();
  const Int n = checked::abs(c.n);
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Int i = 0; i < n; ++i)
    for (Int s : {c.a, c.b}) edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(mod(i + s, n)));
  FiniteGraph g = FiniteGraph::from_edges(static_cast<std::size_t>(n), edges);
  for (Int i = 0; i < n; ++i) {
    g.labels.push_back({i});
    g.representatives.push_back({i});
  }
  return g;
}

FiniteGraph bfs_ball(const Matrix& m, const BallSpec& spec, std::size_t cap) {
  if (columns_dependent(m)) throw PreconditionError("bfs_ball: columns are linearly dependent");
  CosetSpace space(m);
  const std::size_t dim = space.dimension();
  IntVec center = spec.center.value_or(IntVec(dim, 0));
  if (center.size() != dim) throw ShapeError("bfs_ball: center has the wrong length");

  FiniteGraph g;
  std::unordered_map<IntVec, Vertex, VecHash> index;
  std::vector<std::size_t> dist;
  auto add_vertex = [&](IntVec key, IntVec rep, std::size_t dd) {
    if (g.labels.size() >= cap)
      throw CapExceeded("bfs_ball: more than " + std::to_string(cap) + " vertices");
    auto v = static_cast<Vertex>(g.labels.size());
    index.emplace(key, v);
    g.labels.push_back(std::move(key));
    g.representatives.push_back(std::move(rep));
    dist.push_back(dd);
    return v;
  };
  add_vertex(space.canonical(center), center, 0);

  for (std::size_t head = 0; head < g.labels.size(); ++head) {
    if (dist[head] >= spec.radius) continue;
    for (std::size_t j = 0; j < dim; ++j) {
      for (Int sign : {Int{1}, Int{-1}}) {
        IntVec key = space.add(g.labels[head], space.generator(j), sign);
        if (index.count(key)) continue;
        IntVec rep = g.representatives[head];
        rep[j] = checked::add(rep[j], sign);
        add_vertex(std::move(key), std::move(rep), dist[head] + 1);
      }
    }
  }

  g.order = g.labels.size();
  g.adjacency.assign(g.order, {});
  for (std::size_t v = 0; v < g.order; ++v) {
    for (std::size_t j = 0; j < dim; ++j) {
      auto it = index.find(space.add(g.labels[v], space.generator(j), 1));
      if (it == index.end()) continue;
      if (it->second == v) {
        g.loop_vertices.push_back(static_cast<Vertex>(v));
        continue;
      }
      g.adjacency[v].push_back(it->second);
      g.adjacency[it->second].push_back(static_cast<Vertex>(v));
    }
  }
  finalize(g);
  return g;
}

std::string to_edge_list(const FiniteGraph& g) {
  std::ostringstream os;
  os << g.order << '\n';
  for (std::size_t u = 0; u < g.order; ++u)
    for (Vertex v : g.adjacency[u])
      if (u < v) os << u << ' ' << v << '\n';
  for (Vertex v : g.loop_vertices) os << v << ' ' << v << '\n';
  return os.str();
}

}  // namespace cayleychi
