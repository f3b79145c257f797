#include "cayleychi/certify.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>

#include "cayleychi/cayley.hpp"
#include "cayleychi/oracle.hpp"

namespace cayleychi {

using nlohmann::json;

// ---------------------------------------------------------------------------
// JSON helpers

json matrix_to_json(const Matrix& m) { return m.to_rows(); }

Matrix matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw ParseError("matrix must be a nonempty array of rows");
  std::vector<IntVec> rows;
  for (const auto& r : j) {
    if (!r.is_array() || r.empty()) throw ParseError("matrix rows must be nonempty arrays");
    IntVec row;
    for (const auto& x : r) {
      if (!x.is_number_integer()) throw ParseError("matrix entries must be integers");
      row.push_back(x.get<Int>());
    }
    if (!rows.empty() && row.size() != rows.front().size()) throw ParseError("ragged matrix rows");
    rows.push_back(std::move(row));
  }
  return Matrix::from_rows(rows);
}

namespace {

IntVec vec_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an integer array");
  IntVec v;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw ParseError("expected an integer array");
    v.push_back(x.get<Int>());
  }
  return v;
}

std::vector<IntVec> vecs_from_json(const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of vectors");
  std::vector<IntVec> out;
  for (const auto& v : j) out.push_back(vec_from_json(v));
  return out;
}

IntVec subtract(std::span<const Int> a, std::span<const Int> b) {
  IntVec d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = checked::sub(a[i], b[i]);
  return d;
}

IntVec plus(std::span<const Int> a, std::span<const Int> b) {
  IntVec d(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) d[i] = checked::add(a[i], b[i]);
  return d;
}

}  // namespace

// ---------------------------------------------------------------------------
// Homomorphisms

HomChain hom_chain(const Matrix& m, const std::vector<RowCombine>& plan) {
  HomChain out{m, Matrix::identity(m.rows())};
  for (const auto& s : plan) {
    const std::size_t rows = out.matrix.rows();
    if (s.first >= rows || s.second >= rows || s.first == s.second || rows < 2)
      throw std::out_of_range("hom_chain: invalid row-combine step");
    const Int k = s.kind == Combine::Add ? 1 : -1;
    out.matrix.add_row_multiple(s.first, s.second, k);
    out.matrix.erase_row(s.second);
    out.map.add_row_multiple(s.first, s.second, k);
    out.map.erase_row(s.second);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Verification

bool MembershipGraph::same(std::span<const Int> u, std::span<const Int> v) const {
  if (u.size() != m_ || v.size() != m_) return false;
  return lat_.contains(subtract(u, v));
}

bool MembershipGraph::adjacent(std::span<const Int> u, std::span<const Int> v) const {
  if (u.size() != m_ || v.size() != m_) return false;
  IntVec d = subtract(u, v);
  for (std::size_t i = 0; i < m_; ++i) {
    d[i] = checked::sub(d[i], 1);
    if (lat_.contains(d)) return true;
    d[i] = checked::add(d[i], 2);
    if (lat_.contains(d)) return true;
    d[i] = checked::sub(d[i], 1);
  }
  return false;
}

VerifyResult verify_periodic_coloring(const Matrix& m, const PeriodicColoring& c, int max_colors) {
  if (c.functional.size() != m.rows()) return {false, "functional has the wrong length"};
  if (c.modulus <= 0) return {false, "modulus must be positive"};
  if (c.table.size() != static_cast<std::size_t>(c.modulus)) return {false, "table size differs from modulus"};
  std::set<int> used(c.table.begin(), c.table.end());
  if (*used.begin() < 0) return {false, "negative color in table"};
  if (max_colors > 0 && used.size() > static_cast<std::size_t>(max_colors))
    return {false, "table uses " + std::to_string(used.size()) + " colors, more than " + std::to_string(max_colors)};
  for (std::size_t j = 0; j < m.cols(); ++j)
    if (mod(dot(c.functional, m.col(j)), c.modulus) != 0)
      return {false, "functional does not vanish on column " + std::to_string(j + 1)};
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const Int g = mod(c.functional[i], c.modulus);
    if (g == 0) return {false, "generator e" + std::to_string(i + 1) + " maps to 0"};
    for (Int r = 0; r < c.modulus; ++r)
      if (c.table[static_cast<std::size_t>(r)] == c.table[static_cast<std::size_t>(mod(r + g, c.modulus))])
        return {false, "color collision along generator e" + std::to_string(i + 1)};
  }
  return {true, "ok"};
}

namespace {

VerifyResult distinct_cosets(const MembershipGraph& g, const std::vector<IntVec>& vs) {
  for (const auto& v : vs)
    if (v.size() != g.dimension()) return {false, "witness vector has the wrong length"};
  for (std::size_t i = 0; i < vs.size(); ++i)
    for (std::size_t j = i + 1; j < vs.size(); ++j)
      if (g.same(vs[i], vs[j])) return {false, "witness vertices " + std::to_string(i) + " and " + std::to_string(j) + " coincide"};
  return {true, "ok"};
}

VerifyResult verify_lanyard_in(const MembershipGraph& g, const LanyardWitness& w) {
  if (w.diamonds.empty()) return {false, "lanyard has no diamonds"};
  for (std::size_t d = 0; d < w.diamonds.size(); ++d) {
    const auto& dm = w.diamonds[d];
    std::vector<IntVec> vs(dm.vertices.begin(), dm.vertices.end());
    if (auto r = distinct_cosets(g, vs); !r.valid) return {false, "diamond " + std::to_string(d) + ": " + r.reason};
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = a + 1; b < 4; ++b) {
        if (a == 0 && b == 3) continue;
        if (!g.adjacent(vs[a], vs[b]))
          return {false, "diamond " + std::to_string(d) + " lacks edge " + std::to_string(a) + "-" + std::to_string(b)};
      }
    if (d + 1 < w.diamonds.size() && !g.same(dm.end(), w.diamonds[d + 1].start()))
      return {false, "diamonds " + std::to_string(d) + " and " + std::to_string(d + 1) + " do not share an endpoint"};
  }
  if (!w.clasp) return {false, "lanyard is unclasped"};
  const auto& [s, e] = *w.clasp;
  if (!g.same(s, w.diamonds.front().start()) || !g.same(e, w.diamonds.back().end()))
    return {false, "clasp does not join the outer endpoints"};
  if (!g.adjacent(s, e)) return {false, "clasp endpoints are not adjacent"};
  return {true, "ok"};
}

VerifyResult verify_c13(const MembershipGraph& g, const C13Embedding& w) {
  if (w.vertices.size() != 13) return {false, "C13 embedding needs 13 vertices"};
  if (auto r = distinct_cosets(g, w.vertices); !r.valid) return r;
  for (std::size_t i = 0; i < 13; ++i)
    for (std::size_t s : {1u, 5u})
      if (!g.adjacent(w.vertices[i], w.vertices[(i + s) % 13]))
        return {false, "C13 embedding lacks edge " + std::to_string(i) + "-" + std::to_string((i + s) % 13)};
  return {true, "ok"};
}

VerifyResult verify_k5(const MembershipGraph& g, const K5Embedding& w) {
  if (w.vertices.size() != 5) return {false, "K5 embedding needs 5 vertices"};
  if (auto r = distinct_cosets(g, w.vertices); !r.valid) return r;
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = i + 1; j < 5; ++j)
      if (!g.adjacent(w.vertices[i], w.vertices[j]))
        return {false, "K5 embedding lacks edge " + std::to_string(i) + "-" + std::to_string(j)};
  return {true, "ok"};
}

int witness_bound(const LowerWitness& w) { return std::holds_alternative<K5Embedding>(w) ? 5 : 4; }

}  // namespace

VerifyResult verify_lanyard(const Matrix& m, const LanyardWitness& w) {
  return verify_lanyard_in(MembershipGraph(m), w);
}

VerifyResult verify_certificate(const Matrix& m, const Certificate& c) {
  try {
    if (!(c.matrix == m)) return {false, "certificate is for a different matrix"};
    const MembershipGraph g(m);

    if (const auto* loop = std::get_if<LoopWitness>(&c.evidence)) {
      if (c.claimed_chi) return {false, "loop witness with a chromatic claim"};
      if (loop->generator >= m.rows() || (loop->sign != 1 && loop->sign != -1))
        return {false, "loop witness generator out of range"};
      if (loop->coefficients.size() != m.cols()) return {false, "loop witness has the wrong number of coefficients"};
      IntVec v = multiply(m, loop->coefficients);
      IntVec e(m.rows(), 0);
      e[loop->generator] = loop->sign;
      if (v != e) return {false, "combination does not equal the generator"};
      return {true, "ok"};
    }

    if (!c.claimed_chi || *c.claimed_chi < 2) return {false, "missing or invalid claimed chromatic number"};
    const int k = *c.claimed_chi;

    if (const auto* bip = std::get_if<Bipartition>(&c.evidence)) {
      if (k != 2) return {false, "bipartition evidence for a claim other than 2"};
      PeriodicColoring pc{bip->functional, 2, {0, 1}};
      if (auto r = verify_periodic_coloring(m, pc, 2); !r.valid) return {false, "bipartition: " + r.reason};
    } else {
      const auto& pc = std::get<PeriodicColoring>(c.evidence);
      if (auto r = verify_periodic_coloring(m, pc, k); !r.valid) return {false, "coloring: " + r.reason};
    }

    if (c.witness) {
      VerifyResult r;
      if (const auto* l = std::get_if<LanyardWitness>(&*c.witness))
        r = verify_lanyard_in(g, *l);
      else if (const auto* c13 = std::get_if<C13Embedding>(&*c.witness))
        r = verify_c13(g, *c13);
      else
        r = verify_k5(g, std::get<K5Embedding>(*c.witness));
      if (!r.valid) return {false, "witness: " + r.reason};
      if (witness_bound(*c.witness) > k) return {false, "witness forces more colors than claimed"};
    }
    if (k >= 4 && (!c.witness || witness_bound(*c.witness) < k))
      return {false, "claim of " + std::to_string(k) + " lacks a matching lower-bound witness"};
    return {true, "ok"};
  } catch (const std::exception& e) {
    return {false, std::string("verification error: ") + e.what()};
  }
}

// ---------------------------------------------------------------------------
// Periodic colorings

namespace {

constexpr std::uint64_t kColorBudget = 500'000;
constexpr std::uint64_t kFunctionalBudget = 200'000;

// Cay(Z_n, {+-g}) for the given generator residues.
FiniteGraph cyclic_graph(Int n, const IntVec& gens) {
  std::vector<std::pair<Vertex, Vertex>> edges;
  for (Int i = 0; i < n; ++i)
    for (Int g : gens) edges.emplace_back(static_cast<Vertex>(i), static_cast<Vertex>(mod(i + g, n)));
  return FiniteGraph::from_edges(static_cast<std::size_t>(n), edges);
}

std::optional<PeriodicColoring> cyclic_search(const Matrix& m, int k, Int cap) {
  const SmithDecomposition snf = smith_normal_form(m);
  const std::size_t rows = m.rows();
  for (Int n = 2; n <= cap; ++n) {
    IntVec step(rows), count(rows);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < rows; ++i) {
      const Int d = i < snf.rank ? snf.D(i, i) : 0;
      const Int g = gcd(n, d);
      step[i] = n / g;
      count[i] = g;
      total *= static_cast<std::uint64_t>(g);
      if (total > kFunctionalBudget) break;
    }
    if (total > kFunctionalBudget) continue;

    std::map<IntVec, std::optional<std::vector<int>>> cache;
    IntVec idx(rows, 0);
    for (std::uint64_t t = 0; t < total; ++t) {
      IntVec psi(rows);
      for (std::size_t i = 0; i < rows; ++i) psi[i] = idx[i] * step[i];
      IntVec phi = multiply(psi, snf.U);
      for (Int& x : phi) x = mod(x, n);
      for (std::size_t i = rows; i-- > 0;) {
        if (++idx[i] < count[i]) break;
        idx[i] = 0;
      }
      if (std::any_of(phi.begin(), phi.end(), [](Int x) { return x == 0; })) continue;

      IntVec gens;
      for (Int x : phi) gens.push_back(std::min(x, n - x));
      std::sort(gens.begin(), gens.end());
      gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
      auto it = cache.find(gens);
      if (it == cache.end()) {
        SearchResult r = color_search(cyclic_graph(n, gens), k, kColorBudget);
        std::optional<std::vector<int>> table;
        if (r.decision == Decision::Yes) table = std::move(r.coloring);
        it = cache.emplace(gens, std::move(table)).first;
      }
      if (it->second) return PeriodicColoring{phi, n, *it->second};
    }
  }
  return std::nullopt;
}

std::optional<PeriodicColoring> row_coloring(std::span<const Int> row, int k) {
  const Int e = gcd_vec(row);
  if (e == 1) return std::nullopt;
  const Int n = e == 0 ? 2 : e;
  std::vector<int> table(static_cast<std::size_t>(n));
  for (Int c = 0; c < n; ++c) table[static_cast<std::size_t>(c)] = static_cast<int>(c % 2);
  if (n % 2 == 1) table.back() = 2;
  if (*std::max_element(table.begin(), table.end()) >= k) return std::nullopt;
  return PeriodicColoring{{1}, n, table};
}

std::optional<PeriodicColoring> circulant_coloring(const CirculantSpec& c, int k) {
  auto col = k_colorable(circulant_graph(c), k);
  if (!col) return std::nullopt;
  const Int n = checked::abs(c.n);
  return PeriodicColoring{{mod(c.a, n), mod(c.b, n)}, n, *col};
}

// The order in which row-combine maps are tried for 3x2 matrices.
const std::vector<RowCombine>& three_row_maps() {
  static const std::vector<RowCombine> maps{
      {1, 2, Combine::Subtract}, {1, 2, Combine::Add}, {0, 1, Combine::Subtract},
      {0, 1, Combine::Add},      {0, 2, Combine::Subtract}, {0, 2, Combine::Add},
  };
  return maps;
}

std::optional<PeriodicColoring> color_reduced(const ReducedForm& r, int k, Int cap) {
  switch (r.shape_class) {
    case ShapeClass::Row1xR:
      if (auto pc = row_coloring(r.matrix.row(0), k)) return pc;
      break;
    case ShapeClass::Lower2x2: {
      Verdict v = chi_2x2(r.matrix);
      if (v.status == Status::Chromatic && v.circulant && v.chi <= k)
        if (auto pc = circulant_coloring(*v.circulant, k)) return pc;
      break;
    }
    case ShapeClass::Mhnf3x2:
      for (const auto& step : three_row_maps()) {
        HomChain hc = hom_chain(r.matrix, {step});
        Verdict vy = classify(hc.matrix);
        if (vy.status != Status::Chromatic || vy.chi > k) continue;
        auto py = find_periodic_coloring(hc.matrix, k);
        if (!py) continue;
        PeriodicColoring pc{multiply(py->functional, hc.map), py->modulus, py->table};
        for (Int& x : pc.functional) x = mod(x, pc.modulus);
        return pc;
      }
      break;
    case ShapeClass::Unsupported:
      break;
  }
  return cyclic_search(r.matrix, k, cap);
}

std::optional<PeriodicColoring> find_periodic_coloring_capped(const Matrix& m, int k, Int cap) {
  if (k < 2) return std::nullopt;
  const ReducedForm r = reduce(m);
  const Matrix p = row_transform(r.transcript, m.rows());
  if (auto sub = color_reduced(r, k, cap)) {
    PeriodicColoring pc{multiply(sub->functional, p), sub->modulus, sub->table};
    for (std::size_t i = 0; i < m.rows(); ++i)
      if (pc.functional[i] == 0) pc.functional[i] = sub->functional[0];
    for (Int& x : pc.functional) x = mod(x, pc.modulus);
    if (verify_periodic_coloring(m, pc, k).valid) return pc;
  }
  if (auto pc = cyclic_search(m, k, cap); pc && verify_periodic_coloring(m, *pc, k).valid) return pc;
  return std::nullopt;
}

}  // namespace

std::optional<PeriodicColoring> find_periodic_coloring(const Matrix& m, int k) {
  return find_periodic_coloring_capped(m, k, CertifyOptions{}.cyclic_search_cap);
}

// ---------------------------------------------------------------------------
// Lower-bound witnesses

namespace {

Diamond shifted(const Diamond& d, std::span<const Int> s, bool reversed = false) {
  Diamond out;
  for (std::size_t i = 0; i < 4; ++i) out.vertices[i] = plus(d.vertices[i], s);
  if (reversed) {
    std::swap(out.vertices[0], out.vertices[3]);
    std::swap(out.vertices[1], out.vertices[2]);
  }
  return out;
}

IntVec scaled(std::span<const Int> v, Int k) {
  IntVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = checked::mul(v[i], k);
  return out;
}

// Diamonds repeated `count` times along `shift`, walking backwards when count
// is negative. The chain starts at the base diamond's start.
void append_chain(std::vector<Diamond>& out, const Diamond& base, std::span<const Int> shift, Int count) {
  for (Int i = 0; i < checked::abs(count); ++i) {
    if (count > 0)
      out.push_back(shifted(base, scaled(shift, i)));
    else
      out.push_back(shifted(base, scaled(shift, -(i + 1)), true));
  }
}

std::vector<Diamond> reversed_chain(const std::vector<Diamond>& chain) {
  std::vector<Diamond> out;
  const IntVec zero(chain.empty() ? 0 : chain.front().start().size(), 0);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) out.push_back(shifted(*it, zero, true));
  return out;
}

LanyardWitness close(std::vector<Diamond> diamonds) {
  LanyardWitness w;
  w.diamonds = std::move(diamonds);
  if (!w.diamonds.empty()) w.clasp = std::array<IntVec, 2>{w.diamonds.front().start(), w.diamonds.back().end()};
  return w;
}

IntVec off(Int t) { return {0, 0, t}; }

Diamond diamond(IntVec start, IntVec p, IntVec q, IntVec end) {
  Diamond d;
  d.vertices = {std::move(start), std::move(p), std::move(q), std::move(end)};
  return d;
}

// (1 0; 0 1; y31 y32) with 0 < y31 <= y32: the graph is the distance graph
// on Z with distances 1, y31, y32, and offset t is the coset of (0, 0, t).
std::optional<LanyardWitness> i_on_top_recipe(Int y31, Int y32) {
  if (y31 == 2 && y32 % 3 == 0) {
    const Diamond base = diamond(off(0), off(1), off(2), off(3));
    std::vector<Diamond> ds;
    append_chain(ds, base, off(3), y32 / 3);
    return close(std::move(ds));
  }
  if (mod(y31, 3) != 1 && y32 == y31 + 1) {
    const Int t = y31;
    const Diamond p = diamond(off(0), off(1), off(t + 1), off(t + 2));
    const Diamond q = diamond(off(0), off(t), off(t + 1), off(2 * t + 1));
    // 0 -> t+2 -> 2t+4 -> 3: two p-diamonds, then a q-diamond walked backwards.
    std::vector<Diamond> block{p, shifted(p, off(t + 2)), shifted(q, off(3), true)};
    const Int reps = (t % 3 == 0 ? t : t + 1) / 3;
    std::vector<Diamond> ds;
    for (Int j = 0; j < reps; ++j)
      for (const auto& d : block) ds.push_back(shifted(d, off(3 * j)));
    return close(std::move(ds));
  }
  return std::nullopt;
}

// (1 0; 1 y22; 1 y32) with y32 not congruent to -y22 mod 3.
std::optional<LanyardWitness> first_column_recipe(Int y22, Int y32) {
  const Int sum = checked::add(y22, y32);
  if (mod(sum, 3) == 0) return std::nullopt;
  const Int s = mod(sum, 3) == 1 ? 1 : -1;
  const Int ell = (sum - s) / 3;
  const Int x = y32;
  if (x == 0 && ell == 0) return std::nullopt;
  const Diamond d1 = diamond({0, 0, 0}, {0, 1, 0}, {0, 0, -1}, {0, 1, -1});
  const Diamond d2a = diamond({0, 0, 0}, {0, 1, 0}, {0, 1, 1}, {0, 2, 1});
  const Diamond d2b = diamond({0, 2, 1}, {0, 2, 0}, {0, 3, 1}, {0, 3, 0});
  std::vector<Diamond> l1;
  append_chain(l1, d1, IntVec{0, 1, -1}, x);
  std::vector<Diamond> l2;
  for (Int i = 0; i < checked::abs(ell); ++i) {
    const IntVec sh{0, 3 * (ell > 0 ? i : -(i + 1)), 0};
    if (ell > 0) {
      l2.push_back(shifted(d2a, sh));
      l2.push_back(shifted(d2b, sh));
    } else {
      l2.push_back(shifted(d2b, sh, true));
      l2.push_back(shifted(d2a, sh, true));
    }
  }
  std::vector<Diamond> ds = reversed_chain(l1);
  ds.insert(ds.end(), l2.begin(), l2.end());
  return close(std::move(ds));
}

// Chains of diamonds from `center` in g: BFS over the relation "u and w are
// the endpoints of a diamond", stopping at a vertex adjacent to the center.
std::optional<std::vector<std::array<Vertex, 4>>> lanyard_search(const FiniteGraph& g, Vertex center) {
  std::vector<int> seen(g.order, 0);
  std::vector<std::array<Vertex, 4>> via(g.order);
  std::deque<Vertex> queue{center};
  seen[center] = 1;
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    const auto& nu = g.adjacency[u];
    for (std::size_t a = 0; a < nu.size(); ++a)
      for (std::size_t b = a + 1; b < nu.size(); ++b) {
        const Vertex p = nu[a], q = nu[b];
        if (!g.adjacent(p, q)) continue;
        for (Vertex w : g.adjacency[p]) {
          if (w == u || w == q || seen[w] || !g.adjacent(q, w)) continue;
          seen[w] = 1;
          via[w] = {u, p, q, w};
          if (g.adjacent(w, center)) {
            std::vector<std::array<Vertex, 4>> chain;
            for (Vertex x = w; x != center; x = via[x][0]) chain.push_back(via[x]);
            std::reverse(chain.begin(), chain.end());
            return chain;
          }
          queue.push_back(w);
        }
      }
  }
  return std::nullopt;
}

// Injective image of a small pattern graph with pattern vertex 0 at `anchor`.
// Every pattern vertex i > 0 must have a pattern neighbor below i.
std::optional<std::vector<Vertex>> embed_pattern(const FiniteGraph& g, const std::vector<std::vector<std::size_t>>& pat,
                                                 Vertex anchor, std::uint64_t budget) {
  const std::size_t p = pat.size();
  std::vector<Vertex> img(p, 0);
  std::vector<char> used(g.order, 0);
  std::uint64_t nodes = 0;
  std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    if (i == p) return true;
    if (++nodes > budget) return false;
    std::size_t parent = p;
    for (std::size_t j : pat[i])
      if (j < i) {
        parent = j;
        break;
      }
    for (Vertex c : g.adjacency[img[parent]]) {
      if (used[c]) continue;
      bool ok = true;
      for (std::size_t j : pat[i])
        if (j < i && !g.adjacent(img[j], c)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      img[i] = c;
      used[c] = 1;
      if (go(i + 1)) return true;
      used[c] = 0;
    }
    return false;
  };
  img[0] = anchor;
  used[anchor] = 1;
  if (go(1)) return img;
  return std::nullopt;
}

std::vector<std::vector<std::size_t>> c13_pattern() {
  std::vector<std::vector<std::size_t>> pat(13);
  for (std::size_t i = 0; i < 13; ++i)
    for (std::size_t s : {1u, 5u, 8u, 12u}) pat[i].push_back((i + s) % 13);
  return pat;
}

std::vector<std::vector<std::size_t>> k5_pattern() {
  std::vector<std::vector<std::size_t>> pat(5);
  for (std::size_t i = 0; i < 5; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      if (i != j) pat[i].push_back(j);
  return pat;
}

// Coset representatives in the reduced space lifted back to Z^m.
struct Lift {
  Matrix pt;  // transpose of the row transform
  IntVec operator()(const IntVec& w) const { return multiply(pt, w); }
};

std::optional<LowerWitness> witness_in(const FiniteGraph& g, int chi, const Lift& lift) {
  auto vecs = [&](const std::vector<Vertex>& vs) {
    std::vector<IntVec> out;
    for (Vertex v : vs) out.push_back(lift(g.representatives[v]));
    return out;
  };
  if (chi >= 5) {
    if (auto e = embed_pattern(g, k5_pattern(), 0, 5'000'000)) return K5Embedding{vecs(*e)};
    return std::nullopt;
  }
  if (auto chain = lanyard_search(g, 0)) {
    std::vector<Diamond> ds;
    for (const auto& q : *chain) {
      Diamond d;
      for (std::size_t i = 0; i < 4; ++i) d.vertices[i] = lift(g.representatives[q[i]]);
      ds.push_back(std::move(d));
    }
    return close(std::move(ds));
  }
  if (auto e = embed_pattern(g, c13_pattern(), 0, 5'000'000)) return C13Embedding{vecs(*e)};
  return std::nullopt;
}

std::optional<LowerWitness> find_lower_witness_opts(const Matrix& m, int chi, const CertifyOptions& opts) {
  if (chi < 4) return std::nullopt;
  const MembershipGraph mg(m);
  auto ok = [&](const LowerWitness& w) {
    if (const auto* l = std::get_if<LanyardWitness>(&w)) return verify_lanyard_in(mg, *l).valid;
    if (const auto* c = std::get_if<C13Embedding>(&w)) return verify_c13(mg, *c).valid;
    return verify_k5(mg, std::get<K5Embedding>(w)).valid;
  };

  if (chi == 4 && m.rows() == 3 && m.cols() == 2 && m(0, 1) == 0) {
    std::optional<LanyardWitness> recipe;
    if (m(0, 0) == 1 && m(1, 0) == 0 && m(1, 1) == 1 && m(2, 0) > 0 && m(2, 0) <= m(2, 1))
      recipe = i_on_top_recipe(m(2, 0), m(2, 1));
    else if (m(0, 0) == 1 && m(1, 0) == 1 && m(2, 0) == 1)
      recipe = first_column_recipe(m(1, 1), m(2, 1));
    if (recipe && ok(*recipe)) return LowerWitness{*recipe};
  }

  const ReducedForm r = reduce(m);
  const Lift lift{row_transform(r.transcript, m.rows()).transpose()};
  CosetSpace space(r.matrix);
  if (space.finite()) {
    if (space.order() <= static_cast<Int>(kDefaultBallCap)) {
      FiniteGraph q = finite_quotient_graph(r.matrix);
      if (!q.has_loops)
        if (auto w = witness_in(q, chi, lift); w && ok(*w)) return w;
    }
    return std::nullopt;
  }
  for (std::size_t radius = 2; radius <= opts.max_ball_radius; ++radius) {
    FiniteGraph b;
    try {
      b = bfs_ball(r.matrix, {radius, {}});
    } catch (const CapExceeded&) {
      break;
    }
    if (b.has_loops) break;
    if (auto w = witness_in(b, chi, lift); w && ok(*w)) return w;
  }
  return std::nullopt;
}

}  // namespace

std::optional<LowerWitness> find_lower_witness(const Matrix& m, int chi) {
  return find_lower_witness_opts(m, chi, CertifyOptions{});
}

// ---------------------------------------------------------------------------

Certificate build_certificate(const Matrix& m, const Verdict& v, const CertifyOptions& opts) {
  if (v.status == Status::Unsupported) throw PreconditionError("no certificate for an unsupported verdict");
  Certificate c;
  c.matrix = m;

  const ReducedForm r = reduce(m);
  c.audit = json{{"rule", v.rule}, {"normal_form", matrix_to_json(r.matrix)}, {"transcript", to_json(r.transcript)}};

  if (v.status == Status::Loops) {
    const Lattice lat(m);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      IntVec e(m.rows(), 0);
      e[i] = 1;
      if (auto coeffs = lat.solve(e)) {
        c.evidence = LoopWitness{i, 1, *coeffs};
        return c;
      }
    }
    throw std::runtime_error("loop verdict but no generator lies in the column span");
  }

  const int k = v.chi;
  c.claimed_chi = k;
  bool done = false;
  if (k == 2) {
    Bipartition b{IntVec(m.rows(), 1)};
    if (verify_periodic_coloring(m, {b.functional, 2, {0, 1}}, 2).valid) {
      c.evidence = b;
      done = true;
    }
  }
  if (!done) {
    auto pc = find_periodic_coloring_capped(m, k, opts.cyclic_search_cap);
    if (!pc) throw std::runtime_error("no periodic coloring with " + std::to_string(k) + " colors found");
    c.evidence = *pc;
  }
  if (k >= 4) {
    auto w = find_lower_witness_opts(m, k, opts);
    if (!w) throw std::runtime_error("no lower-bound witness found for chromatic number " + std::to_string(k));
    c.witness = *w;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Serialization

namespace {

json witness_to_json(const LowerWitness& w) {
  if (const auto* l = std::get_if<LanyardWitness>(&w)) {
    json ds = json::array();
    for (const auto& d : l->diamonds) ds.push_back(json(d.vertices));
    json data{{"diamonds", ds}};
    data["clasp"] = l->clasp ? json(*l->clasp) : json(nullptr);
    return {{"type", "Lanyard"}, {"data", data}};
  }
  if (const auto* c = std::get_if<C13Embedding>(&w)) return {{"type", "C13Embedding"}, {"data", {{"vertices", c->vertices}}}};
  return {{"type", "K5Embedding"}, {"data", {{"vertices", std::get<K5Embedding>(w).vertices}}}};
}

LowerWitness witness_from_json(const json& j) {
  const std::string type = j.at("type").get<std::string>();
  const json& data = j.at("data");
  if (type == "Lanyard") {
    LanyardWitness l;
    for (const auto& d : data.at("diamonds")) {
      auto vs = vecs_from_json(d);
      if (vs.size() != 4) throw ParseError("a diamond has exactly 4 vertices");
      Diamond dm;
      for (std::size_t i = 0; i < 4; ++i) dm.vertices[i] = vs[i];
      l.diamonds.push_back(std::move(dm));
    }
    if (data.contains("clasp") && !data.at("clasp").is_null()) {
      auto cl = vecs_from_json(data.at("clasp"));
      if (cl.size() != 2) throw ParseError("a clasp has exactly 2 vertices");
      l.clasp = std::array<IntVec, 2>{cl[0], cl[1]};
    }
    return l;
  }
  if (type == "C13Embedding") return C13Embedding{vecs_from_json(data.at("vertices"))};
  if (type == "K5Embedding") return K5Embedding{vecs_from_json(data.at("vertices"))};
  throw ParseError("unknown witness type '" + type + "'");
}

}  // namespace

json to_json(const Certificate& c) {
  json j;
  if (const auto* b = std::get_if<Bipartition>(&c.evidence)) {
    j["type"] = "Bipartition";
    j["data"] = {{"functional", b->functional}};
  } else if (const auto* p = std::get_if<PeriodicColoring>(&c.evidence)) {
    j["type"] = "Coloring";
    j["data"] = {{"functional", p->functional}, {"modulus", p->modulus}, {"table", p->table}};
  } else {
    const auto& l = std::get<LoopWitness>(c.evidence);
    j["type"] = "LoopWitness";
    j["data"] = {{"generator", l.generator}, {"sign", l.sign}, {"coefficients", l.coefficients}};
  }
  j["matrix"] = matrix_to_json(c.matrix);
  j["claimed_chi"] = c.claimed_chi ? json(*c.claimed_chi) : json(nullptr);
  if (c.witness) j["witness"] = witness_to_json(*c.witness);
  if (c.audit) j["audit"] = *c.audit;
  return j;
}

Certificate certificate_from_json(const json& j) {
  try {
    Certificate c;
    c.matrix = matrix_from_json(j.at("matrix"));
    if (j.contains("claimed_chi") && !j.at("claimed_chi").is_null()) c.claimed_chi = j.at("claimed_chi").get<int>();
    const std::string type = j.at("type").get<std::string>();
    const json& data = j.at("data");
    if (type == "Bipartition") {
      c.evidence = Bipartition{vec_from_json(data.at("functional"))};
    } else if (type == "Coloring") {
      PeriodicColoring p;
      p.functional = vec_from_json(data.at("functional"));
      p.modulus = data.at("modulus").get<Int>();
      p.table = data.at("table").get<std::vector<int>>();
      c.evidence = std::move(p);
    } else if (type == "LoopWitness") {
      LoopWitness l;
      const Int g = data.at("generator").get<Int>();
      if (g < 0) throw ParseError("negative generator index");
      l.generator = static_cast<std::size_t>(g);
      l.sign = data.value("sign", Int{1});
      l.coefficients = vec_from_json(data.at("coefficients"));
      c.evidence = std::move(l);
    } else {
      throw ParseError("unknown certificate type '" + type + "'");
    }
    if (j.contains("witness") && !j.at("witness").is_null()) c.witness = witness_from_json(j.at("witness"));
    if (j.contains("audit")) c.audit = j.at("audit");
    return c;
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed certificate: ") + e.what());
  }
}

}  // namespace cayleychi
