#pragma once

// Explicit finite graphs: quotients Z^m / H', circulants, and balls in the
// infinite Cayley graph Z^m / H.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cayleychi/circulant.hpp"
#include "cayleychi/intmat.hpp"

namespace cayleychi {

class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Vertex = std::uint32_t;

struct FiniteGraph {
  std::size_t order = 0;
  // Sorted, duplicate-free neighbor lists without self-loops.
  std::vector<std::vector<Vertex>> adjacency;
  bool has_loops = false;
  std::vector<Vertex> loop_vertices;
  // Group element of each vertex: canonical Smith coordinates.
  std::vector<IntVec> labels;
  // A representative in Z^m of each vertex's coset.
  std::vector<IntVec> representatives;

  static FiniteGraph from_edges(std::size_t order, const std::vector<std::pair<Vertex, Vertex>>& edges);

  bool adjacent(Vertex u, Vertex v) const;
  std::size_t edge_count() const;
  std::size_t degree(Vertex v) const { return adjacency[v].size(); }
};

// Canonical coordinates on Z^m / H via the Smith form of the generators of H:
// torsion coordinates reduced into [0, d_i), free coordinates kept exact.
class CosetSpace {
 public:
  explicit CosetSpace(const Matrix& generators);

  std::size_t dimension() const { return m_; }
  bool finite() const { return snf_.rank == m_; }
  // Number of cosets; requires finite().
  Int order() const;
  // Moduli of the coordinates; 0 marks a free coordinate.
  const IntVec& moduli() const { return moduli_; }
  const SmithDecomposition& smith() const { return snf_; }

  IntVec canonical(std::span<const Int> v) const;
  // Canonical image of +e_j.
  const IntVec& generator(std::size_t j) const { return gens_[j]; }
  IntVec add(std::span<const Int> key, std::span<const Int> delta, Int sign) const;
  // A vector of Z^m whose canonical form is `key`.
  IntVec representative(std::span<const Int> key) const;

 private:
  std::size_t m_;
  SmithDecomposition snf_;
  IntVec moduli_;
  std::vector<IntVec> gens_;
};

inline constexpr std::size_t kDefaultQuotientCap = 2'000'000;
inline constexpr std::size_t kDefaultBallCap = 200'000;

// The Cayley graph of Z^m / H' where H' is spanned by the columns of M and
// the extra columns. H' must have full rank.
FiniteGraph finite_quotient_graph(const Matrix& m, const std::vector<IntVec>& extra_columns = {},
                                  std::size_t cap = kDefaultQuotientCap);

FiniteGraph circulant_graph(const CirculantSpec& c);

struct BallSpec {
  std::size_t radius = 0;
  std::optional<IntVec> center;  // defaults to the identity coset
};

// Induced subgraph on the cosets within graph distance `radius` of the center.
FiniteGraph bfs_ball(const Matrix& m, const BallSpec& spec, std::size_t cap = kDefaultBallCap);

// "order" on the first line, then one "u v" line per edge with u < v.
std::string to_edge_list(const FiniteGraph& g);

}  // namespace cayleychi
