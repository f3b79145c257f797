#pragma once

// Machine-checkable evidence for chromatic numbers. Verification uses only
// lattice membership and table lookups; it never consults the classifier.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "cayleychi/classify.hpp"
#include "cayleychi/intmat.hpp"
#include "json.hpp"

namespace cayleychi {

// color(H + v) = table[(functional . v) mod modulus]
struct PeriodicColoring {
  IntVec functional;
  Int modulus = 1;
  std::vector<int> table;
};

// The coloring v -> (functional . v) mod 2.
struct Bipartition {
  IntVec functional;
};

// columns(M) * coefficients == sign * e_generator
struct LoopWitness {
  std::size_t generator = 0;
  Int sign = 1;
  IntVec coefficients;
};

// Vertices in order (start, p, q, end); start and end are the endpoints. All
// pairs except possibly {start, end} must be adjacent.
struct Diamond {
  std::array<IntVec, 4> vertices;
  const IntVec& start() const { return vertices[0]; }
  const IntVec& end() const { return vertices[3]; }
};

struct LanyardWitness {
  std::vector<Diamond> diamonds;
  // Must join the start of the first diamond to the end of the last one.
  std::optional<std::array<IntVec, 2>> clasp;
};

// x_0..x_12 with x_i ~ x_{i+1} and x_i ~ x_{i+5}, indices mod 13.
struct C13Embedding {
  std::vector<IntVec> vertices;
};

struct K5Embedding {
  std::vector<IntVec> vertices;
};

using UpperEvidence = std::variant<Bipartition, PeriodicColoring, LoopWitness>;
using LowerWitness = std::variant<LanyardWitness, C13Embedding, K5Embedding>;

struct Certificate {
  Matrix matrix;
  std::optional<int> claimed_chi;  // empty for loops
  UpperEvidence evidence;
  std::optional<LowerWitness> witness;
  // Informational only.
  std::optional<nlohmann::json> audit;
};

struct VerifyResult {
  bool valid = false;
  std::string reason;
};

// Row-combine homomorphisms. A step puts row[first] +- row[second] at
// position `first` and removes row `second` (0-based).
enum class Combine { Add, Subtract };
struct RowCombine {
  std::size_t first = 0;
  std::size_t second = 1;
  Combine kind = Combine::Add;
};
struct HomChain {
  Matrix matrix;  // the target's Heuberger matrix
  Matrix map;     // linear map Z^m -> Z^(m - steps); matrix == map * M
};
HomChain hom_chain(const Matrix& m, const std::vector<RowCombine>& plan);

// Adjacency and coset equality via lattice membership.
class MembershipGraph {
 public:
  explicit MembershipGraph(const Matrix& m) : lat_(m), m_(m.rows()) {}
  bool same(std::span<const Int> u, std::span<const Int> v) const;
  bool adjacent(std::span<const Int> u, std::span<const Int> v) const;
  std::size_t dimension() const { return m_; }

 private:
  Lattice lat_;
  std::size_t m_;
};

VerifyResult verify_periodic_coloring(const Matrix& m, const PeriodicColoring& c, int max_colors = 0);
VerifyResult verify_lanyard(const Matrix& m, const LanyardWitness& w);

// Finds a proper periodic coloring with at most k colors by pulling back
// along row-combine homomorphisms, falling back to a search over cyclic
// quotients.
std::optional<PeriodicColoring> find_periodic_coloring(const Matrix& m, int k);

std::optional<LowerWitness> find_lower_witness(const Matrix& m, int chi);

struct CertifyOptions {
  Int cyclic_search_cap = 160;
  std::size_t max_ball_radius = 14;
};

// Throws PreconditionError for Unsupported verdicts and std::runtime_error
// when no certificate could be found.
Certificate build_certificate(const Matrix& m, const Verdict& v, const CertifyOptions& opts = {});
VerifyResult verify_certificate(const Matrix& m, const Certificate& c);

nlohmann::json to_json(const Certificate& c);
Certificate certificate_from_json(const nlohmann::json& j);

nlohmann::json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const nlohmann::json& j);

}  // namespace cayleychi
