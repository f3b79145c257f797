#pragma once

// Replayable records of elementary row and column operations.

#include <cstddef>
#include <string>
#include <vector>

#include "cayleychi/intmat.hpp"
#include "json.hpp"

namespace cayleychi {

enum class OpKind {
  SwapRows,
  NegateRow,
  SwapCols,
  NegateCol,
  AddColMultiple,  // col i += k * col j
  DeleteZeroCol,
  DeleteZeroRow,
  AppendZeroCol,
};

enum class Effect { Isomorphism, ChiPreserving };

// Indices are 0-based. Unused fields stay zero.
struct Step {
  OpKind op = OpKind::SwapRows;
  std::size_t i = 0;
  std::size_t j = 0;
  Int k = 0;

  Effect effect() const;
  friend bool operator==(const Step&, const Step&) = default;
};

struct Transcript {
  std::vector<Step> steps;

  bool empty() const { return steps.empty(); }
  std::size_t size() const { return steps.size(); }
  void push(Step s) { steps.push_back(s); }
  void append(const Transcript& other);
  friend bool operator==(const Transcript&, const Transcript&) = default;
};

std::string op_name(OpKind op);
OpKind parse_op_name(const std::string& name);

void apply_step(Matrix& m, const Step& s);
Matrix apply_ops(const Matrix& m, const Transcript& t);

// Replays only the row steps on the m x m identity. The result P is a signed
// selection matrix with apply_ops(M, t) == P * M * Q.
Matrix row_transform(const Transcript& t, std::size_t rows);
// Replays only the column steps on the r x r identity, giving Q above.
Matrix col_transform(const Transcript& t, std::size_t cols);

nlohmann::json to_json(const Step& s);
nlohmann::json to_json(const Transcript& t);
Step step_from_json(const nlohmann::json& j);
Transcript transcript_from_json(const nlohmann::json& j);

}  // namespace cayleychi
