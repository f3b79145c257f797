#include "cayleychi/transcript.hpp"

#include <array>
#include <utility>

namespace cayleychi {

namespace {

constexpr std::array<std::pair<OpKind, const char*>, 8> kNames{{
    {OpKind::SwapRows, "swap_rows"},
    {OpKind::NegateRow, "negate_row"},
    {OpKind::SwapCols, "swap_cols"},
    {OpKind::NegateCol, "negate_col"},
    {OpKind::AddColMultiple, "add_col_multiple"},
    {OpKind::DeleteZeroCol, "delete_zero_col"},
    {OpKind::DeleteZeroRow, "delete_zero_row"},
    {OpKind::AppendZeroCol, "append_zero_col"},
}};

}  // namespace

Effect Step::effect() const {
  return op == OpKind::DeleteZeroRow ? Effect::ChiPreserving : Effect::Isomorphism;
}

void Transcript::append(const Transcript& other) {
  steps.insert(steps.end(), other.steps.begin(), other.steps.end());
}

std::string op_name(OpKind op) {
  for (const auto& [k, name] : kNames)
    if (k == op) return name;
  return "unknown";
}

OpKind parse_op_name(const std::string& name) {
  for (const auto& [k, n] : kNames)
    if (name == n) return k;
  throw ParseError("unknown transcript op '" + name + "'");
}

void apply_step(Matrix& m, const Step& s) {
  switch (s.op) {
    case OpKind::SwapRows:
      m.swap_rows(s.i, s.j);
      break;
    case OpKind::NegateRow:
      m.negate_row(s.i);
      break;
    case OpKind::SwapCols:
      m.swap_cols(s.i, s.j);
      break;
    case OpKind::NegateCol:
      m.negate_col(s.i);
      break;
    case OpKind::AddColMultiple:
      m.add_col_multiple(s.i, s.j, s.k);
      break;
    case OpKind::DeleteZeroCol:
      if (!m.is_zero_col(s.i)) throw PreconditionError("delete_zero_col: column is not zero");
      m.erase_col(s.i);
      break;
    case OpKind::DeleteZeroRow:
      if (!m.is_zero_row(s.i)) throw PreconditionError("delete_zero_row: row is not zero");
      m.erase_row(s.i);
      break;
    case OpKind::AppendZeroCol: {
      IntVec z(m.rows(), 0);
      m.append_col(z);
      break;
    }
  }
}

Matrix apply_ops(const Matrix& m, const Transcript& t) {
  Matrix out = m;
  for (const auto& s : t.steps) apply_step(out, s);
  return out;
}

Matrix row_transform(const Transcript& t, std::size_t rows) {
  Matrix p = Matrix::identity(rows);
  for (const auto& s : t.steps) {
    switch (s.op) {
      case OpKind::SwapRows:
        p.swap_rows(s.i, s.j);
        break;
      case OpKind::NegateRow:
        p.negate_row(s.i);
        break;
      case OpKind::DeleteZeroRow:
        p.erase_row(s.i);
        break;
      default:
        break;
    }
  }
  return p;
}

Matrix col_transform(const Transcript& t, std::size_t cols) {
  Matrix q = Matrix::identity(cols);
  for (const auto& s : t.steps) {
    switch (s.op) {
      case OpKind::SwapCols:
        q.swap_cols(s.i, s.j);
        break;
      case OpKind::NegateCol:
        q.negate_col(s.i);
        break;
      case OpKind::AddColMultiple:
        q.add_col_multiple(s.i, s.j, s.k);
        break;
      case OpKind::DeleteZeroCol:
        q.erase_col(s.i);
        break;
      case OpKind::AppendZeroCol: {
        IntVec z(q.rows(), 0);
        q.append_col(z);
        break;
      }
      default:
        break;
    }
  }
  return q;
}

nlohmann::json to_json(const Step& s) {
  nlohmann::json args = nlohmann::json::array();
  switch (s.op) {
    case OpKind::SwapRows:
    case OpKind::SwapCols:
      args = {s.i, s.j};
      break;
    case OpKind::AddColMultiple:
      args = {s.i, s.j, s.k};
      break;
    case OpKind::AppendZeroCol:
      break;
    default:
      args = {s.i};
      break;
  }
  return {{"op", op_name(s.op)}, {"args", args}};
}

nlohmann::json to_json(const Transcript& t) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& s : t.steps) arr.push_back(to_json(s));
  return arr;
}

Step step_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("op")) throw ParseError("transcript step must be an object with 'op'");
  Step s;
  s.op = parse_op_name(j.at("op").get<std::string>());
  const auto args = j.value("args", nlohmann::json::array());
  auto idx = [&](std::size_t n) -> std::size_t {
    if (args.size() <= n || !args[n].is_number_integer() || args[n].get<Int>() < 0)
      throw ParseError("transcript step '" + op_name(s.op) + "' has bad arguments");
    return args[n].get<std::size_t>();
  };
  switch (s.op) {
    case OpKind::SwapRows:
    case OpKind::SwapCols:
      s.i = idx(0);
      s.j = idx(1);
      break;
    case OpKind::AddColMultiple:
      s.i = idx(0);
      s.j = idx(1);
      if (args.size() < 3 || !args[2].is_number_integer()) throw ParseError("add_col_multiple needs a multiplier");
      s.k = args[2].get<Int>();
      break;
    case OpKind::AppendZeroCol:
      break;
    default:
      s.i = idx(0);
      break;
  }
  return s;
}

Transcript transcript_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw ParseError("transcript must be a JSON array");
  Transcript t;
  for (const auto& s : j) t.push(step_from_json(s));
  return t;
}

}  // namespace cayleychi
