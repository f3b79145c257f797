#include "cayleychi/classify.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>

namespace cayleychi {

std::string to_string(Status s) {
  switch (s) {
    case Status::Loops:
      return "Loops";
    case Status::Chromatic:
      return "Chromatic";
    case Status::Unsupported:
      return "Unsupported";
  }
  return "Unsupported";
}

Verdict Verdict::loops(std::string rule) {
  Verdict v;
  v.status = Status::Loops;
  v.rule = std::move(rule);
  return v;
}

Verdict Verdict::chromatic(int k, std::string rule) {
  Verdict v;
  v.status = Status::Chromatic;
  v.chi = k;
  v.rule = std::move(rule);
  return v;
}

Verdict Verdict::unsupported(std::string reason) {
  Verdict v;
  v.status = Status::Unsupported;
  v.rule = "Unsupported";
  v.reason = std::move(reason);
  return v;
}

bool Verdict::same_answer(const Verdict& other) const {
  if (status != other.status) return false;
  return status != Status::Chromatic || chi == other.chi;
}

std::string Verdict::describe() const {
  switch (status) {
    case Status::Loops:
      return "Loops [" + rule + "]";
    case Status::Chromatic:
      return "Chromatic(" + std::to_string(chi) + ") [" + rule + "]";
    case Status::Unsupported:
      return "Unsupported(" + reason + ")";
  }
  return "?";
}

namespace {

bool divides(Int d, Int x) { return d == 0 ? x == 0 : x % d == 0; }
bool even(Int x) { return x % 2 == 0; }

}  // namespace

// ---------------------------------------------------------------------------
// 1 x r

Verdict chi_1xr(std::span<const Int> row) {
  if (row.empty()) throw ShapeError("chi_1xr: empty row");
  const Int e = gcd_vec(row);
  if (e == 0) return Verdict::chromatic(2, "Lem-m1-zero");
  if (e == 1) return Verdict::loops("Lem-m1-loops");
  if (even(e)) return Verdict::chromatic(2, "Lem-m1-even");
  return Verdict::chromatic(3, "Lem-m1-odd");
}

// ---------------------------------------------------------------------------
// 2 x 2

bool loops_2x2(const Matrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw ShapeError("loops_2x2: expected a 2x2 matrix");
  const Int n = determinant(m);
  if (n != 0) return (divides(n, m(0, 0)) && divides(n, m(0, 1))) || (divides(n, m(1, 0)) && divides(n, m(1, 1)));
  return (m.is_zero_row(0) && gcd(m(1, 0), m(1, 1)) == 1) || (m.is_zero_row(1) && gcd(m(0, 0), m(0, 1)) == 1);
}

Int choose_q(Int y11, Int y21, Int y22) {
  const Int d = gcd(y11, y21);
  Int q = 1;
  Int rest = checked::abs(y11);
  for (Int p = 2; p <= rest / p; ++p) {
    if (rest % p != 0) continue;
    while (rest % p == 0) rest /= p;
    if (!divides(p, d)) q = checked::mul(q, p);
  }
  if (rest > 1 && !divides(rest, d)) q = checked::mul(q, rest);
  if (gcd(y11, checked::add(y21, checked::mul(q, y22))) != 1)
    throw std::logic_error("choose_q: post-check gcd(y11, y21 + q*y22) == 1 failed");
  return q;
}

Verdict chi_2x2(const Matrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw ShapeError("chi_2x2: expected a 2x2 matrix");
  const Int y11 = m(0, 0), y12 = m(0, 1), y21 = m(1, 0), y22 = m(1, 1);
  if (y12 != 0 || y11 < 0 || y22 < 0)
    throw PreconditionError("chi_2x2: matrix must be lower triangular with nonnegative diagonal");

  if (y22 == 1 || (y11 == 1 && divides(y22, y21)) || (y11 == 0 && gcd(y21, y22) == 1))
    return Verdict::loops("Thm-m2-case1");
  if (even(checked::add(y11, y21)) && even(y22)) return Verdict::chromatic(2, "Thm-m2-case2");
  const Int e = gcd(gcd(y11, y21), y22);
  if (y11 == 0 || y22 == 0 || e > 1 || divides(y22, y21)) return Verdict::chromatic(3, "Thm-m2-case3");

  const Int q = choose_q(y11, y21, y22);
  CirculantSpec c{checked::mul(y11, y22), checked::sub(checked::neg(y21), checked::mul(q, y22)), y11};
  if (!c.valid()) throw std::logic_error("chi_2x2: case 4 produced an invalid circulant " + to_string(c));
  Verdict v = Verdict::chromatic(circulant_chi(c), "Thm-m2-case4");
  v.circulant = c;
  return v;
}

std::optional<Verdict> det3_shortcut(const Matrix& m) {
  if (m.rows() != 2 || m.cols() != 2) throw ShapeError("det3_shortcut: expected a 2x2 matrix");
  if (loops_2x2(m)) return std::nullopt;
  if (determinant(m) % 3 != 0) return std::nullopt;
  return Verdict::chromatic(3, "Cor-det3");
}

// ---------------------------------------------------------------------------
// 3 x 2

namespace {

void require_mhnf(const Matrix& m, const char* who) {
  if (m.rows() != 3 || m.cols() != 2 || !is_mhnf(m))
    throw PreconditionError(std::string(who) + ": matrix is not in modified Hermite normal form");
}

}  // namespace

bool mhnf_loops(const Matrix& m) {
  if (m.rows() != 3 || m.cols() != 2) throw ShapeError("mhnf_loops: expected a 3x2 matrix");
  return (m(0, 0) == 1 && m(1, 0) == 0 && m(2, 0) == 0) || (m(0, 1) == 0 && m(1, 1) == 0 && m(2, 1) == 1);
}

std::optional<FamilyMatch> match_family(const Matrix& m) {
  if (m.rows() != 3 || m.cols() != 2) throw ShapeError("match_family: expected a 3x2 matrix");
  if (m(0, 0) != 1 || m(0, 1) != 0) return std::nullopt;
  const Int y21 = m(1, 0), y22 = m(1, 1), y31 = m(2, 0), y32 = m(2, 1);

  // (1 0; 0 1; +-3k 1+3k)
  if (y21 == 0 && y22 == 1 && mod(y32 - 1, 3) == 0) {
    const Int k = (y32 - 1) / 3;
    if (k >= 1 && checked::abs(y31) == 3 * k) return FamilyMatch{1, k, 0, 0};
  }
  // (1 0; 0 -1; +-3k -1+3k)
  if (y21 == 0 && y22 == -1 && mod(y32 + 1, 3) == 0) {
    const Int k = (y32 + 1) / 3;
    if (k >= 1 && checked::abs(y31) == 3 * k) return FamilyMatch{2, k, 0, 0};
  }
  // (1 0; -1 2; -1-3k 2+3k)
  if (y21 == -1 && y22 == 2 && mod(y32 - 2, 3) == 0) {
    const Int k = (y32 - 2) / 3;
    if (k >= 1 && y31 == -1 - 3 * k) return FamilyMatch{3, k, 0, 0};
  }
  // (1 0; -1 -2; -1+3k -2+3k)
  if (y21 == -1 && y22 == -2 && mod(y32 + 2, 3) == 0) {
    const Int k = (y32 + 2) / 3;
    if (k >= 1 && y31 == -1 + 3 * k) return FamilyMatch{4, k, 0, 0};
  }
  // (1 0; 0 -1; 3b 2)
  if (y21 == 0 && y22 == -1 && y32 == 2 && mod(y31, 3) == 0) return FamilyMatch{5, 0, 0, y31 / 3};
  // (1 0; -1 a; -1 a+3(k-1)) with 3 not dividing a
  if (y21 == -1 && y31 == -1 && mod(y22, 3) != 0) {
    const Int diff = checked::sub(y32, y22);
    if (diff >= 0 && diff % 3 == 0) return FamilyMatch{6, diff / 3 + 1, y22, 0};
  }
  return std::nullopt;
}

Verdict chi_3x2_mhnf(const Matrix& m) {
  require_mhnf(m, "chi_3x2_mhnf");
  if (mhnf_loops(m)) return Verdict::loops("Thm-m3-case1");
  const Int s1 = checked::add(checked::add(m(0, 0), m(1, 0)), m(2, 0));
  const Int s2 = checked::add(m(1, 1), m(2, 1));
  if (even(s1) && even(s2)) return Verdict::chromatic(2, "Thm-m3-case2");
  if (auto f = match_family(m)) return Verdict::chromatic(4, "Thm-m3-family" + std::to_string(f->family));
  return Verdict::chromatic(3, "Thm-m3-case4");
}

Verdict chi_3x2_minors(const Matrix& m) {
  if (m.rows() != 3 || m.cols() != 2) throw ShapeError("chi_3x2_minors: expected a 3x2 matrix");
  for (std::size_t i = 0; i < 3; ++i)
    if (m.is_zero_row(i)) throw PreconditionError("chi_3x2_minors: matrix has a zero row");
  if (columns_dependent(m)) throw PreconditionError("chi_3x2_minors: columns are linearly dependent");
  if (mhnf_loops(mhnf_3x2(m).matrix)) throw PreconditionError("chi_3x2_minors: graph has loops");

  const Int s1 = checked::add(checked::add(m(0, 0), m(1, 0)), m(2, 0));
  const Int s2 = checked::add(checked::add(m(0, 1), m(1, 1)), m(2, 1));
  if (even(s1) && even(s2)) return Verdict::chromatic(2, "Minors-bipartite");

  const Minors3x2 mn = minors_3x2(m);
  std::array<Int, 3> s{checked::abs(mn.rows12), checked::abs(mn.rows13), checked::abs(mn.rows23)};
  std::sort(s.begin(), s.end());
  const Int alpha = s[0], beta = s[1], gamma = s[2];

  bool coprime_row = false;
  for (std::size_t i = 0; i < 3; ++i) coprime_row = coprime_row || gcd(m(i, 0), m(i, 1)) == 1;

  // {1, 2, 3k} as a multiset, k >= 1.
  bool one_two_3k = false;
  for (std::size_t i = 0; i < 3 && !one_two_3k; ++i) {
    std::array<Int, 2> rest{};
    std::size_t r = 0;
    for (std::size_t j = 0; j < 3; ++j)
      if (j != i) rest[r++] = s[j];
    one_two_3k = s[i] > 0 && s[i] % 3 == 0 && rest[0] == 1 && rest[1] == 2;
  }
  const bool additive = gamma == checked::add(alpha, beta) && mod(alpha, 3) != mod(beta, 3);

  if (coprime_row && alpha > 0 && (one_two_3k || additive)) return Verdict::chromatic(4, "Minors-exceptional");
  return Verdict::chromatic(3, "Minors-otherwise");
}

Verdict chi_first_column_ones(Int y22, Int y32) {
  const Int lo = std::min(y22, y32), hi = std::max(y22, y32);
  const bool loops = (lo == -1 && hi == 0) || (lo == 0 && hi == 1) || (lo == -1 && hi == -1) || (lo == 1 && hi == 1);
  if (loops) return Verdict::loops("Lem-first-column-ones");
  if (mod(checked::add(y32, y22), 3) == 0) return Verdict::chromatic(3, "Lem-first-column-ones");
  return Verdict::chromatic(4, "Lem-first-column-ones");
}

Verdict chi_L_shaped(Int y11, Int y21, Int y31, Int y32) {
  if (y11 <= 0 || y21 <= 0 || y32 <= 0 || y31 > 0 || checked::mul(2, y31) < -y32)
    throw PreconditionError("chi_L_shaped: requires y11, y21, y32 > 0 and -y32/2 <= y31 <= 0");
  if (y32 == 1) return Verdict::loops("Lem-L-shaped");
  if (even(checked::add(checked::add(y11, y21), y31)) && even(y32)) return Verdict::chromatic(2, "Lem-L-shaped");
  if (y11 == 1 && y21 == 1 && y31 == -1 && y32 % 3 != 0 && y32 > 1) return Verdict::chromatic(4, "Lem-L-shaped");
  return Verdict::chromatic(3, "Lem-L-shaped");
}

Verdict chi_I_on_top(Int y31, Int y32) {
  if (y31 <= 0 || y32 <= 0 || y31 > y32) throw PreconditionError("chi_I_on_top: requires 0 < y31 <= y32");
  if (!even(y31) && !even(y32)) return Verdict::chromatic(2, "Lem-I-on-top");
  if (y31 == 2 && y32 % 3 == 0) return Verdict::chromatic(4, "Lem-I-on-top");
  if (mod(y31, 3) != 1 && y32 == checked::add(1, y31)) return Verdict::chromatic(4, "Lem-I-on-top");
  return Verdict::chromatic(3, "Lem-I-on-top");
}

// ---------------------------------------------------------------------------
// Dispatcher

Classification classify_detailed(const Matrix& m) {
  Classification out{{}, reduce(m)};
  const ReducedForm& r = out.reduced;
  switch (r.shape_class) {
    case ShapeClass::Row1xR:
      out.verdict = chi_1xr(r.matrix.row(0));
      break;
    case ShapeClass::Lower2x2:
      out.verdict = chi_2x2(r.matrix);
      break;
    case ShapeClass::Mhnf3x2:
      out.verdict = chi_3x2_mhnf(r.matrix);
      break;
    case ShapeClass::Unsupported:
      out.verdict = Verdict::unsupported(r.reason);
      break;
  }
  return out;
}

Verdict classify(const Matrix& m) { return classify_detailed(m).verdict; }

}  // namespace cayleychi
