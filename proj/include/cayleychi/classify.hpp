#pragma once

// Closed-form chromatic numbers of standardized abelian Cayley graphs with
// 1 x r, 2 x 2 (after lower-triangularization) and 3 x 2 (after MHNF)
// Heuberger matrices.

#include <optional>
#include <string>

#include "cayleychi/circulant.hpp"
#include "cayleychi/intmat.hpp"
#include "cayleychi/normalform.hpp"

namespace cayleychi {

enum class Status { Loops, Chromatic, Unsupported };

std::string to_string(Status s);

struct Verdict {
  Status status = Status::Unsupported;
  int chi = 0;  // meaningful only for Chromatic
  std::string rule;
  std::optional<CirculantSpec> circulant;
  std::string reason;  // Unsupported only

  static Verdict loops(std::string rule);
  static Verdict chromatic(int k, std::string rule);
  static Verdict unsupported(std::string reason);

  // Same status and, for Chromatic, the same chi. Rules may differ.
  bool same_answer(const Verdict& other) const;
  std::string describe() const;
};

Verdict chi_1xr(std::span<const Int> row);

bool loops_2x2(const Matrix& m);
Int choose_q(Int y11, Int y21, Int y22);
// Requires lower triangular with nonnegative diagonal.
Verdict chi_2x2(const Matrix& m);
// Chromatic(3) as an upper-bound marker when loop-free and 3 | det.
std::optional<Verdict> det3_shortcut(const Matrix& m);

// Column 1 is e1 or column 2 is e3. A true answer means loops for any 3x2
// matrix; a false answer rules loops out only in MHNF.
bool mhnf_loops(const Matrix& m);

struct FamilyMatch {
  int family = 0;  // 1..6
  Int k = 0;       // families 1-4 and 6
  Int a = 0;       // family 6
  Int b = 0;       // family 5
};
std::optional<FamilyMatch> match_family(const Matrix& m);

Verdict chi_3x2_mhnf(const Matrix& m);
// Works on any 3x2 matrix without zero rows, with independent columns and no
// loops; reads the answer off the absolute values of the 2x2 minors.
Verdict chi_3x2_minors(const Matrix& m);

// (1 0; 1 y22; 1 y32)
Verdict chi_first_column_ones(Int y22, Int y32);
// (y11 0; y21 0; y31 y32) with y11, y21, y32 > 0 and -y32/2 <= y31 <= 0
Verdict chi_L_shaped(Int y11, Int y21, Int y31, Int y32);
// (1 0; 0 1; y31 y32) with 0 < y31 <= y32
Verdict chi_I_on_top(Int y31, Int y32);

struct Classification {
  Verdict verdict;
  ReducedForm reduced;
};

Classification classify_detailed(const Matrix& m);
Verdict classify(const Matrix& m);

}  // namespace cayleychi
