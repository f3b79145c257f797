#pragma once

// Chromatic-number-preserving reductions of Heuberger matrices: zero-row and
// dependent-column removal, 2x2 lower-triangularization, and the modified
// Hermite normal form (MHNF) for 3x2 matrices.

#include <array>
#include <string>

#include "cayleychi/intmat.hpp"
#include "cayleychi/transcript.hpp"

namespace cayleychi {

enum class ShapeClass { Row1xR, Lower2x2, Mhnf3x2, Unsupported };

std::string to_string(ShapeClass s);

struct Normalized {
  Matrix matrix;
  Transcript transcript;
};

struct ReducedForm {
  Matrix matrix;
  Transcript transcript;
  ShapeClass shape_class = ShapeClass::Unsupported;
  std::size_t deleted_zero_rows = 0;
  // Set only for Unsupported.
  std::string reason;
};

inline constexpr const char* kReasonTomatoCage = "requires companion Tomato Cage Theorem";
inline constexpr const char* kReasonOutOfScope = "shape out of scope";

// Lower triangular with nonnegative diagonal; isomorphism steps only.
Normalized lower_triangular_2x2(const Matrix& m);

// Entrywise checks of the six MHNF conditions, in order:
//   1. y11 > 0
//   2. y12 == 0
//   3. y11*y22 == y11*y32 (mod 3)
//   4. y22 <= y32
//   5. |y22| <= |y32|
//   6. y22 == 0 and -|y32|/2 <= y31 <= 0, or -|y22|/2 <= y21 <= 0
std::array<bool, 6> mhnf_conditions(const Matrix& m);
bool is_mhnf(const Matrix& m);

// Requires a 3x2 matrix without zero rows whose columns are independent.
Normalized mhnf_3x2(const Matrix& m);

ReducedForm reduce(const Matrix& m);

}  // namespace cayleychi
