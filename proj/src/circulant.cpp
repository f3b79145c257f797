#include "cayleychi/circulant.hpp"

namespace cayleychi {

bool CirculantSpec::valid() const {
  if (n == 0) return false;
  if (gcd(gcd(a, b), n) != 1) return false;
  return a % n != 0 && b % n != 0;
}

void CirculantSpec::validate() const {
  if (!valid()) throw PreconditionError("not a Heuberger circulant: " + to_string(*this));
}

std::string to_string(const CirculantSpec& c) {
  return "C_" + std::to_string(c.n) + "(" + std::to_string(c.a) + "," + std::to_string(c.b) + ")";
}

namespace {

bool congruent_pm(Int x, Int y, Int n) {
  return mod(checked::sub(x, y), n) == 0 || mod(checked::add(x, y), n) == 0;
}

}  // namespace

int circulant_chi(const CirculantSpec& c) {
  c.validate();
  const Int n = checked::abs(c.n);
  const Int a = c.a, b = c.b;
  const Int two_a = checked::mul(2, a), two_b = checked::mul(2, b);
  if (a % 2 != 0 && b % 2 != 0 && n % 2 == 0) return 2;
  if (n == 5 && congruent_pm(a, two_b, n)) return 5;
  if (n == 13 && congruent_pm(a, checked::mul(5, b), n)) return 4;
  if (n != 5 && n % 3 != 0 && (congruent_pm(a, two_b, n) || congruent_pm(b, two_a, n))) return 4;
  return 3;
}

}  // namespace cayleychi
