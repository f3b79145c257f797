#pragma once

// Heuberger circulants C_n(a, b) = Cay(Z_n, {+-a, +-b}).

#include <string>

#include "cayleychi/intmat.hpp"

namespace cayleychi {

struct CirculantSpec {
  Int n = 0;
  Int a = 0;
  Int b = 0;

  // gcd(a, b, n) == 1, n does not divide a, n does not divide b.
  bool valid() const;
  void validate() const;
  friend bool operator==(const CirculantSpec&, const CirculantSpec&) = default;
};

std::string to_string(const CirculantSpec& c);

// Heuberger's closed form; congruences are taken mod |n|.
int circulant_chi(const CirculantSpec& c);

}  // namespace cayleychi
