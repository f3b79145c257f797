#pragma once

// Command-line front end. `run` takes the arguments after the program name.

#include <iosfwd>
#include <string>
#include <vector>

#include "cayleychi/classify.hpp"
#include "cayleychi/intmat.hpp"
#include "json.hpp"

namespace cayleychi::cli {

enum ExitCode : int {
  kOk = 0,
  kParseError = 2,
  kCapExceeded = 3,
  kCrossCheckFailed = 4,
};

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

// Accepts the matrix text format or JSON ({"matrix": [[...]]} or [[...]]).
Matrix parse_matrix_input(const std::string& text);

nlohmann::json verdict_to_json(const Verdict& v);

}  // namespace cayleychi::cli
