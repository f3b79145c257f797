#include <cstdio>
#include <fstream>
#include <sstream>

#include "cayleychi/cli.hpp"
#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
  json doc() const { return json::parse(out); }
};

Run run(std::vector<std::string> args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  Run r;
  r.code = cayleychi::cli::run(args, in, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace

TEST_CASE("classify examples") {
  Run a = run({"classify", "-m", "1 0; 0 1; 2 6", "--certificate"});
  REQUIRE(a.code == cayleychi::cli::kOk);
  json d = a.doc();
  CHECK(d.at("status") == "Chromatic");
  CHECK(d.at("chi") == 4);
  CHECK(d.at("rule").get<std::string>().rfind("Thm-m3-family", 0) == 0);
  CHECK(d.at("certificate").at("witness").at("type") == "Lanyard");
  CHECK(d.contains("normal_form"));
  CHECK(d.contains("transcript"));

  Run b = run({"classify", "-m", "3 1 4"});
  CHECK(b.code == 0);
  CHECK(b.doc().at("status") == "Loops");
  CHECK_FALSE(b.doc().contains("chi"));

  Run c = run({"classify", "-m", "5; 2; 7"});
  CHECK(c.code == 0);
  CHECK(c.doc().at("status") == "Unsupported");
  CHECK(c.doc().at("reason") == "requires companion Tomato Cage Theorem");
  CHECK(c.doc().contains("oracle_bounds"));
}

TEST_CASE("matrix sources") {
  CHECK(run({"classify"}, "2 0; 1 4").doc().at("chi") == 4);
  CHECK(run({"classify"}, R"({"matrix": [[2, 0], [1, 4]]})").doc().at("chi") == 4);
  CHECK(run({"classify"}, "[[2, 0], [1, 4]]").doc().at("chi") == 4);
  const std::string path = "cli_test_matrix.txt";
  std::ofstream(path) << "1 0; -2 5\n";
  CHECK(run({"classify", "-f", path}).doc().at("chi") == 5);
  CHECK(run({"classify", "-f", path, "-m", "1 0; 0 1"}).code == cayleychi::cli::kParseError);
  std::remove(path.c_str());
}

TEST_CASE("exit codes") {
  CHECK(run({"classify", "-m", "1 2; 3"}).code == cayleychi::cli::kParseError);
  CHECK(run({"classify", "-m", "1 a"}).code == cayleychi::cli::kParseError);
  CHECK(run({"classify"}, "{not json").code == cayleychi::cli::kParseError);
  CHECK(run({"bogus"}).code == cayleychi::cli::kParseError);
  CHECK(run({"classify", "--nope"}).code == cayleychi::cli::kParseError);
  CHECK(run({"classify", "-f", "/nonexistent/file"}).code == cayleychi::cli::kParseError);
  CHECK(run({"--help"}).code == cayleychi::cli::kOk);
  CHECK(run({"oracle", "-m", "3000 0; 0 3000", "--exact"}).code == cayleychi::cli::kCapExceeded);
  CHECK(run({"classify", "-m", "9223372036854775807 1; 3 9223372036854775807"}).code == cayleychi::cli::kCapExceeded);
  CHECK(run({"classify", "-m", "99999999999999999999999"}).code == cayleychi::cli::kParseError);
}

TEST_CASE("normalize") {
  Run r = run({"normalize", "-m", "1 0; 0 1; 2 3"});
  REQUIRE(r.code == 0);
  json d = r.doc();
  CHECK(d.at("shape_class") == "Mhnf3x2");
  CHECK(d.at("transcript").is_array());
  for (const auto& s : d.at("transcript")) {
    CHECK(s.contains("op"));
    CHECK(s.contains("args"));
  }
  CHECK(run({"normalize", "-m", "1 2; 0 0"}).doc().at("deleted_zero_rows") == 1);
}

TEST_CASE("oracle") {
  json a = run({"oracle", "-m", "1 0 0; -2 5 0; 0 0 3", "--exact"}).doc();
  CHECK(a.at("exact_chi") == 5);
  CHECK(a.at("order") == 15);
  json b = run({"oracle", "-m", "2 0; -1 2; 0 5", "--radius", "6", "--moduli", "10,12"}).doc();
  CHECK(b.at("bounds").at("lower") == 3);
  CHECK(b.at("bounds").at("upper") == 3);
  json c = run({"oracle", "-m", "1 0; 0 1; 2 6", "--moduli", "7", "--extra", "6,0,0"}).doc();
  CHECK(c.at("bounds").at("upper") == 4);
  CHECK(c.at("bounds").at("upper_extra_columns") == json{{6, 0, 0}});
  CHECK(run({"oracle", "-m", "1 0; 0 1; 2 6", "--extra", "0,9"}).code == cayleychi::cli::kParseError);
}

TEST_CASE("verify round trip") {
  for (const char* m : {"1 0; 0 1; 2 6", "2 0; 1 4", "1 0; -2 5", "3 1 4", "4 0; 2 4", "2 4; 1 1; 0 5"}) {
    CAPTURE(m);
    Run c = run({"classify", "-m", m, "--certificate"});
    REQUIRE(c.code == 0);
    Run v = run({"verify"}, c.out);
    REQUIRE(v.code == 0);
    CHECK(v.doc().at("valid") == true);
    Run direct = run({"verify"}, c.doc().at("certificate").dump());
    CHECK(direct.doc().at("valid") == true);
  }
  Run c = run({"classify", "-m", "2 0; 1 4", "--certificate"});
  Run other = run({"verify", "-m", "2 0; 1 6"}, c.out);
  CHECK(other.code == 0);
  CHECK(other.doc().at("valid") == false);
  CHECK(run({"verify"}, "1 0; 0 1").code == cayleychi::cli::kParseError);
}

TEST_CASE("sweep") {
  Run r = run({"sweep", "--family", "circulant", "--max-n", "10", "--workers", "3"});
  CHECK(r.code == 0);
  std::istringstream lines(r.out);
  std::string line;
  int n = 0, last_abs = 0;
  while (std::getline(lines, line)) {
    json j = json::parse(line);
    CHECK(j.at("agree") == true);
    int an = std::abs(j.at("circulant").at("n").get<int>());
    CHECK(an >= last_abs);
    last_abs = an;
    ++n;
  }
  CHECK(n > 50);
  Run single = run({"sweep", "--family", "circulant", "--max-n", "10", "--workers", "1"});
  CHECK(single.out == r.out);

  Run l = run({"sweep", "--family", "lower2x2", "--bound", "3"});
  CHECK(l.code == 0);
  CHECK(std::count(l.out.begin(), l.out.end(), '\n') == 4 * 4 * 7);

  Run rnd = run({"sweep", "--family", "random3x2", "--count", "5", "--radius", "4"});
  CHECK(rnd.code == 0);
  CHECK(std::count(rnd.out.begin(), rnd.out.end(), '\n') == 5);
  CHECK(run({"sweep", "--family", "nope"}).code == cayleychi::cli::kParseError);
}

TEST_CASE("export") {
  Run r = run({"export", "-m", "1 0; -2 5"});
  CHECK(r.code == 0);
  CHECK(r.out.rfind("5\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') == 11);
  Run b = run({"export", "-m", "1 0; 0 1; 2 3", "--radius", "1"});
  CHECK(b.out.rfind("7\n", 0) == 0);
  const std::string path = "cli_test_export.txt";
  CHECK(run({"oracle", "-m", "4 0; 2 4", "--export", path}).code == 0);
  std::ifstream f(path);
  std::string first;
  std::getline(f, first);
  CHECK(first == "16");
  std::remove(path.c_str());
}
