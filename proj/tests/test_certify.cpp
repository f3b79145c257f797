#include <set>

#include "cayleychi/certify.hpp"
#include "cayleychi/classify.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace cayleychi;

namespace {

std::size_t colors_used(const PeriodicColoring& c) {
  return std::set<int>(c.table.begin(), c.table.end()).size();
}

Certificate roundtrip(const Certificate& c) { return certificate_from_json(nlohmann::json::parse(to_json(c).dump())); }

void check_certified(const Matrix& m) {
  CAPTURE(to_string(m));
  Verdict v = classify(m);
  REQUIRE(v.status != Status::Unsupported);
  Certificate c = build_certificate(m, v);
  VerifyResult r = verify_certificate(m, c);
  CAPTURE(r.reason);
  CHECK(r.valid);
  CHECK(verify_certificate(m, roundtrip(c)).valid);
  if (v.status == Status::Loops) {
    CHECK(std::holds_alternative<LoopWitness>(c.evidence));
    CHECK_FALSE(c.claimed_chi.has_value());
    return;
  }
  REQUIRE(c.claimed_chi);
  CHECK(*c.claimed_chi == v.chi);
  if (const auto* pc = std::get_if<PeriodicColoring>(&c.evidence)) CHECK(colors_used(*pc) <= static_cast<std::size_t>(v.chi));
  if (v.chi >= 4) CHECK(c.witness.has_value());
}

}  // namespace

TEST_CASE("hom_chain examples") {
  const Int y22 = 4, y32 = -7;
  HomChain a = hom_chain(Matrix{{1, 0}, {1, y22}, {1, y32}}, {{1, 2, Combine::Add}});
  CHECK(a.matrix == Matrix{{1, 0}, {2, y22 + y32}});
  CHECK(multiply(a.map, Matrix{{1, 0}, {1, y22}, {1, y32}}) == a.matrix);
  HomChain b = hom_chain(Matrix{{1, 0}, {0, 1}, {5, 9}}, {{1, 2, Combine::Add}});
  CHECK(b.matrix == Matrix{{1, 0}, {5, 10}});
  HomChain c = hom_chain(Matrix{{7, 0}, {3, 0}, {-2, 5}}, {{0, 1, Combine::Subtract}});
  CHECK(c.matrix == Matrix{{4, 0}, {-2, 5}});
  HomChain two = hom_chain(Matrix{{1, 0}, {0, 1}, {5, 9}}, {{1, 2, Combine::Add}, {0, 1, Combine::Subtract}});
  CHECK(two.matrix.rows() == 1);
  CHECK(multiply(two.map, Matrix{{1, 0}, {0, 1}, {5, 9}}) == two.matrix);
  CHECK_THROWS(hom_chain(Matrix{{1, 0}, {0, 1}}, {{0, 0, Combine::Add}}));
  CHECK_THROWS(hom_chain(Matrix{{1, 0}, {0, 1}}, {{0, 2, Combine::Add}}));
}

TEST_CASE("verify_periodic_coloring") {
  Matrix m{{1, 0}, {0, 1}, {2, 5}};
  CHECK(verify_periodic_coloring(m, {{1, 1, 1}, 3, {0, 1, 2}}).valid);
  CHECK_FALSE(verify_periodic_coloring(m, {{1, 1, 1}, 3, {0, 1, 1}}).valid);
  CHECK_FALSE(verify_periodic_coloring(m, {{1, 1, 2}, 3, {0, 1, 2}}).valid);
  CHECK_FALSE(verify_periodic_coloring(m, {{1, 1, 1}, 3, {0, 1}}).valid);
  CHECK_FALSE(verify_periodic_coloring(m, {{1, 1, 1}, 3, {0, 1, 2}}, 2).valid);
  CHECK_FALSE(verify_periodic_coloring(m, {{1, 1}, 3, {0, 1, 2}}).valid);
}

TEST_CASE("certificate examples") {
  Matrix k5{{1, 0}, {-2, 5}};
  Certificate a = build_certificate(k5, classify(k5));
  CHECK(verify_certificate(k5, a).valid);
  CHECK(a.claimed_chi == 5);
  REQUIRE(a.witness);
  CHECK(std::holds_alternative<K5Embedding>(*a.witness));

  Matrix ion{{1, 0}, {0, 1}, {2, 6}};
  Certificate b = build_certificate(ion, classify(ion));
  CHECK(verify_certificate(ion, b).valid);
  REQUIRE(b.witness);
  REQUIRE(std::holds_alternative<LanyardWitness>(*b.witness));
  LanyardWitness lw = std::get<LanyardWitness>(*b.witness);
  CHECK(verify_lanyard(ion, lw).valid);
  LanyardWitness unclasped = lw;
  unclasped.clasp.reset();
  CHECK_FALSE(verify_lanyard(ion, unclasped).valid);
  Certificate tampered = b;
  std::get<LanyardWitness>(*tampered.witness).clasp.reset();
  CHECK_FALSE(verify_certificate(ion, tampered).valid);

  Matrix bip{{4, 0}, {2, 4}};
  Certificate c = build_certificate(bip, classify(bip));
  CHECK(std::holds_alternative<Bipartition>(c.evidence));
  CHECK(verify_certificate(bip, c).valid);
}

TEST_CASE("verification rejects tampering") {
  Matrix m{{2, 0}, {-1, 2}, {0, 5}};
  Certificate c = build_certificate(m, classify(m));
  REQUIRE(verify_certificate(m, c).valid);
  REQUIRE(std::holds_alternative<PeriodicColoring>(c.evidence));

  Certificate wrong_matrix = c;
  CHECK_FALSE(verify_certificate(Matrix{{2, 0}, {-1, 2}, {0, 7}}, wrong_matrix).valid);

  Certificate low = c;
  low.claimed_chi = 2;
  CHECK_FALSE(verify_certificate(m, low).valid);

  Certificate high = c;
  high.claimed_chi = 4;
  CHECK_FALSE(verify_certificate(m, high).valid);

  Certificate bad_table = c;
  auto& pc = std::get<PeriodicColoring>(bad_table.evidence);
  std::fill(pc.table.begin(), pc.table.end(), 0);
  CHECK_FALSE(verify_certificate(m, bad_table).valid);

  Certificate bad_functional = c;
  std::get<PeriodicColoring>(bad_functional.evidence).functional[0] += 1;
  CHECK_FALSE(verify_certificate(m, bad_functional).valid);

  Matrix loops{{1, 0}, {0, 1}, {0, 2}};
  Certificate l = build_certificate(loops, classify(loops));
  CHECK(verify_certificate(loops, l).valid);
  std::get<LoopWitness>(l.evidence).coefficients[0] += 1;
  CHECK_FALSE(verify_certificate(loops, l).valid);

  CHECK_THROWS_AS(build_certificate(Matrix{{5}, {2}, {7}}, classify(Matrix{{5}, {2}, {7}})), PreconditionError);
}

TEST_CASE("a witness stronger than the claim is rejected") {
  Matrix k5{{1, 0}, {-2, 5}};
  Certificate a = build_certificate(k5, classify(k5));
  Certificate four = a;
  four.claimed_chi = 4;
  CHECK_FALSE(verify_certificate(k5, four).valid);
}

TEST_CASE("certificates for the exceptional families") {
  std::vector<Matrix> family;
  for (Int k = 1; k <= 3; ++k) {
    for (Int s : {1, -1}) {
      family.push_back(Matrix{{1, 0}, {0, 1}, {s * 3 * k, 1 + 3 * k}});
      family.push_back(Matrix{{1, 0}, {0, -1}, {s * 3 * k, -1 + 3 * k}});
    }
    family.push_back(Matrix{{1, 0}, {-1, 2}, {-1 - 3 * k, 2 + 3 * k}});
    family.push_back(Matrix{{1, 0}, {-1, -2}, {-1 + 3 * k, -2 + 3 * k}});
    for (Int a : {1, 2, 4, 5}) family.push_back(Matrix{{1, 0}, {-1, a}, {-1, a + 3 * (k - 1)}});
  }
  for (Int b = -2; b <= 2; ++b) family.push_back(Matrix{{1, 0}, {0, -1}, {3 * b, 2}});
  for (const auto& m : family) {
    Verdict v = classify(m);
    if (v.status == Status::Loops) continue;
    CHECK(v.chi == 4);
    check_certified(m);
    Certificate c = build_certificate(m, v);
    REQUIRE(c.witness);
    CHECK((std::holds_alternative<LanyardWitness>(*c.witness) || std::holds_alternative<C13Embedding>(*c.witness)));
  }
}

TEST_CASE("pullback soundness on 200 random in-scope matrices") {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<int> shape(0, 2);
  int done = 0;
  while (done < 200) {
    Matrix m;
    switch (shape(rng)) {
      case 0: m = testing::random_matrix(rng, 1, 2, 9); break;
      case 1: m = testing::random_matrix(rng, 2, 2, 9); break;
      default: m = testing::random_rank2_3x2(rng, 6); break;
    }
    Verdict v = classify(m);
    if (v.status != Status::Chromatic) continue;
    check_certified(m);
    ++done;
  }
}

TEST_CASE("loop certificates") {
  for (const char* text : {"3 1 4", "1 0; 0 1", "2 0; 1 1", "1 0; 0 1; 0 2", "1 0; 1 1; 1 0"}) {
    Matrix m = parse_matrix(text);
    REQUIRE(classify(m).status == Status::Loops);
    check_certified(m);
  }
}

TEST_CASE("certificate JSON schema") {
  Matrix m{{1, 0}, {0, 1}, {2, 6}};
  nlohmann::json j = to_json(build_certificate(m, classify(m)));
  CHECK(j.at("type") == "Coloring");
  CHECK(j.at("claimed_chi") == 4);
  CHECK(j.at("matrix") == nlohmann::json{{1, 0}, {0, 1}, {2, 6}});
  CHECK(j.at("data").contains("functional"));
  CHECK(j.at("data").contains("modulus"));
  CHECK(j.at("data").contains("table"));
  CHECK(j.at("witness").at("type") == "Lanyard");
  CHECK(j.at("witness").at("data").contains("diamonds"));
  CHECK(j.at("witness").at("data").contains("clasp"));

  nlohmann::json loops = to_json(build_certificate(Matrix{{3, 1, 4}}, classify(Matrix{{3, 1, 4}})));
  CHECK(loops.at("type") == "LoopWitness");
  CHECK(loops.at("claimed_chi").is_null());

  nlohmann::json bip = to_json(build_certificate(Matrix{{4, 0}, {2, 4}}, classify(Matrix{{4, 0}, {2, 4}})));
  CHECK(bip.at("type") == "Bipartition");

  CHECK_THROWS(certificate_from_json(nlohmann::json{{"type", "Nope"}}));
}
