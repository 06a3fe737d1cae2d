#include "doctest.h"
#include "ssn/error.hpp"
#include "ssn/relation.hpp"

using namespace ssn;

namespace {
Relation rel(const char* a, const char* b, long bound = kDefaultSearchBound) {
  return multiplicative_relation(parse_exact(a), parse_exact(b), bound);
}
}  // namespace

TEST_CASE("rational pairs") {
  auto r = rel("1/3", "3");
  CHECK(r.dependent());
  CHECK(r.p == -1);
  CHECK(r.q == 1);
  r = rel("1/9", "3");
  CHECK(to_string(r) == "Dependent(-2, 1)");
  CHECK(to_string(rel("1/2", "3")) == "IndependentCertified");
  CHECK(to_string(rel("8", "4")) == "Dependent(3, 2)");  // 8^2 = 4^3
  CHECK(to_string(rel("-1/4", "8")) == "Dependent(-2, 3)");
  CHECK(to_string(rel("12", "18")) == "IndependentCertified");
  CHECK(to_string(rel("1/6", "36")) == "Dependent(-1, 2)");
}

TEST_CASE("rational against irrational") {
  CHECK(to_string(rel("1/2", "phi")) == "IndependentCertified");
  CHECK(to_string(rel("1/3", "phi")) == "IndependentCertified");
  CHECK(to_string(rel("2", "sqrt2")) == "Dependent(2, 1)");
  CHECK(to_string(rel("sqrt2", "2")) == "Dependent(1, 2)");
  CHECK(to_string(rel("1/4", "sqrt2")) == "Dependent(-4, 1)");
  CHECK(to_string(rel("3", "sqrt2")) == "IndependentCertified");
}

TEST_CASE("algebraic pairs") {
  CHECK(to_string(rel("1/phi^2", "phi")) == "Dependent(-2, 1)");
  CHECK(to_string(rel("phi^3", "phi^2")) == "Dependent(3, 2)");
  CHECK(to_string(rel("1/phi^2", "silver")) == "IndependentUpTo(64)");
  CHECK(to_string(rel("1/phi^2", "silver", 8)) == "IndependentUpTo(8)");
  CHECK(to_string(rel("phi", "sqrt2 + 1")) == "IndependentUpTo(64)");
  CHECK(to_string(rel("sqrt5 + 1", "phi")) == "IndependentCertified");  // norm -4 vs unit
  CHECK(to_string(rel("sqrt2", "sqrt2 * 2")) == "Dependent(1, 3)");
  // (3 + 2 sqrt2) = (1 + sqrt2)^2, across different generators
  CHECK(to_string(rel("silver", "3 + 2*sqrt2")) == "Dependent(1, 2)");
}

TEST_CASE("relation symmetry") {
  const char* xs[] = {"1/3", "9", "1/2", "phi", "1/phi^2", "sqrt2", "4", "silver", "3 + 2*sqrt2", "1/8"};
  for (const char* a : xs) {
    for (const char* b : xs) {
      if (std::string(a) == b) continue;
      const Relation ab = rel(a, b, 16);
      const Relation ba = rel(b, a, 16);
      CHECK(ab.kind == ba.kind);
      if (ab.dependent()) {
        long p = ab.q, q = ab.p;
        if (q < 0) { p = -p; q = -q; }
        CHECK(ba.p == p);
        CHECK(ba.q == q);
      }
    }
  }
}

TEST_CASE("degenerate input") {
  CHECK_THROWS_AS(rel("1", "2"), Error);
  CHECK_THROWS_AS(rel("-1", "2"), Error);
  CHECK_THROWS_AS(rel("0", "2"), Error);
}
