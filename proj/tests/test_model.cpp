#include <cmath>

#include "doctest.h"
#include "ssn/error.hpp"
#include "ssn/model.hpp"
#include "ssn/rng.hpp"
#include "ssn/stats.hpp"

using namespace ssn;

namespace {
SimilarityIFS make(std::vector<std::pair<const char*, const char*>> maps, std::vector<mpq_class> w) {
  std::vector<SimilarityMap> m;
  for (auto [s, t] : maps) m.emplace_back(parse_exact(s), parse_exact(t));
  return SimilarityIFS(std::move(m), std::move(w));
}
const mpq_class half(1, 2);
const mpq_class third(1, 3);
SimilarityIFS cantor() { return make({{"1/3", "0"}, {"1/3", "2/3"}}, {half, half}); }
SimilarityIFS two_three() { return make({{"1/2", "0"}, {"1/3", "2/3"}}, {half, half}); }
SimilarityIFS three_maps() { return make({{"1/3", "0"}, {"1/3", "1/3"}, {"1/3", "2/3"}}, {third, third, third}); }
}  // namespace

TEST_CASE("build_model on the middle-thirds system") {
  Model m = build_model(cantor());
  REQUIRE(m.size() == 1);
  CHECK(m.q()[0] == 1);
  CHECK(m.index(0).r == parse_exact("1/3"));
  CHECK(m.index(0).t[0] == FieldElement(0));
  CHECK(m.index(0).t[1] == parse_exact("2/3"));
  CHECK(m.index(0).p == std::vector<mpq_class>{half, half});
  auto ssc = verify_ssc(m);
  CHECK_FALSE(ssc.vacuous);
  CHECK(*ssc.min_gap == parse_exact("1/3"));
}

TEST_CASE("build_model on three maps") {
  Model m = build_model(three_maps());
  REQUIRE(m.size() == 2);
  CHECK(m.q() == std::vector<mpq_class>{mpq_class(2, 3), third});
  CHECK(m.index(0).t[0] == FieldElement(0));
  CHECK(m.index(0).t[1] == parse_exact("2/3"));
  CHECK(m.index(0).p == std::vector<mpq_class>{half, half});
  REQUIRE(m.index(1).size() == 1);
  CHECK(m.index(1).t[0] == parse_exact("1/3"));
  CHECK(word_string(m.pair_i) == "(1)");
  CHECK(word_string(m.pair_j) == "(3)");
}

TEST_CASE("build_model on {x/2, x/3 + 2/3}") {
  Model m = build_model(two_three());
  CHECK(m.m == 2);
  REQUIRE(m.size() == 3);
  CHECK(m.index(0).r == parse_exact("1/6"));
  CHECK(m.q()[0] == half);
  CHECK(*verify_ssc(m).min_gap == parse_exact("1/6"));
  CHECK(m.hull().lo == FieldElement(0));
  CHECK(m.hull().hi == FieldElement(1));
}

TEST_CASE("weight bookkeeping reproduces the product weights") {
  for (auto ifs : {cantor(), two_three(), three_maps(), make({{"1/4", "0"}, {"1/4", "3/4"}, {"1/2", "1/4"}}, {mpq_class(1, 5), mpq_class(3, 10), half})}) {
    Model m = build_model(ifs);
    auto it = iterate_ifs(ifs, m.m);
    std::size_t a = 0, b = 0;
    for (std::size_t k = 0; k < it.size(); ++k) {
      if (it.words()[k] == m.pair_i) a = k;
      if (it.words()[k] == m.pair_j) b = k;
    }
    CHECK(m.q()[0] * m.index(0).p[0] == it.weights()[a]);
    CHECK(m.q()[0] * m.index(0).p[1] == it.weights()[b]);
    mpq_class total = 0;
    for (const auto& v : m.q()) total += v;
    CHECK(total == 1);
  }
}

TEST_CASE("vacuous separation and violations") {
  IndexIFS a;
  a.r = parse_exact("1/2");
  a.t = {FieldElement(0)};
  a.p = {mpq_class(1)};
  IndexIFS b = a;
  b.t = {parse_exact("1/2")};
  Model single({a, b}, {half, half});
  CHECK(verify_ssc(single).vacuous);
  CHECK(verify_ssc(single).to_string() == "vacuously separated");

  IndexIFS c;
  c.r = parse_exact("1/2");
  c.t = {FieldElement(0), parse_exact("1/2")};
  c.p = {half, half};
  CHECK_THROWS_AS(verify_ssc(Model({c}, {mpq_class(1)})), Error);
}

TEST_CASE("sample_eta on degenerate and Cantor omega") {
  IndexIFS a;
  a.r = parse_exact("1/2");
  a.t = {FieldElement(0)};
  a.p = {mpq_class(1)};
  IndexIFS b = a;
  b.t = {parse_exact("1/2")};
  Model single({a, b}, {half, half});
  Omega w(single, 5);
  auto pts = sample_eta(single, w, 50, 40, 9);
  for (const auto& p : pts) CHECK(std::abs(p.value - pts[0].value) < 1e-12);

  Model m = build_model(cantor());
  auto cp = sample_eta(m, Omega(m, 1), 200, 30, 2);
  for (const auto& p : cp) {
    CHECK(p.value >= -p.error);
    CHECK(p.value <= 1 + p.error);
    // ternary digits of the value are 0 or 2 up to the tail
    double x = p.value;
    for (int k = 0; k < 12; ++k) {
      x *= 3;
      const int d = static_cast<int>(std::floor(x));
      CHECK(d != 1);
      x -= d;
    }
  }
}

TEST_CASE("dynamical self-similarity at shifted omega") {
  Model m = build_model(two_three());
  const std::size_t n = 100000;
  const int depth = m.default_depth();
  Omega omega(m, 42);
  for (std::size_t k = 0; k <= 10; ++k) {
    Omega w = omega.shifted(k);
    auto direct = sample_eta_values(m, w, n, depth, 100 + k);
    auto tail = sample_eta_values(m, w.shifted(1), n, depth, 200 + k);
    const IndexIFS& f = m.index(static_cast<std::size_t>(w[0]));
    Stream st(300 + k);
    std::vector<double> mixed(n);
    for (std::size_t i = 0; i < n; ++i) {
      const int u = f.size() == 1 ? 0 : draw_digit(f.pcum, st.uniform());
      mixed[i] = f.rd * tail[i] + f.td[static_cast<std::size_t>(u)];
    }
    // sub-ulp clusters round differently along the two evaluation paths
    for (auto* v : {&direct, &mixed})
      for (double& x : *v) x = std::round(std::ldexp(x, 40));
    CHECK(ks_distance(direct, mixed) < 3 / std::sqrt(double(n)));
  }
}

TEST_CASE("disintegration reproduces mu") {
  for (auto ifs : {cantor(), three_maps(), two_three()}) {
    Model m = build_model(ifs);
    auto a = sample_measure(ifs, 100000, 40, 1).points;
    auto b = sample_disintegration(m, 100000, m.default_depth(), 2);
    CHECK(ks_distance(a, b) < 0.01);
  }
}

TEST_CASE("atom mass bound") {
  Model m = build_model(cantor());
  CHECK(atom_mass_bound(m, {0, 0, 0, 0, 0}) == mpq_class(1, 32));
  Model t = build_model(three_maps());
  CHECK(atom_mass_bound(t, {1, 1, 1}) == 1);
  Model w = build_model(make({{"1/3", "0"}, {"1/3", "2/3"}}, {third, mpq_class(2, 3)}));
  CHECK(atom_mass_bound(w, {0, 0, 0}) == mpq_class(8, 27));
  Stream st(77);
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<int> pre;
    mpq_class last = 1;
    for (int k = 0; k < 20; ++k) {
      pre.push_back(static_cast<int>(st.below(2)));
      mpq_class now = atom_mass_bound(t, pre);
      CHECK(now <= last);
      last = now;
    }
  }
}

TEST_CASE("sampling is deterministic") {
  Model m = build_model(two_three());
  CHECK(sample_disintegration(m, 1000, 30, 5) == sample_disintegration(m, 1000, 30, 5));
  auto ex = sample_disintegration_exact(m, 10, 30, 5);
  auto db = sample_disintegration(m, 10, 30, 5);
  for (std::size_t i = 0; i < 10; ++i) CHECK(std::abs(ex[i].to_double() - db[i]) < 1e-14);
}
