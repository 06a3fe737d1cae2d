#include "doctest.h"
#include "oracles.hpp"
#include "ssn/error.hpp"
#include "ssn/ifs.hpp"
#include "ssn/stats.hpp"

using namespace ssn;

namespace {
SimilarityIFS make(std::vector<std::pair<const char*, const char*>> maps, std::vector<mpq_class> w) {
  std::vector<SimilarityMap> m;
  for (auto [s, t] : maps) m.emplace_back(parse_exact(s), parse_exact(t));
  return SimilarityIFS(std::move(m), std::move(w));
}
const mpq_class half(1, 2);
SimilarityIFS cantor() { return make({{"1/3", "0"}, {"1/3", "2/3"}}, {half, half}); }
SimilarityIFS two_three() { return make({{"1/2", "0"}, {"1/3", "2/3"}}, {half, half}); }
}  // namespace

TEST_CASE("attractor hulls") {
  auto h = attractor_hull(cantor());
  CHECK(h.lo == FieldElement(0));
  CHECK(h.hi == FieldElement(1));
  h = attractor_hull(make({{"1/2", "0"}, {"1/2", "1/2"}}, {half, half}));
  CHECK(h.lo == FieldElement(0));
  CHECK(h.hi == FieldElement(1));
  h = attractor_hull(make({{"-1/2", "0"}, {"-1/2", "1"}}, {half, half}));
  CHECK(h.lo == parse_exact("-2/3"));
  CHECK(h.hi == parse_exact("4/3"));
  h = attractor_hull(make({{"-1/3", "1/3"}, {"-1/3", "1"}}, {half, half}));
  CHECK(h.lo == FieldElement(0));
  CHECK(h.hi == FieldElement(1));
  h = attractor_hull(make({{"1/phi^2", "0"}, {"1/phi^2", "1 - 1/phi^2"}}, {half, half}));
  CHECK(h.hi == FieldElement(1));
}

TEST_CASE("hull is invariant under iteration") {
  for (auto ifs : {cantor(), two_three(), make({{"-1/2", "0"}, {"-1/2", "1"}, {"1/5", "1/7"}}, {half, mpq_class(1, 4), mpq_class(1, 4)})}) {
    const Interval h = attractor_hull(ifs);
    for (int m = 1; m <= 3; ++m) {
      const Interval hm = attractor_hull(iterate_ifs(ifs, m));
      CHECK(hm.lo == h.lo);
      CHECK(hm.hi == h.hi);
    }
  }
}

TEST_CASE("iteration") {
  auto it = iterate_ifs(make({{"1/2", "0"}, {"1/2", "1/2"}}, {half, half}), 2);
  REQUIRE(it.size() == 4);
  const char* ts[] = {"0", "1/4", "1/2", "3/4"};
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(it.maps()[k].s == parse_exact("1/4"));
    CHECK(it.maps()[k].t == parse_exact(ts[k]));
  }
  auto w = iterate_ifs(make({{"1/2", "0"}, {"1/2", "1/2"}}, {mpq_class(1, 3), mpq_class(2, 3)}), 2).weights();
  CHECK(w == std::vector<mpq_class>{mpq_class(1, 9), mpq_class(2, 9), mpq_class(2, 9), mpq_class(4, 9)});
  auto t = iterate_ifs(two_three(), 2);
  CHECK(word_string(t.words()[1]) == "(1,2)");
  CHECK(t.maps()[1].s == parse_exact("1/6"));
  CHECK(t.maps()[1].t == parse_exact("1/3"));
  CHECK(word_string(t.words()[2]) == "(2,1)");
  CHECK(t.maps()[2].t == parse_exact("2/3"));
  CHECK_THROWS_AS(iterate_ifs(cantor(), 20, 1024), Error);
}

TEST_CASE("separated pairs") {
  auto p = find_separated_pair(cantor());
  CHECK(p.m == 1);
  CHECK(word_string(p.i) == "(1)");
  CHECK(word_string(p.j) == "(2)");

  p = find_separated_pair(two_three());
  CHECK(p.m == 2);
  CHECK(word_string(p.i) == "(1,2)");
  CHECK(word_string(p.j) == "(2,1)");
  auto it = iterate_ifs(two_three(), 2);
  auto hull = attractor_hull(two_three());
  auto hi = image(it.maps()[p.index_i], hull);
  auto hj = image(it.maps()[p.index_j], hull);
  CHECK(hi.lo == parse_exact("1/3"));
  CHECK(hi.hi == parse_exact("1/2"));
  CHECK(hj.lo == parse_exact("2/3"));
  CHECK(hj.hi == parse_exact("5/6"));

  // touching hulls [0,1/2] and [1/2,1] are not disjoint
  p = find_separated_pair(make({{"1/2", "0"}, {"1/2", "1/2"}}, {half, half}));
  CHECK(p.m == 2);
  CHECK(word_string(p.i) == "(1,1)");
  CHECK(word_string(p.j) == "(2,1)");

  CHECK_THROWS_AS(find_separated_pair(make({{"1/2", "1/2"}}, {mpq_class(1)})), Error);
  CHECK_THROWS_AS(find_separated_pair(make({{"1/2", "0"}, {"1/2", "1/2"}, {"3/4", "1/4"}}, {half, mpq_class(1, 4), mpq_class(1, 4)}), 1), Error);
}

TEST_CASE("separated pair post-conditions hold on assorted systems") {
  std::vector<SimilarityIFS> systems = {
      cantor(), two_three(),
      make({{"1/3", "0"}, {"1/3", "1/3"}, {"1/3", "2/3"}}, {mpq_class(1, 3), mpq_class(1, 3), mpq_class(1, 3)}),
      make({{"-1/3", "1/3"}, {"-1/3", "1"}}, {half, half}),
      make({{"1/phi", "0"}, {"1/phi^2", "1 - 1/phi^2"}}, {half, half}),
      make({{"2/3", "0"}, {"2/3", "1/3"}}, {half, half}),
  };
  for (const auto& ifs : systems) {
    auto p = find_separated_pair(ifs);
    auto it = iterate_ifs(ifs, p.m);
    auto hull = attractor_hull(ifs);
    CHECK(it.maps()[p.index_i].s == it.maps()[p.index_j].s);
    CHECK(image(it.maps()[p.index_i], hull).disjoint_from(image(it.maps()[p.index_j], hull)));
  }
}

TEST_CASE("sampling") {
  auto single = sample_measure(make({{"1/2", "1/2"}}, {mpq_class(1)}), 100, 30, 1);
  for (double x : single.points) CHECK(std::abs(x - 1) <= std::pow(0.5, 30) + 1e-15);

  auto c = sample_measure(cantor(), 100000, 40, 7);
  CHECK(mean(c.points) == doctest::Approx(0.5).epsilon(0.01));
  CHECK(std::abs(mean(c.points) - 0.5) < 0.005);
  auto again = sample_measure(cantor(), 100000, 40, 7);
  CHECK(c.points == again.points);

  auto s = sample_measure(two_three(), 100000, 40, 11);
  oracle::SelfSimilarCdf cdf({{0.5, 0}, {1.0 / 3, 2.0 / 3}}, {0.5, 0.5}, 0, 1);
  CHECK(ks_to_cdf(s.points, std::cref(cdf)) < 0.01);
}

TEST_CASE("iterated system samples the same measure") {
  for (auto ifs : {cantor(), two_three()}) {
    auto a = sample_measure(ifs, 100000, 40, 3);
    auto b = sample_measure(iterate_ifs(ifs, 3), 100000, 14, 4);
    CHECK(ks_distance(a.points, b.points) < 3 / std::sqrt(1e5));
  }
}

TEST_CASE("exact sampling follows the same words") {
  auto d = sample_measure(two_three(), 20, 30, 5);
  auto e = sample_measure_exact(two_three(), 20, 30, 5);
  for (std::size_t i = 0; i < 20; ++i) CHECK(std::abs(e[i].to_double() - d.points[i]) < 1e-14);
}
