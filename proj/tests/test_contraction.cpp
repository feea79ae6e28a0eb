#include "tpd/contraction.hpp"

#include "tpd/fixtures.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <array>
#include <stdexcept>

using namespace tpd;
using support::all_points;
using support::line_metric;
using support::oracle_alpha;
using support::oracle_repeated_tuples;
using support::oracle_tuple_sum;
using support::R;

namespace {

ContractionReport run(const FiniteMetricSpace& space, const SelfMap& map,
                      int arity, std::vector<int> domain = {}, int jobs = 1,
                      std::uint64_t budget = kDefaultTupleBudget) {
  CoefficientOptions options;
  options.arity = arity;
  options.domain = std::move(domain);
  options.jobs = jobs;
  options.budget = budget;
  return contraction_coefficient(space, map, options);
}

}  // namespace

TEST_CASE("total_pairwise_distance on hand-computed tuples") {
  const FiniteMetricSpace space({}, line_metric({R("0"), R("1"), R("3")}));
  CHECK(total_pairwise_distance(space, std::array{0, 1, 2}) == Rational(6));
  CHECK(total_pairwise_distance(space, std::array{0, 1}) == Rational(1));
  // Repeats are allowed and contribute zero between equal entries.
  CHECK(total_pairwise_distance(space, std::array{0, 0, 1}) == Rational(2));
  CHECK(total_pairwise_distance(space, std::array{2, 2}) == Rational(0));
}

TEST_CASE("total_pairwise_distance rejects bad tuples") {
  const FiniteMetricSpace space({}, line_metric({R("0"), R("1")}));
  CHECK_THROWS_AS(total_pairwise_distance(space, std::array{0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(total_pairwise_distance(space, std::array{0, 2}),
                  std::invalid_argument);
}

TEST_CASE("total_pairwise_distance dominates every pairwise distance") {
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    const RandomSpace instance = random_space(seed, 6, 10);
    const std::array tuple{0, 2, 3, 5};
    const Rational sum = total_pairwise_distance(instance.space, tuple);
    for (std::size_t i = 0; i < tuple.size(); ++i) {
      for (std::size_t j = i + 1; j < tuple.size(); ++j) {
        CHECK(sum >= instance.space.distance(tuple[i], tuple[j]));
      }
    }
  }
}

TEST_CASE("coefficient on the restricted swap space is exactly 1/3") {
  const TwoCycleSpace fixture = build_two_cycle_space(Rational(10), Rational(1));
  const std::vector<int> domain{0, 1, 2, 3};  // labels 0, 1, 3, 4

  // Hand enumeration of all four triples, straight from the definition.
  Rational expected(-1);
  std::vector<int> tuple;
  const std::array<std::array<int, 3>, 4> triples{
      {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}};
  for (const auto& t : triples) {
    std::vector<int> image;
    for (int p : t) image.push_back(fixture.map(p));
    const Rational ratio =
        oracle_tuple_sum(fixture.space, image) /
        oracle_tuple_sum(fixture.space, {t.begin(), t.end()});
    if (ratio > expected) expected = ratio;
  }
  CHECK(expected == R("1/3"));

  const ContractionReport report = run(fixture.space, fixture.map, 3, domain);
  CHECK(report.alpha_hat == R("1/3"));
  CHECK(report.witness == std::vector<int>{0, 1, 2});
  CHECK(report.tuples_examined == 4);
  CHECK(report.mode == EnumerationMode::Exhaustive);
}

TEST_CASE("coefficient agrees with the naive oracle on a seeded corpus") {
  for (std::uint64_t seed = 1; seed <= 40; ++seed) {
    const RandomSpace instance = random_space(seed, 2 + seed % 6, 1 + seed % 11);
    const int n = instance.space.size();
    for (int arity = 2; arity <= std::min(n, 4); ++arity) {
      const auto expected =
          oracle_alpha(instance.space, instance.map,
                       all_points(instance.space), arity);
      for (int jobs : {1, 4}) {
        const ContractionReport report =
            run(instance.space, instance.map, arity, {}, jobs);
        CHECK(report.alpha_hat == expected.ratio);
        CHECK(report.witness == expected.tuple);
        CHECK(report.tuples_examined == expected.tuples);
        CHECK(report.mode == EnumerationMode::Exhaustive);
      }
    }
  }
}

TEST_CASE("restricted domains agree with the oracle and deduplicate") {
  const RandomSpace instance = random_space(99, 7, 10);
  const std::vector<int> domain{0, 2, 3, 5, 6};
  const auto expected =
      oracle_alpha(instance.space, instance.map, domain, 3);
  const ContractionReport clean = run(instance.space, instance.map, 3, domain);
  CHECK(clean.alpha_hat == expected.ratio);
  CHECK(clean.witness == expected.tuple);

  const ContractionReport messy =
      run(instance.space, instance.map, 3, {6, 2, 3, 0, 5, 3, 0});
  CHECK(messy.alpha_hat == clean.alpha_hat);
  CHECK(messy.witness == clean.witness);
  CHECK(messy.tuples_examined == clean.tuples_examined);
}

TEST_CASE("parallel enumeration is bit-identical to sequential") {
  const LadderSpace ladder = build_ladder_space(LadderParams{});
  for (int arity : {3, 4}) {
    const ContractionReport sequential =
        run(ladder.space, ladder.map, arity, ladder.analysis_domain, 1);
    for (int jobs : {2, 4, 7}) {
      const ContractionReport parallel =
          run(ladder.space, ladder.map, arity, ladder.analysis_domain, jobs);
      CHECK(parallel.alpha_hat == sequential.alpha_hat);
      CHECK(parallel.witness == sequential.witness);
      CHECK(parallel.tuples_examined == sequential.tuples_examined);
      CHECK(parallel.mode == sequential.mode);
    }
  }
}

TEST_CASE("sampled mode reports a deterministic lower bound") {
  const RandomSpace instance = random_space(7, 30, 10);
  const ContractionReport exact = run(instance.space, instance.map, 4);
  REQUIRE(exact.mode == EnumerationMode::Exhaustive);  // C(30,4) = 27405

  const ContractionReport sampled =
      run(instance.space, instance.map, 4, {}, 1, /*budget=*/1000);
  CHECK(sampled.mode == EnumerationMode::Sampled);
  CHECK(sampled.tuples_examined == 1000);
  CHECK(sampled.alpha_hat <= exact.alpha_hat);
  CHECK(sampled.alpha_hat >= 0);
  CHECK(sampled.witness.size() == 4);

  const ContractionReport parallel =
      run(instance.space, instance.map, 4, {}, 4, /*budget=*/1000);
  CHECK(parallel.alpha_hat == sampled.alpha_hat);
  CHECK(parallel.witness == sampled.witness);

  // The sampled witness really attains the reported bound.
  std::vector<int> image;
  for (int p : sampled.witness) image.push_back(instance.map(p));
  CHECK(oracle_tuple_sum(instance.space, image) /
            oracle_tuple_sum(instance.space, sampled.witness) ==
        sampled.alpha_hat);
}

TEST_CASE("coefficient rejects bad arguments") {
  const RandomSpace instance = random_space(3, 5, 5);
  CHECK_THROWS_AS(run(instance.space, instance.map, 1), std::invalid_argument);
  CHECK_THROWS_AS(run(instance.space, instance.map, 6), std::invalid_argument);
  CHECK_THROWS_AS(run(instance.space, instance.map, 3, {0, 9}),
                  std::invalid_argument);
  CHECK_THROWS_AS(run(instance.space, instance.map, 4, {0, 1, 2}),
                  std::invalid_argument);
  CHECK_THROWS_AS(run(instance.space, instance.map, 2, {}, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(run(instance.space, instance.map, 2, {}, 1, 0),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      contraction_coefficient(instance.space, SelfMap({0, 1}), 2),
      std::invalid_argument);
}

TEST_CASE("certify accepts the coefficient and rejects anything below it") {
  const TwoCycleSpace fixture = build_two_cycle_space(Rational(10), Rational(1));
  const std::vector<int> domain{0, 1, 2, 3};

  const CertifyResult at = certify(fixture.space, fixture.map, 3, R("1/2"), domain);
  CHECK(at.certified);
  CHECK(at.counterexample.empty());

  const CertifyResult below =
      certify(fixture.space, fixture.map, 3, R("1/4"), domain);
  CHECK_FALSE(below.certified);
  CHECK(below.counterexample == std::vector<int>{0, 1, 2});

  CHECK_THROWS_AS(certify(fixture.space, fixture.map, 3, R("-1/2"), domain),
                  std::invalid_argument);
}

TEST_CASE("certify is consistent with the exact coefficient on a corpus") {
  for (std::uint64_t seed = 50; seed < 70; ++seed) {
    const RandomSpace instance = random_space(seed, 6, 8);
    const ContractionReport report = run(instance.space, instance.map, 3);
    CHECK(certify(instance.space, instance.map, 3, report.alpha_hat).certified);
    if (report.alpha_hat > 0) {
      const CertifyResult under = certify(
          instance.space, instance.map, 3,
          report.alpha_hat * R("999999/1000000"));
      CHECK_FALSE(under.certified);
      CHECK(under.counterexample.size() == 3);
    }
  }
}

TEST_CASE("find_ratio_at_least locates the first heavy tuple") {
  const LadderSpace ladder = build_ladder_space(LadderParams{});
  const auto at_one = find_ratio_at_least(ladder.space, ladder.map, 3,
                                          Rational(1), ladder.analysis_domain);
  REQUIRE(at_one.has_value());
  CHECK(*at_one == std::vector<int>{1, 2, 3});

  const auto above = find_ratio_at_least(ladder.space, ladder.map, 3,
                                         R("1001/1000"), ladder.analysis_domain);
  CHECK_FALSE(above.has_value());
}

TEST_CASE("multiset coefficient with two-point supports is the pair maximum") {
  // With k = 2 the multiplicities cancel in the ratio, so every pattern
  // reduces to a single pair.
  const TwoCycleSpace fixture = build_two_cycle_space(Rational(10), Rational(1));
  const ContractionReport pairs = run(fixture.space, fixture.map, 2);
  for (int tuple_size : {3, 4, 5}) {
    CHECK(multiset_coefficient(fixture.space, fixture.map, tuple_size, 2) ==
          pairs.alpha_hat);
  }
}

TEST_CASE("multiset coefficient agrees with full repeated-tuple enumeration") {
  for (std::uint64_t seed = 11; seed <= 16; ++seed) {
    const RandomSpace instance = random_space(seed, 4 + seed % 2, 9);
    for (int tuple_size = 3; tuple_size <= 5; ++tuple_size) {
      for (int k = 2; k <= std::min(tuple_size - 1, instance.space.size());
           ++k) {
        CHECK(multiset_coefficient(instance.space, instance.map, tuple_size, k) ==
              oracle_repeated_tuples(instance.space, instance.map, tuple_size, k));
      }
    }
  }
}

TEST_CASE("multiset coefficient dominates the distinct-tuple coefficient") {
  for (std::uint64_t seed = 21; seed <= 40; ++seed) {
    const RandomSpace instance = random_space(seed, 3 + seed % 4, 7);
    const int n = instance.space.size();
    for (int tuple_size = 3; tuple_size <= 5; ++tuple_size) {
      for (int k = 2; k <= std::min(tuple_size - 1, n); ++k) {
        const ContractionReport distinct = run(instance.space, instance.map, k);
        CHECK(multiset_coefficient(instance.space, instance.map, tuple_size, k) >=
              distinct.alpha_hat);
      }
    }
  }
}

TEST_CASE("multiset coefficient validates its arguments") {
  const RandomSpace instance = random_space(5, 4, 5);
  CHECK_THROWS_AS(multiset_coefficient(instance.space, instance.map, 2, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(multiset_coefficient(instance.space, instance.map, 4, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(multiset_coefficient(instance.space, instance.map, 4, 4),
                  std::invalid_argument);
  CHECK_THROWS_AS(multiset_coefficient(instance.space, instance.map, 6, 5),
                  std::invalid_argument);
}

TEST_CASE("pointwise check lists exactly the failing partners") {
  const TwoCycleSpace fixture = build_two_cycle_space(Rational(10), Rational(1));
  // At the grid point 3 (index 2) the image pair (1, 0) must cover the
  // swap distance: fine for alpha >= 1/2, failing below.
  CHECK(pointwise_lipschitz_check(fixture.space, fixture.map, 2, R("1/2"))
            .empty());
  const auto violations =
      pointwise_lipschitz_check(fixture.space, fixture.map, 2, R("1/4"));
  REQUIRE(violations.size() == 1);
  CHECK(violations[0].other == 1);
  CHECK(violations[0].image_distance == Rational(1));
  CHECK(violations[0].allowed == R("1/2"));

  CHECK_THROWS_AS(
      pointwise_lipschitz_check(fixture.space, fixture.map, 99, R("1/2")),
      std::invalid_argument);
  CHECK_THROWS_AS(
      pointwise_lipschitz_check(fixture.space, fixture.map, 0, R("-1")),
      std::invalid_argument);
}

TEST_CASE("pointwise check everywhere is equivalent to the pair coefficient") {
  for (std::uint64_t seed = 41; seed <= 55; ++seed) {
    const RandomSpace instance = random_space(seed, 5, 9);
    const ContractionReport pairs = run(instance.space, instance.map, 2);

    bool all_clear = true;
    for (int x = 0; x < instance.space.size(); ++x) {
      all_clear &= pointwise_lipschitz_check(instance.space, instance.map, x,
                                             pairs.alpha_hat)
                       .empty();
    }
    CHECK(all_clear);

    if (pairs.alpha_hat > 0) {
      bool any_violation = false;
      const Rational under = pairs.alpha_hat * R("9/10");
      for (int x = 0; x < instance.space.size(); ++x) {
        any_violation |= !pointwise_lipschitz_check(instance.space,
                                                    instance.map, x, under)
                              .empty();
      }
      CHECK(any_violation);
    }
  }
}
