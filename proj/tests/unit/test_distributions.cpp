#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "support.hpp"
#include "wcs/distributions.hpp"
#include "wcs/error.hpp"

using namespace wcs;

namespace {

StepStats stats_of(const std::vector<double>& probs, TokenId target, double t = 1.0) {
  const TemperatureDistribution d{t, probs};
  return compute_step_stats(std::span(&d, 1), target);
}

const std::vector<double> kFour{0.5, 0.3, 0.15, 0.05};

}  // namespace

TEST_CASE("softmax matches high-precision reference values") {
  const std::vector<double> logits{2.0, 1.0, 0.0};
  const auto t1 = softmax_at_temperature(logits, 1.0);
  CHECK(t1[0] == doctest::Approx(0.66524095577482189).epsilon(1e-14));
  CHECK(t1[1] == doctest::Approx(0.24472847105479765).epsilon(1e-14));
  CHECK(t1[2] == doctest::Approx(0.090030573170380458).epsilon(1e-14));
  const auto t05 = softmax_at_temperature(logits, 0.5);
  CHECK(t05[0] == doctest::Approx(0.86681333219733487).epsilon(1e-14));
  CHECK(t05[1] == doctest::Approx(0.11731042782619836).epsilon(1e-14));
  CHECK(t05[2] == doctest::Approx(0.015876239976466766).epsilon(1e-14));
}

TEST_CASE("softmax of equal logits is uniform and survives huge logits") {
  for (double t : {0.3, 1.0, 7.0}) {
    for (double p : softmax_at_temperature(std::vector<double>{0, 0, 0}, t)) {
      CHECK(p == doctest::Approx(1.0 / 3.0));
    }
  }
  const auto big = softmax_at_temperature(std::vector<double>{1000.0, 999.0}, 1.0);
  CHECK(big[0] + big[1] == doctest::Approx(1.0));
  CHECK(big[0] > big[1]);
}

TEST_CASE("softmax rejects non-positive temperature") {
  const std::vector<double> logits{1.0, 2.0};
  for (double t : {0.0, -1.0}) {
    try {
      softmax_at_temperature(logits, t);
      FAIL("expected domain error");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::domain);
    }
  }
}

TEST_CASE("step stats on the four-token distribution") {
  const auto s = stats_of(kFour, 2);
  CHECK(s.rank == 3);
  CHECK(s.at(1.0).p_target == 0.15);
  CHECK(s.at(1.0).p_max == 0.5);
  CHECK(s.at(1.0).cum_excl == doctest::Approx(0.8).epsilon(1e-15));

  const auto top = stats_of(kFour, 0);
  CHECK(top.rank == 1);
  CHECK(top.at(1.0).cum_excl == 0.0);
  CHECK(top.at(1.0).p_target == top.at(1.0).p_max);
}

TEST_CASE("ties break by token id") {
  const std::vector<double> uniform{0.25, 0.25, 0.25, 0.25};
  for (TokenId t = 0; t < 4; ++t) CHECK(stats_of(uniform, t).rank == t + 1);
  CHECK(stats_of(uniform, 3).at(1.0).cum_excl == doctest::Approx(0.75));
}

TEST_CASE("order is taken at the lowest temperature") {
  const std::vector<double> logits{0.0, 3.0, 1.0};
  const auto cold = softmax_at_temperature(logits, 0.7);
  const auto hot = softmax_at_temperature(logits, 1.5);
  const TemperatureDistribution d[] = {{1.5, hot}, {0.7, cold}};
  const auto s = compute_step_stats(d, 2);
  CHECK(s.rank == 2);
  REQUIRE(s.per_temperature.size() == 2);
  CHECK(s.per_temperature[0].first == 0.7);
  CHECK(s.at(1.5).cum_excl == hot[1]);
  CHECK(s.at(0.7).p_max == cold[1]);
}

TEST_CASE("compute_step_stats input errors") {
  const std::vector<double> a{0.5, 0.5};
  const std::vector<double> b{0.2, 0.3, 0.5};
  const std::vector<double> bad{0.5, 0.4};
  auto kind_of = [](auto&& fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::oracle;
  };
  const TemperatureDistribution shape[] = {{0.7, a}, {1.0, b}};
  CHECK(kind_of([&] { compute_step_stats(shape, 0); }) == ErrorKind::validation);
  CHECK(kind_of([&] { stats_of(bad, 0); }) == ErrorKind::domain);
  CHECK(kind_of([&] { stats_of(a, 2); }) == ErrorKind::vocabulary);
  CHECK(kind_of([&] { stats_of(a, -1); }) == ErrorKind::vocabulary);
}

TEST_CASE("survival predicates on the four-token distribution") {
  const auto r3 = stats_of(kFour, 2);
  const auto r4 = stats_of(kFour, 3);
  CHECK_FALSE(survives_top_k(r3, 2));
  CHECK(survives_top_k(r3, 3));
  CHECK(survives_top_k(r4, 4));
  CHECK(survives_top_p(r3, 0.9, 1.0));
  CHECK_FALSE(survives_top_p(r4, 0.9, 1.0));
  CHECK(survives_top_p(r4, 1.0, 1.0));
  CHECK(survives_min_p(r4, 0.1, 1.0));
  CHECK_FALSE(survives_min_p(r4, 0.2, 1.0));
  CHECK(survives_min_p(r4, 0.0, 1.0));

  FilterConfig combined;
  combined.temperature = 1.0;
  combined.k = 20;
  combined.p = 0.8;
  CHECK_FALSE(survives(r3, combined));
  combined.p = 0.81;
  CHECK(survives(r3, combined));

  FilterConfig open;
  open.temperature = 1.0;
  open.k = 4;
  open.p = 1.0;
  open.m = 0.0;
  for (TokenId t = 0; t < 4; ++t) CHECK(survives(stats_of(kFour, t), open));
  CHECK(survives(stats_of(kFour, 0), FilterConfig::top_k(1, 1.0)));
}

TEST_CASE("missing temperature is a lookup error") {
  const auto s = stats_of(kFour, 1, 0.7);
  CHECK_THROWS_AS(survives_top_p(s, 0.9, 1.0), Error);
  CHECK_THROWS_AS(survives_min_p(s, 0.1, 1.5), Error);
  CHECK(s.find(0.7 + 1e-12) != nullptr);
  CHECK(s.find(0.71) == nullptr);
}

TEST_CASE("filter config validation and labels") {
  CHECK_THROWS_AS(FilterConfig{}.validate(), Error);
  CHECK_THROWS_AS(FilterConfig::top_k(0, 1.0).validate(), Error);
  CHECK_THROWS_AS(FilterConfig::top_p(0.0, 1.0).validate(), Error);
  CHECK_THROWS_AS(FilterConfig::top_p(1.01, 1.0).validate(), Error);
  CHECK_THROWS_AS(FilterConfig::min_p(1.0, 1.0).validate(), Error);
  CHECK_THROWS_AS(FilterConfig::top_k(5, 0.0).validate(), Error);
  CHECK_NOTHROW(FilterConfig::min_p(0.0, 1.0).validate());
  CHECK_NOTHROW(FilterConfig::top_p(1.0, 1.0).validate());

  FilterConfig c = FilterConfig::top_p(0.8, 0.7);
  c.k = 20;
  CHECK(c.sampler() == "top_p+top_k");
  CHECK(c.param() == "p=0.8;k=20");
  CHECK(FilterConfig::top_k(7, 1.0).param() == "7");
  CHECK(FilterConfig::min_p(0.05, 1.0).sampler() == "min_p");
  CHECK(format_temperature(1.0) == "1.0");
  CHECK(format_temperature(0.7) == "0.7");
  CHECK(format_temperature(1.5) == "1.5");
  CHECK(format_temperature(2.0) == "2.0");
}

TEST_CASE("property: predicate monotonicity and prefix structure") {
  Rng rng(7);
  const double temps[] = {0.7, 1.0, 1.5};
  for (int trial = 0; trial < 2000; ++trial) {
    const auto logits = test::random_logits(rng);
    std::vector<std::vector<double>> probs;
    for (double t : temps) probs.push_back(softmax_at_temperature(logits, t));
    const TemperatureDistribution d[] = {{0.7, probs[0]}, {1.0, probs[1]}, {1.5, probs[2]}};
    std::vector<StepStats> all;
    for (std::size_t id = 0; id < logits.size(); ++id) {
      all.push_back(compute_step_stats(d, static_cast<TokenId>(id)));
    }
    // Ranks form a permutation of 1..V.
    std::vector<std::int64_t> ranks;
    for (const auto& s : all) ranks.push_back(s.rank);
    std::sort(ranks.begin(), ranks.end());
    for (std::size_t i = 0; i < ranks.size(); ++i) REQUIRE(ranks[i] == static_cast<std::int64_t>(i + 1));

    const auto& s = all[rng.below(all.size())];
    for (std::int64_t k = 1; k < static_cast<std::int64_t>(logits.size()); ++k) {
      REQUIRE((!survives_top_k(s, k) || survives_top_k(s, k + 1)));
    }
    for (double t : temps) {
      for (int i = 1; i < 100; ++i) {
        const double p = i / 100.0, p2 = (i + 1) / 100.0;
        REQUIRE((!survives_top_p(s, p, t) || survives_top_p(s, p2, t)));
        const double m = (i - 1) / 100.0, m2 = i / 100.0;
        REQUIRE((!survives_min_p(s, m2, t) || survives_min_p(s, m, t)));
      }
      // Prefix property: survivors of Top-p are exactly the first r ranks.
      const double p = test::uniform01(rng) * 0.99 + 0.01;
      std::int64_t max_survivor = 0;
      std::size_t n_survivors = 0;
      for (const auto& o : all) {
        if (survives_top_p(o, p, t)) {
          ++n_survivors;
          max_survivor = std::max(max_survivor, o.rank);
        }
      }
      REQUIRE(n_survivors >= 1);
      REQUIRE(max_survivor == static_cast<std::int64_t>(n_survivors));
    }
  }
}
