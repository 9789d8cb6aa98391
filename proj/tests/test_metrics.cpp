#include <cmath>

#include <doctest.h>

#include "hyperdart/error.hpp"
#include "hyperdart/metrics.hpp"

using namespace hyperdart;

TEST_CASE("ROUGE-L on the unit example") {
  RougeScore s = rouge_l("a c d", "a b c d");
  CHECK(s.precision == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.recall == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(std::abs(s.f - 6.0 / 7.0) <= 1e-9);
}

TEST_CASE("ROUGE-L edge cases") {
  CHECK(rouge_l("", "").f == 1.0);
  CHECK(rouge_l("", "a").f == 0.0);
  CHECK(rouge_l("x y", "a b").f == 0.0);
  CHECK(rouge_l("a b c", "a b c").f == 1.0);
  CHECK(lcs_length({"a", "b", "c", "b", "d", "a", "b"}, {"b", "d", "c", "a", "b", "a"}) == 4);
}

TEST_CASE("token counts and compression ratio") {
  CHECK(token_count("  two\ttokens\n") == 2);
  CHECK(compression_ratio("a b c d", "a b") == 0.5);
  CHECK_THROWS_AS(compression_ratio("   ", "a"), EmptyOriginal);
}

TEST_CASE("cosine") {
  CHECK(cosine({1, 0}, {0, 1}) == 0.0);
  CHECK(cosine({1, 2, 3}, {1, 2, 3}) == 1.0);
  CHECK(cosine({1, 0}, {-1, 0}) == -1.0);
  CHECK(cosine({0, 0}, {0, 0}) == 1.0);
  CHECK(cosine({0, 0}, {1, 0}) == 0.0);
  CHECK_THROWS_AS(cosine({1}, {1, 2}), LengthMismatch);
}

TEST_CASE("paired significance matches scipy") {
  // scipy.stats.ttest_rel(a, b, alternative="greater"); see tools/oracles.py
  std::vector<double> a{0.91, 0.85, 0.88, 0.93, 0.79, 0.95, 0.87, 0.90, 0.84, 0.92};
  std::vector<double> b{0.88, 0.86, 0.81, 0.90, 0.80, 0.89, 0.85, 0.86, 0.83, 0.87};
  Significance s = paired_significance(a, b);
  CHECK(s.n == 10);
  CHECK(std::abs(s.t_statistic - 3.3636143276677086) <= 1e-9);
  CHECK(std::abs(s.p_value_one_sided - 0.004170566961101637) <= 1e-9);
}

TEST_CASE("symmetric differences give p = 0.5 exactly") {
  std::vector<double> a{1.0, 2.0, 3.0, 4.0};
  std::vector<double> b{2.0, 1.0, 4.0, 3.0};
  Significance s = paired_significance(a, b);
  CHECK(s.t_statistic == 0.0);
  CHECK(s.p_value_one_sided == 0.5);
}

TEST_CASE("zero variance and argument errors") {
  CHECK(paired_significance({2, 3}, {1, 2}).p_value_one_sided == 0.0);
  CHECK(paired_significance({1, 2}, {1, 2}).p_value_one_sided == 0.5);
  CHECK(paired_significance({1, 2}, {2, 3}).p_value_one_sided == 1.0);
  CHECK_THROWS_AS(paired_significance({1}, {1}), TooFewPairs);
  CHECK_THROWS_AS(paired_significance({1, 2}, {1}), LengthMismatch);
}
