#include <catch2/catch.hpp>

#include <random>
#include <vector>

#include <casekit/stats.hpp>

#include "support/catch_helpers.hpp"
#include "support/oracles.hpp"

using casekit::errc;
using casekit::quantile;
using testgen::code_of;

TEST_CASE("quantile of a single element is that element") {
  std::vector<double> v{5.0};
  CHECK(quantile(v, 0.0) == 5.0);
  CHECK(quantile(v, 0.37) == 5.0);
  CHECK(quantile(v, 1.0) == 5.0);
}

TEST_CASE("quantile interpolates linearly") {
  std::vector<double> v{1, 2, 3, 4};
  CHECK(quantile(v, 0.25) == Approx(1.75).epsilon(1e-12));
  std::vector<double> w{0, 10};
  CHECK(quantile(w, 0.5) == Approx(5.0).epsilon(1e-12));
  CHECK(quantile(v, 0.25) == oracles::reference_quantile(v, 0.25));
}

TEST_CASE("quantile input validation") {
  std::vector<double> empty;
  CHECK(code_of([&] { quantile(empty, 0.5); }) == errc::empty_input);
  std::vector<double> bad{1.0, std::nan("")};
  CHECK(code_of([&] { quantile(bad, 0.5); }) == errc::non_finite);
  std::vector<double> v{1.0};
  CHECK(code_of([&] { quantile(v, 1.5); }) == errc::bad_argument);
  CHECK(code_of([&] { casekit::numeric_profile(empty); }) == errc::empty_input);
}

TEST_CASE("quantile hits min and max at the ends and is monotone in prob") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> value(-50, 50);
  std::uniform_int_distribution<std::size_t> size(1, 40);
  std::uniform_real_distribution<double> prob(0, 1);
  for (int iter = 0; iter < 300; ++iter) {
    std::vector<double> v(size(rng));
    for (auto& x : v) x = value(rng);
    CHECK(quantile(v, 0.0) == *std::min_element(v.begin(), v.end()));
    CHECK(quantile(v, 1.0) == *std::max_element(v.begin(), v.end()));
    double p1 = prob(rng), p2 = prob(rng);
    if (p1 > p2) std::swap(p1, p2);
    CHECK(quantile(v, p1) <= quantile(v, p2));
  }
}

TEST_CASE("quantile is affine equivariant") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> value(-10, 10);
  std::uniform_real_distribution<double> scale(0.1, 5.0);
  std::uniform_real_distribution<double> prob(0, 1);
  for (int iter = 0; iter < 300; ++iter) {
    std::uniform_int_distribution<std::size_t> size(1, 30);
    std::vector<double> v(size(rng));
    for (auto& x : v) x = value(rng);
    double a = scale(rng), b = value(rng), p = prob(rng);
    std::vector<double> w(v);
    for (auto& x : w) x = a * x + b;
    CHECK(quantile(w, p) == Approx(a * quantile(v, p) + b).margin(1e-9));
  }
}

TEST_CASE("numeric_profile of a constant column") {
  std::vector<double> v{3.25, 3.25, 3.25};
  casekit::stats_profile p = casekit::numeric_profile(v);
  CHECK(p.count == 3);
  CHECK(p.mean == 3.25);
  CHECK(p.iqr == 0.0);
  CHECK(p.range == 0.0);
  CHECK(p.q1 == 3.25);
  CHECK(p.q3 == 3.25);
}

TEST_CASE("numeric_profile matches the brute-force recomputation") {
  std::mt19937 rng(13);
  std::uniform_real_distribution<double> value(-100, 100);
  for (int iter = 0; iter < 200; ++iter) {
    std::uniform_int_distribution<std::size_t> size(1, 120);
    std::vector<double> v(size(rng));
    for (auto& x : v) x = value(rng);
    casekit::stats_profile got = casekit::numeric_profile(v);
    casekit::stats_profile want = oracles::reference_profile(v);
    CHECK(got.count == want.count);
    CHECK(got.mean == Approx(want.mean).margin(1e-9));
    CHECK(got.min == want.min);
    CHECK(got.max == want.max);
    CHECK(got.q1 == Approx(want.q1).margin(1e-12));
    CHECK(got.q3 == Approx(want.q3).margin(1e-12));
    CHECK(got.iqr == Approx(want.iqr).margin(1e-12));
    CHECK(got.range == want.range);
    CHECK(got.min <= got.q1);
    CHECK(got.q1 <= got.q3);
    CHECK(got.q3 <= got.max);
  }
}

TEST_CASE("categorical_profile counts distinct labels in first-seen order") {
  std::vector<std::string> labels{"Low", "Low", "High"};
  casekit::category_inventory inv = casekit::categorical_profile(labels);
  REQUIRE(inv.labels.size() == 2);
  CHECK(inv.labels[0].label == "Low");
  CHECK(inv.labels[0].count == 2);
  CHECK(inv.labels[1].label == "High");
  CHECK(inv.labels[1].count == 1);
  CHECK(inv.total() == 3);
}

TEST_CASE("categorical_profile on empty input and spelling variants") {
  CHECK(casekit::categorical_profile({}).labels.empty());
  std::vector<std::string> labels{"very_low", "Very Low", " VERY LOW "};
  casekit::category_inventory inv = casekit::categorical_profile(labels);
  REQUIRE(inv.labels.size() == 1);
  CHECK(inv.labels[0].label == "very_low");  // first-seen spelling
  CHECK(inv.labels[0].count == 3);
}
