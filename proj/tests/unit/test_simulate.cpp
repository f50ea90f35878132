#include <algorithm>
#include <cmath>
#include <set>
#include <vector>

#include <doctest.h>

#include "loam/errors.hpp"
#include "loam/estimators.hpp"
#include "loam/quantiles.hpp"
#include "loam/rng.hpp"
#include "loam/simulate.hpp"
#include "oracle.hpp"

using loam::Design;
using loam::DifferenceKind;
using loam::ModelParams;

TEST_CASE("uniforms stay strictly inside the open unit interval") {
  loam::Rng rng(1);
  double lo = 1.0, hi = 0.0;
  for (int n = 0; n < 1000000; ++n) {
    const double u = rng.uniform();
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
  CHECK(lo < 1e-4);   // the stream does explore both ends
  CHECK(hi > 1.0 - 1e-4);
}

TEST_CASE("bounded draws cover the range without bias") {
  loam::Rng rng(2);
  std::vector<int> counts(5, 0);
  const int n = 100000;
  for (int i = 0; i < n; ++i) ++counts[static_cast<std::size_t>(rng.bounded(5))];
  for (const int c : counts) {
    CHECK(c > n / 5 - 1000);
    CHECK(c < n / 5 + 1000);
  }
}

TEST_CASE("substreams are deterministic and distinct") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    const auto s = loam::substream_seed(99, i);
    CHECK(s == loam::substream_seed(99, i));
    seen.insert(s);
  }
  CHECK(seen.size() == 1000);
  CHECK(loam::substream_seed(99, 0) != loam::substream_seed(100, 0));
}

TEST_CASE("simulation is deterministic in the seed") {
  const ModelParams params{3.0, 1.0, 0.5, 0.25, 0.75};
  const Design d{4, 3, 2};
  const auto g1 = loam::simulate(params, d, 12345);
  const auto g2 = loam::simulate(params, d, 12345);
  REQUIRE(g1.values().size() == g2.values().size());
  for (std::size_t n = 0; n < g1.values().size(); ++n) CHECK(g1.values()[n] == g2.values()[n]);

  const auto g3 = loam::simulate(params, d, 12346);
  bool any_differ = false;
  for (std::size_t n = 0; n < g1.values().size(); ++n) {
    if (g1.values()[n] != g3.values()[n]) any_differ = true;
  }
  CHECK(any_differ);
}

TEST_CASE("simulation labels subjects and observers in order") {
  const auto grid = loam::simulate(ModelParams{}, Design{3, 2, 2}, 5);
  CHECK(grid.subject_labels() == std::vector<std::string>{"S1", "S2", "S3"});
  CHECK(grid.observer_labels() == std::vector<std::string>{"O1", "O2"});
}

TEST_CASE("draws come from one stream in the documented order") {
  // Reconstruct the grid directly from the stream contract: one uniform
  // per effect, order A_1..A_a, B_1..B_b, AB row-major, then E with the
  // replicate index fastest.
  const ModelParams p{2.0, 1.5, 0.8, 0.4, 0.6};
  const Design d{3, 2, 2};
  const auto grid = loam::simulate(p, d, 777);

  loam::Rng rng(777);
  std::vector<double> ai(3), bj(2), abij(6);
  for (auto& x : ai) x = p.sigma_a * loam::normal_quantile(rng.uniform());
  for (auto& x : bj) x = p.sigma_b * loam::normal_quantile(rng.uniform());
  for (auto& x : abij) x = p.sigma_ab * loam::normal_quantile(rng.uniform());
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        const double expected = p.mu + ai[static_cast<std::size_t>(i)] +
                                bj[static_cast<std::size_t>(j)] +
                                abij[static_cast<std::size_t>(i * 2 + j)] +
                                p.sigma_e * loam::normal_quantile(rng.uniform());
        CHECK(grid.value(i, j, k) == expected);
      }
    }
  }
}

TEST_CASE("zero-sigma effects still consume their stream positions") {
  // Turning sigma_a on must not shift the B, AB, or E draws: the two grids
  // then differ by a per-subject constant only.
  const Design d{4, 3, 2};
  const auto off = loam::simulate(ModelParams{0.0, 0.0, 1.0, 0.5, 0.7}, d, 31);
  const auto on = loam::simulate(ModelParams{0.0, 2.0, 1.0, 0.5, 0.7}, d, 31);
  for (int i = 0; i < 4; ++i) {
    const double shift = on.value(i, 0, 0) - off.value(i, 0, 0);
    for (int j = 0; j < 3; ++j) {
      for (int k = 0; k < 2; ++k) {
        CHECK(on.value(i, j, k) - off.value(i, j, k) == doctest::Approx(shift).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("pure residual noise passes a normality check") {
  // With only sigma_e active the values are iid standard normal.
  const auto grid = loam::simulate(ModelParams{0.0, 0.0, 0.0, 0.0, 1.0}, Design{25, 20, 200}, 271828);
  std::vector<double> sample(grid.values().begin(), grid.values().end());
  REQUIRE(sample.size() == 100000);
  double mean = 0.0;
  for (const double v : sample) mean += v;
  mean /= static_cast<double>(sample.size());
  double var = 0.0;
  for (const double v : sample) var += (v - mean) * (v - mean);
  var /= static_cast<double>(sample.size() - 1);
  CHECK(std::abs(mean) < 0.02);
  CHECK(var == doctest::Approx(1.0).epsilon(0.02));
  CHECK(oracle::ks_pvalue_standard_normal(std::move(sample)) > 0.001);
}

TEST_CASE("population limits from the closed forms") {
  // sigma_b = sigma_ab = 0, sigma_e = 1, b = c = 2.
  const auto t = loam::true_loam(ModelParams{0.0, 5.0, 0.0, 0.0, 1.0}, Design{10, 2, 2});
  CHECK(t.reproducibility_limit == doctest::Approx(1.6974097914174997).epsilon(1e-14));
  CHECK(t.repeatability_limit == doctest::Approx(1.3859292911256331).epsilon(1e-14));

  // General parameters against a hand-expanded radicand.
  const ModelParams p{7.0, 2.0, 1.5, 0.8, 0.6};
  const Design d{15, 4, 3};
  const auto g = loam::true_loam(p, d);
  const double reprod_var = (3.0 / 4.0) * (1.5 * 1.5 + 0.8 * 0.8) + (11.0 / 12.0) * 0.36;
  const double repeat_var = (2.0 / 3.0) * 0.36;
  CHECK(g.reproducibility_limit == doctest::Approx(1.96 * std::sqrt(reprod_var)).epsilon(1e-14));
  CHECK(g.repeatability_limit == doctest::Approx(1.96 * std::sqrt(repeat_var)).epsilon(1e-14));

  // The multiplier passes straight through.
  const auto z3 = loam::true_loam(p, d, 3.0);
  CHECK(z3.reproducibility_limit ==
        doctest::Approx(g.reproducibility_limit / 1.96 * 3.0).epsilon(1e-14));
}

TEST_CASE("simulated difference variances match the closed forms") {
  struct Point {
    ModelParams params;
    Design design;
  };
  const Point points[] = {
      {{0.0, 1.0, 0.5, 0.3, 0.8}, {20, 5, 3}},
      {{2.0, 0.5, 1.2, 0.0, 0.5}, {15, 4, 2}},
      {{-1.0, 2.0, 0.0, 0.7, 1.1}, {12, 6, 2}},
      {{0.0, 0.0, 0.0, 0.0, 1.0}, {10, 3, 4}},
      {{5.0, 1.5, 0.9, 0.6, 0.4}, {25, 2, 5}},
  };
  int point_index = 0;
  for (const auto& pt : points) {
    const double b = pt.design.observers;
    const double c = pt.design.replicates;
    const double var_b = pt.params.sigma_b * pt.params.sigma_b;
    const double var_ab = pt.params.sigma_ab * pt.params.sigma_ab;
    const double var_e = pt.params.sigma_e * pt.params.sigma_e;

    const double expect_subject =
        (b - 1.0) / b * (var_b + var_ab) + (b * c - 1.0) / (b * c) * var_e;
    const double got_subject =
        loam::empirical_variance_check(pt.params, pt.design, DifferenceKind::to_subject_mean, 300,
                                       static_cast<std::uint64_t>(5150 + point_index));
    CHECK(got_subject == doctest::Approx(expect_subject).epsilon(0.06));

    const double expect_cell = (c - 1.0) / c * var_e;
    const double got_cell =
        loam::empirical_variance_check(pt.params, pt.design, DifferenceKind::to_cell_mean, 300,
                                       static_cast<std::uint64_t>(6160 + point_index));
    CHECK(got_cell == doctest::Approx(expect_cell).epsilon(0.06));
    ++point_index;
  }
}

TEST_CASE("parameter validation") {
  const Design d{3, 3, 3};
  CHECK_THROWS_AS(loam::simulate(ModelParams{0.0, -1.0, 0.0, 0.0, 1.0}, d, 1), loam::DomainError);
  CHECK_THROWS_AS(loam::simulate(ModelParams{0.0, 0.0, 0.0, 0.0, 0.0}, d, 1), loam::DomainError);
  CHECK_THROWS_AS(loam::simulate(ModelParams{0.0, 0.0, 0.0, 0.0, -2.0}, d, 1), loam::DomainError);
  const double inf = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(loam::simulate(ModelParams{inf, 0.0, 0.0, 0.0, 1.0}, d, 1), loam::DomainError);
  CHECK_THROWS_AS(loam::simulate(ModelParams{0.0, inf, 0.0, 0.0, 1.0}, d, 1), loam::DomainError);
  CHECK_THROWS_AS(loam::true_loam(ModelParams{0.0, 0.0, 0.0, 0.0, 0.0}, d), loam::DomainError);
  CHECK_THROWS_AS(loam::simulate(ModelParams{}, Design{1, 3, 3}, 1), loam::DegenerateDesign);
  CHECK_THROWS_AS(
      loam::empirical_variance_check(ModelParams{}, d, DifferenceKind::to_cell_mean, 0, 1),
      loam::DomainError);
}
