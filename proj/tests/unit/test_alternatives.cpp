#include <catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "mgof/alternatives.hpp"
#include "mgof/errors.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace mgof;

TEST_CASE("epsilon of simple vectors") {
  CHECK(epsilon_N(uniform_probs(7)) == 0.0);
  const std::vector<double> p = {0.6, 0.4};
  CHECK_THAT(epsilon_N(p), WithinAbs(0.04, 1e-15));
}

TEST_CASE("contamination examples") {
  const auto p = materialize(Contamination{4, 0.1, HalfSplit{}});
  REQUIRE(p.size() == 4);
  CHECK_THAT(p[0], WithinAbs(0.275, 1e-15));
  CHECK_THAT(p[1], WithinAbs(0.275, 1e-15));
  CHECK_THAT(p[2], WithinAbs(0.225, 1e-15));
  CHECK_THAT(p[3], WithinAbs(0.225, 1e-15));

  for (const auto& pattern : {Pattern{HalfSplit{}}, Pattern{Cosine{1}}}) {
    for (double v : materialize(Contamination{4, 0.0, pattern})) CHECK(v == 0.25);
  }

  const auto q = materialize(Contamination{3, 0.5, CustomPattern{{2.0, -1.0, -1.0}}});
  CHECK_THAT(q[0], WithinAbs(2.0 / 3.0, 1e-15));
  CHECK_THAT(q[1], WithinAbs(1.0 / 6.0, 1e-15));
  CHECK_THAT(q[2], WithinAbs(1.0 / 6.0, 1e-15));
  CHECK_THAT(q[0] + q[1] + q[2], WithinAbs(1.0, 1e-15));

  // Δ = ±1 gives ε = δ².
  CHECK_THAT(epsilon_N(materialize(Contamination{10, 0.3, HalfSplit{}})), WithinRel(0.09, 1e-12));
}

TEST_CASE("invalid patterns are rejected") {
  CHECK_THROWS_MATCHES(materialize(Contamination{3, 0.1, CustomPattern{{1.0, 1.0, -1.0}}}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.kind() == ErrorKind::InvalidPattern; }));
  CHECK_THROWS_MATCHES(materialize(Contamination{2, 1.5, HalfSplit{}}), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return e.kind() == ErrorKind::InvalidPattern; }));
  CHECK_THROWS_AS(materialize(Contamination{3, 0.1, CustomPattern{{1.0, -1.0}}}), Error);
  const std::vector<double> bad = {0.5, 0.6};
  CHECK_THROWS_AS(validate_probs(bad), Error);
}

TEST_CASE("epsilon round trip on random contaminations") {
  std::mt19937_64 rng(31337);
  std::uniform_int_distribution<int> cells_dist(2, 300);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    const int cells = cells_dist(rng);
    std::vector<double> deltas(static_cast<std::size_t>(cells));
    for (auto& d : deltas) d = u(rng);
    const double mean = std::accumulate(deltas.begin(), deltas.end(), 0.0) / cells;
    double max_abs = 0.0;
    for (auto& d : deltas) {
      d -= mean;
      max_abs = std::max(max_abs, std::abs(d));
    }
    const double delta = 0.9 / max_abs * std::abs(u(rng));
    double mean_sq = 0.0;
    for (double d : deltas) mean_sq += d * d;
    mean_sq /= cells;
    const auto p = materialize(Contamination{cells, delta, CustomPattern{deltas}});
    CHECK_THAT(epsilon_N(p), WithinAbs(delta * delta * mean_sq, 1e-12));
    CHECK(epsilon_N(p) > 0.0);
  }
}

TEST_CASE("cosine pattern sums to zero with unit mean square") {
  for (int cells : {5, 12, 50, 97, 400}) {
    for (int k = 1; 2 * k < cells; k += std::max(1, cells / 7)) {
      const auto d = pattern_values(Cosine{k}, cells);
      CHECK(std::abs(std::accumulate(d.begin(), d.end(), 0.0)) <= 1e-9);
      if (cells >= 50) {
        double mean_sq = 0.0;
        for (double v : d) mean_sq += v * v;
        CHECK_THAT(mean_sq / cells, WithinAbs(1.0, 0.05));
      }
    }
  }
}

TEST_CASE("half split with odd N") {
  const auto d = pattern_values(HalfSplit{}, 5);
  CHECK(d[2] == 0.0);
  CHECK(std::accumulate(d.begin(), d.end(), 0.0) == 0.0);
  double mean_sq = 0.0;
  for (double v : d) mean_sq += v * v;
  CHECK_THAT(mean_sq / 5.0, WithinAbs(1.0, 1e-15));
}

TEST_CASE("epsilon is permutation invariant") {
  std::vector<double> p = materialize(Contamination{9, 0.2, Cosine{2}});
  const double e = epsilon_N(p);
  std::reverse(p.begin(), p.end());
  CHECK_THAT(epsilon_N(p), WithinRel(e, 1e-13));
}

TEST_CASE("regime labels") {
  CHECK(regime_report(100, 1000, uniform_probs(1000)).regime == Regime::very_sparse);
  CHECK(regime_report(100, 1000, uniform_probs(1000)).lambda_n == 0.1);
  CHECK(regime_report(10000, 100, uniform_probs(100)).regime == Regime::dense);
  CHECK(regime_report(500, 500, uniform_probs(500)).regime == Regime::sparse);
  const auto alt = materialize(Contamination{100, 0.1, HalfSplit{}});
  const auto r = regime_report(10000, 100, alt);
  CHECK_THAT(r.eps_N, WithinRel(0.01, 1e-12));
  CHECK_THAT(r.pitman_scale, WithinRel(1e-3, 1e-12));
  CHECK_THAT(r.intermediate_scale, WithinRel(10.0, 1e-12));
  CHECK(r.scale_large);
  CHECK_FALSE(r.eps_lambda_small);
}
