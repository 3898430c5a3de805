#include <catch_amalgamated.hpp>

#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "mgof/efficiency.hpp"
#include "mgof/errors.hpp"
#include "mgof/numeric.hpp"
#include "oracle_values.hpp"

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using namespace mgof;

namespace {

std::vector<double> random_alternative(std::mt19937_64& rng, std::int64_t cells) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> deltas(static_cast<std::size_t>(cells));
  for (auto& d : deltas) d = u(rng);
  const double mean = std::accumulate(deltas.begin(), deltas.end(), 0.0) / static_cast<double>(cells);
  double max_abs = 0.0;
  for (auto& d : deltas) {
    d -= mean;
    max_abs = std::max(max_abs, std::abs(d));
  }
  const double delta = 0.5 * std::abs(u(rng)) / max_abs + 1e-3;
  return materialize(Contamination{cells, delta, CustomPattern{deltas}});
}

bool has_kind(const Error& e, ErrorKind kind) { return e.kind() == kind; }

}  // namespace

TEST_CASE("centering constants") {
  for (std::int64_t n : {50, 1000, 20000}) {
    CHECK_THAT(centering_constant(CellFunction::power_divergence(1.0), uniform_probs(100), n), WithinAbs(1.0, 1e-10));
    CHECK_THAT(centering_constant(CellFunction::power_divergence(1.0), uniform_probs(100), n, 1e-15),
               WithinAbs(1.0, 1e-12));
  }
  CHECK_THAT(centering_constant(CellFunction::indicator(0), uniform_probs(40), 30), WithinRel(std::exp(-0.75), 1e-12));

  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 10; ++trial) {
    const auto p = random_alternative(rng, 10);
    const std::int64_t n = 25 + 13 * trial;
    const double lambda = static_cast<double>(n) / 10.0;
    CHECK_THAT(centering_constant(CellFunction::power_divergence(1.0), p, n),
               WithinRel(1.0 + lambda * epsilon_N(p), 1e-11));
  }
}

TEST_CASE("efficacy of the chi-square test is exact") {
  const auto null = uniform_probs(30);
  const auto e0 = efficacy(CellFunction::power_divergence(1.0), null, null, 90);
  CHECK(e0.x_exact == 0.0);
  CHECK(e0.x_approx == 0.0);

  std::mt19937_64 rng(2718);
  std::uniform_int_distribution<int> cells_dist(5, 300);
  std::uniform_int_distribution<int> n_dist(10, 20000);
  for (int trial = 0; trial < 100; ++trial) {
    const std::int64_t cells = cells_dist(rng);
    const std::int64_t n = n_dist(rng);
    const auto alt = random_alternative(rng, cells);
    const auto e = efficacy(CellFunction::power_divergence(1.0), uniform_probs(cells), alt, n);
    const double lambda = static_cast<double>(n) / static_cast<double>(cells);
    const double closed = std::sqrt(static_cast<double>(n) * lambda / 2.0) * epsilon_N(alt);
    CHECK_THAT(e.x_exact, WithinRel(closed, 1e-9) || WithinAbs(closed, 1e-9));
    CHECK_THAT(e.x_approx, WithinRel(closed, 1e-12));
  }
}

TEST_CASE("log-likelihood efficacy approaches its approximation") {
  double previous = INFINITY;
  for (double delta : {0.05, 0.02, 0.01}) {
    const auto alt = materialize(Contamination{200, delta, HalfSplit{}});
    const auto e = efficacy(CellFunction::power_divergence(0.0), uniform_probs(200), alt, 200);
    const double gap = std::abs(e.x_exact / e.x_approx - 1.0);
    CHECK(gap < previous);
    previous = gap;
  }
  CHECK(previous < 1e-3);
}

TEST_CASE("Pitman power") {
  CHECK_THAT(pitman_power(1.0, 0.05), WithinAbs(0.17425, 1e-4));
  CHECK_THAT(pitman_power(1.0, 0.05),
             WithinAbs(numeric::normal_cdf(1.0 / std::sqrt(2.0) - 1.6448536269514722), 1e-12));
  CHECK_THAT(pitman_power(0.0, 0.05), WithinAbs(0.05, 1e-12));
  CHECK_THAT(pitman_power(1.0, 0.5), WithinAbs(0.76025, 1e-5));
  CHECK_THAT(pitman_power(-0.5, 0.05), WithinAbs(pitman_power(0.5, 0.05), 1e-15));
}

TEST_CASE("Pitman relative efficiency") {
  const auto chi = CellFunction::power_divergence(1.0);
  const auto ll = CellFunction::power_divergence(0.0);
  CHECK_THAT(pitman_relative_efficiency(ll, ll, 1.0), WithinAbs(1.0, 1e-14));
  CHECK_THAT(pitman_relative_efficiency(chi, ll, 1.0), WithinAbs(1.0 / (0.9525 * 0.9525), 0.02));
  for (const auto& h : {ll, CellFunction::indicator(0), CellFunction::power_divergence(3.0)}) {
    for (double lambda : {0.1, 1.0, 10.0}) CHECK(pitman_relative_efficiency(chi, h, lambda) >= 1.0 - 1e-12);
  }
}

TEST_CASE("rho expansions") {
  const auto large1 = rho_expansion(CellFunction::power_divergence(1.0), ExpansionRegime::large_lambda);
  CHECK(large1.coefficient == 0.0);
  CHECK(large1.predicted_rho(7.0) == 1.0);

  const double expected = 0.375 * std::pow(std::log(0.75) / std::log(2.0), 2);
  CHECK_THAT(expected, WithinAbs(0.0646, 1e-4));
  const auto small0 = rho_expansion(CellFunction::power_divergence(0.0), ExpansionRegime::small_lambda);
  CHECK_THAT(small0.coefficient, WithinAbs(expected, 1e-12));
  REQUIRE(small0.closed_form_coefficient.has_value());
  CHECK_THAT(*small0.closed_form_coefficient, WithinAbs(expected, 1e-12));
  CHECK_THAT(pds_small_lambda_coefficient(0.0), WithinAbs(expected, 1e-15));

  // The forward-difference route and the closed form agree for every d.
  for (double d : {-0.9, -2.0 / 3.0, -0.5, 1.0 / 3.0, 0.5, 1.5, 2.0, 2.5, 3.0, 4.0, 5.0}) {
    const auto r = rho_expansion(CellFunction::power_divergence(d), ExpansionRegime::small_lambda);
    INFO("d = " << d);
    CHECK_THAT(r.coefficient, WithinRel(*r.closed_form_coefficient, 1e-10) || WithinAbs(*r.closed_form_coefficient, 1e-14));
  }

  CHECK_THROWS_MATCHES(rho_expansion(CellFunction::indicator(3), ExpansionRegime::small_lambda), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return has_kind(e, ErrorKind::ExpansionInapplicable); }));
  CHECK_THROWS_MATCHES(rho_expansion(CellFunction::indicator(0), ExpansionRegime::large_lambda), Error,
                       Catch::Matchers::Predicate<Error>([](const Error& e) { return has_kind(e, ErrorKind::ExpansionInapplicable); }));
}

TEST_CASE("expansion errors shrink at second order") {
  for (double d : {-0.5, 0.0, 2.0}) {
    const auto h = CellFunction::power_divergence(d);
    const auto small = rho_expansion(h, ExpansionRegime::small_lambda);
    const auto large = rho_expansion(h, ExpansionRegime::large_lambda);
    auto err_small = [&](double l) { return std::abs(std::abs(moment_set(h, PoissonRate(l)).rho) - small.predicted_rho(l)); };
    auto err_large = [&](double l) { return std::abs(std::abs(moment_set(h, PoissonRate(l)).rho) - large.predicted_rho(l)); };
    INFO("d = " << d);
    CHECK(err_small(0.04) / err_small(0.02) >= 2.5);
    CHECK(err_small(0.04) / err_small(0.02) <= 6.0);
    CHECK(err_small(0.02) / err_small(0.01) >= 2.5);
    CHECK(err_small(0.02) / err_small(0.01) <= 6.0);
    CHECK(err_large(25.0) / err_large(50.0) >= 2.5);
    CHECK(err_large(25.0) / err_large(50.0) <= 6.0);
    CHECK(err_large(50.0) / err_large(100.0) >= 2.5);
    CHECK(err_large(50.0) / err_large(100.0) <= 6.0);
  }
}

TEST_CASE("intermediate slope") {
  const auto chi = CellFunction::power_divergence(1.0);
  const auto zero = intermediate_slope(chi, 1000, 100, 0.0);
  CHECK(zero.slope == 0.0);
  CHECK(zero.alpha_level_approx == 1.0);

  const auto s = intermediate_slope(chi, 1000000, 1000000, 1e-2);
  CHECK_THAT(s.slope, WithinRel(25.0, 1e-12));
  CHECK_THAT(s.alpha_level_approx, WithinRel(std::exp(-25.0), 1e-12));
  CHECK_THAT(s.slope, WithinRel(s.x_N * s.x_N / 2.0, 1e-12));
  CHECK(s.normal_tail_slope >= s.slope);

  const auto ll = intermediate_slope(CellFunction::power_divergence(0.0), 1000, 1000, 0.05);
  CHECK_THAT(ll.rho, WithinRel(oracle::kAbsRho[3][3], 1e-9));
  CHECK_THAT(ll.slope, WithinRel(1000.0 * 0.0025 * ll.rho * ll.rho / 4.0, 1e-12));
}

TEST_CASE("admissibility examples") {
  const auto chi = admissibility(1.0, 1000000, 1000000, 1e-3);
  CHECK(chi.regime == Regime::sparse);
  const auto* integer = chi.find("sparse_pds_integer");
  REQUIRE(integer != nullptr);
  CHECK_THAT(integer->bound, WithinRel(1e-2, 1e-12));
  CHECK_THAT(integer->ratio, WithinRel(0.1, 1e-12));
  CHECK(integer->admissible);

  const auto ll = admissibility(0.0, 1000, 1000, 0.05);
  const auto* cramer = ll.find("sparse_pds_cramer");
  REQUIRE(cramer != nullptr);
  CHECK(std::isinf(cramer->bound));
  CHECK(cramer->admissible);

  const auto frac = admissibility(1.5, 100000, 100000, 1e-3);
  const auto* f = frac.find("sparse_pds_fractional");
  REQUIRE(f != nullptr);
  CHECK_THAT(f->bound, WithinRel(std::min(std::pow(1e5, -0.375), std::pow(1e5, -1.5 / 4.0)), 1e-12));

  const auto very = admissibility(1.0, 100000, 1000000, 1e-3);
  CHECK(very.regime == Regime::very_sparse);
  REQUIRE(very.find("very_sparse_pds") != nullptr);
  CHECK_THAT(very.find("very_sparse_pds")->bound, WithinRel(std::pow(1e5, -1.0 / 3.0), 1e-12));
  CHECK(admissibility(2.5, 100000, 1000000, 1e-3).find("very_sparse_pds_fractional") != nullptr);

  const auto dense = admissibility(2.0, 1000000, 100, 1e-4);
  REQUIRE(dense.find("dense_pds") != nullptr);
  CHECK_THAT(dense.find("dense_pds")->bound, WithinRel(std::pow(1e6 * 1e8, -1.0 / 3.0), 1e-12));

  // ε = (nλ²)^{−0.3} with N inside the window: n = 10⁸, N = 10².
  const double eps = std::pow(1e8 * 1e12, -0.3);
  const auto window = admissibility(1.0, 100000000, 100, eps, AdmissibilityOptions{1.0, {}});
  const auto* w = window.find("chi_square_gamma_window");
  REQUIRE(w != nullptr);
  CHECK(std::isfinite(w->ratio));

  const auto counts = admissibility(CellFunction::indicator(0), 100000000, 1000000000, 1e-4);
  REQUIRE(counts.find("count_very_sparse") != nullptr);
  CHECK_THAT(counts.find("count_very_sparse")->bound, WithinRel(1e-3, 1e-9));
}

TEST_CASE("Cramer class") {
  CHECK_FALSE(cramer_class(CellFunction::power_divergence(1.0)));
  CHECK(cramer_class(CellFunction::power_divergence(0.0)));
  CHECK(cramer_class(CellFunction::power_divergence(-0.5)));
  CHECK(cramer_class(CellFunction::table({1.0, 2.0})));
  CHECK(cramer_class(CellFunction::indicator(2)));
  CHECK(cramer_class(CellFunction::collision()));
}

TEST_CASE("second-order power term of the chi-square test") {
  CHECK_THAT(soae_t_alpha(0.05), WithinAbs(-0.93775, 1e-5));
  CHECK(sawtooth(2.25) == 0.75);
  CHECK(sawtooth(2.25, SawtoothConvention::centered) == -0.25);
  for (double u : {-3.7, -1.0, 0.0, 0.5, 9.99}) {
    CHECK(sawtooth(u) >= 0.5);
    CHECK(sawtooth(u) < 1.5);
    CHECK(sawtooth(u) - sawtooth(u, SawtoothConvention::centered) == 1.0);
  }
  // Locked after the first evaluation.
  CHECK_THAT(soae_phi2_chisquare(0.05, 100, 1000), WithinRel(0.396802270028805, 1e-12));
  const double t = soae_t_alpha(0.05);
  const double arg = t * std::sqrt(100.0 * 0.1 / 2.0) + 50.0;
  const double direct = numeric::normal_pdf(t) *
                        ((1.0 - t * t) / (3.0 * std::sqrt(2.0)) + t / 2.0 + std::sqrt(2.0) * (arg - std::floor(arg) + 0.5));
  CHECK_THAT(soae_phi2_chisquare(0.05, 100, 1000), WithinRel(direct, 1e-14));
}

TEST_CASE("efficiency report on the chi-square test") {
  const auto alt = materialize(Contamination{1000, 0.05, HalfSplit{}});
  const double alphas[] = {0.05, 0.01};
  const auto rep = efficiency_report(StatisticSpec::chi_square(), 100000, alt, alphas);
  CHECK_THAT(rep.efficacy.rho, WithinAbs(1.0, 1e-9));
  CHECK_THAT(rep.slope.slope, WithinRel(100000.0 * 100.0 * 0.0025 * 0.0025 / 4.0, 1e-9));
  CHECK(rep.pitman_power.size() == 2);
  CHECK_THAT(rep.efficacy.x_exact, WithinRel(rep.slope.x_N, 1e-9));
  CHECK(rep.regime.regime == Regime::dense);
  CHECK_FALSE(rep.admissibility.checks.empty());
}
