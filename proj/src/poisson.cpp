#include "mgof/poisson.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "mgof/errors.hpp"
#include "mgof/numeric.hpp"

namespace mgof {

namespace {

// Envelopes are assumed to grow no faster than a polynomial of this degree
// between consecutive counts once past the mode.
constexpr double kEnvelopeDegree = 16.0;

struct Table {
  std::vector<double> pmf;
  std::vector<double> h;
};

Table tabulate(const CellFunction& h, double binding_lambda, PoissonRate rate, double tol,
               const std::function<double(std::int64_t, double)>& envelope_of) {
  const auto length = series_length(
      rate, [&](std::int64_t r) { return envelope_of(r, h(r, binding_lambda)); }, h.support_hint(),
      tol);
  Table t;
  t.pmf.reserve(static_cast<std::size_t>(length));
  t.h.reserve(static_cast<std::size_t>(length));
  for (std::int64_t r = 0; r < length; ++r) {
    t.pmf.push_back(poisson_pmf(r, rate));
    t.h.push_back(h(r, binding_lambda));
  }
  return t;
}

}  // namespace

PoissonRate::PoissonRate(double lambda) : lambda_(lambda) {
  require(std::isfinite(lambda) && lambda > 0.0, "Poisson rate must be positive and finite");
}

double poisson_log_pmf(std::int64_t r, PoissonRate rate) {
  require(r >= 0, "Poisson count must be >= 0");
  const double lambda = rate.value();
  const double rd = static_cast<double>(r);
  return rd * std::log(lambda) - lambda - std::lgamma(rd + 1.0);
}

double poisson_pmf(std::int64_t r, PoissonRate rate) { return std::exp(poisson_log_pmf(r, rate)); }

double poisson_upper_tail(std::int64_t k, PoissonRate rate) {
  if (k <= 0) return 1.0;
  const double lambda = rate.value();
  numeric::CompensatedSum acc;
  if (static_cast<double>(k) <= lambda) {
    // Tail mass is at least about one half here, so the complement is safe.
    for (std::int64_t r = 0; r < k; ++r) acc += poisson_pmf(r, rate);
    return std::max(0.0, 1.0 - acc.value());
  }
  // Terms decrease geometrically with ratio below λ/k < 1.
  for (std::int64_t r = k;; ++r) {
    const double term = poisson_pmf(r, rate);
    acc += term;
    if (term <= 1e-17 * acc.value() || term == 0.0) break;
  }
  return acc.value();
}

std::int64_t series_cap(PoissonRate rate) {
  const double lambda = rate.value();
  return static_cast<std::int64_t>(std::ceil(lambda + 25.0 * std::sqrt(lambda + 1.0) + 60.0));
}

std::int64_t series_length(PoissonRate rate, const std::function<double(std::int64_t)>& envelope,
                           std::int64_t support_hint, double tol) {
  require(tol > 0.0, "series tolerance must be positive");
  const double lambda = rate.value();
  const std::int64_t cap = series_cap(rate);
  const auto earliest = std::min(
      cap, std::max<std::int64_t>(support_hint, static_cast<std::int64_t>(std::ceil(lambda))));

  numeric::CompensatedSum mass;
  for (std::int64_t r = 0; r <= cap; ++r) {
    const double term = std::abs(envelope(r)) * poisson_pmf(r, rate);
    mass += term;
    if (r < earliest) continue;
    const double rd = static_cast<double>(r);
    const double q = lambda / (rd + 1.0) * std::pow((rd + 2.0) / (rd + 1.0), kEnvelopeDegree);
    if (q >= 1.0) continue;
    const double tail = term * q / (1.0 - q);
    if (tail <= tol * std::max(1.0, mass.value())) return r + 1;
  }
  fail(ErrorKind::NonConvergent, "Poisson series did not converge within " + std::to_string(cap) +
                                     " terms at lambda=" + std::to_string(lambda));
}

double expect(const CellFunction& h, PoissonRate rate, double tol) {
  return expect_bound(h, rate.value(), rate, tol);
}

double expect_bound(const CellFunction& h, double binding_lambda, PoissonRate rate, double tol) {
  require(binding_lambda > 0.0, "binding lambda must be positive");
  const Table t = tabulate(h, binding_lambda, rate, tol,
                           [](std::int64_t, double hv) { return 1.0 + std::abs(hv); });
  numeric::CompensatedSum acc;
  for (std::size_t r = 0; r < t.pmf.size(); ++r) acc += t.h[r] * t.pmf[r];
  return acc.value();
}

MomentSet moment_set(const CellFunction& h, PoissonRate rate, double tol) {
  const double lambda = rate.value();
  // Largest integrand is (h·(ξ−λ)²)², so the envelope covers h² and ξ⁴.
  const Table t = tabulate(h, lambda, rate, tol, [](std::int64_t r, double hv) {
    const double a = 1.0 + std::abs(hv);
    const double b = 1.0 + static_cast<double>(r);
    return a * a * b * b * b * b;
  });
  const std::size_t len = t.pmf.size();

  numeric::CompensatedSum mean_acc;
  for (std::size_t r = 0; r < len; ++r) mean_acc += t.h[r] * t.pmf[r];
  MomentSet m;
  m.mean_h = mean_acc.value();

  numeric::CompensatedSum var_acc, cov_acc;
  for (std::size_t r = 0; r < len; ++r) {
    const double u = t.h[r] - m.mean_h;
    const double v = static_cast<double>(r) - lambda;
    var_acc += t.pmf[r] * u * u;
    cov_acc += t.pmf[r] * u * v;
  }
  m.var_h = var_acc.value();
  m.cov_h_xi = cov_acc.value();
  m.tau = m.cov_h_xi / lambda;

  // w(ξ) = ξ² − (2λ+1)ξ + λ² is the centred chi-square kernel.
  numeric::CompensatedSum g2_acc, gw_acc, w2_acc;
  for (std::size_t r = 0; r < len; ++r) {
    const double v = static_cast<double>(r) - lambda;
    const double g = t.h[r] - m.mean_h - m.tau * v;
    const double w = v * v - static_cast<double>(r);
    g2_acc += t.pmf[r] * g * g;
    gw_acc += t.pmf[r] * g * w;
    w2_acc += t.pmf[r] * w * w;
  }
  m.sigma2 = g2_acc.value();

  if (!(m.var_h > 0.0) || !(m.sigma2 > kDegeneracyThreshold * m.var_h)) {
    fail(ErrorKind::DegenerateFunction,
         h.describe() + " is affine in the cell count at lambda=" + std::to_string(lambda));
  }
  m.rho = gw_acc.value() / std::sqrt(m.sigma2 * w2_acc.value());
  return m;
}

double forward_difference(const CellFunction& h, int k, double lambda) {
  require(k >= 1 && k <= 3, "forward difference order must be 1, 2 or 3");
  static constexpr int kBinomial[4][4] = {{1, 0, 0, 0}, {1, 1, 0, 0}, {1, 2, 1, 0}, {1, 3, 3, 1}};
  double acc = 0.0;
  for (int j = 0; j <= k; ++j) {
    const double sign = ((k - j) % 2 == 0) ? 1.0 : -1.0;
    acc += sign * kBinomial[k][j] * h(j, lambda);
  }
  return acc;
}

}  // namespace mgof
