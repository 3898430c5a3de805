#include "mgof/efficiency.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numbers>

#include "mgof/errors.hpp"
#include "mgof/numeric.hpp"

namespace mgof {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool is_integer(double d) { return std::abs(d - std::round(d)) < 1e-12; }

/// "value ≪ bound" as a check.
BoundCheck cap_check(std::string name, std::string condition, double value, double bound,
                     double slack) {
  BoundCheck c{std::move(name), std::move(condition), bound, value / bound, false};
  c.admissible = c.ratio <= slack * (1.0 + 1e-12);
  return c;
}

/// "large ≫ small" as a check.
BoundCheck growth_check(std::string name, std::string condition, double large, double small,
                        double slack) {
  BoundCheck c{std::move(name), std::move(condition), large, small / large, false};
  c.admissible = c.ratio <= slack * (1.0 + 1e-12);
  return c;
}

/// lo ≪ N ≪ hi; the window exists only when lo < hi.
BoundCheck window_check(std::string name, std::string condition, double cells, double lo,
                        double hi, double slack) {
  const double ratio = std::max(lo / cells, cells / hi);
  BoundCheck c{std::move(name), std::move(condition), cells, ratio, false};
  c.admissible = c.ratio <= slack * (1.0 + 1e-12);
  return c;
}

constexpr double kEfficacySeriesTolerance = 1e-15;

BoundCheck unavailable(std::string name, std::string condition) {
  return BoundCheck{std::move(name), std::move(condition), kInf, kInf, false};
}

}  // namespace

double centering_constant(const CellFunction& h, std::span<const double> probs, std::int64_t n,
                          double tol) {
  require(n >= 1, "need n >= 1");
  validate_probs(probs);
  const double cells = static_cast<double>(probs.size());
  const double lambda_n = static_cast<double>(n) / cells;
  // Contamination alternatives take few distinct values; cache per cell mean.
  std::map<double, double> cache;
  numeric::CompensatedSum acc;
  for (double p : probs) {
    const double mean = static_cast<double>(n) * p;
    auto it = cache.find(mean);
    if (it == cache.end()) {
      it = cache.emplace(mean, expect_bound(h, lambda_n, PoissonRate(mean), tol)).first;
    }
    acc += it->second;
  }
  return acc.value() / cells;
}

Efficacy efficacy(const CellFunction& h, std::span<const double> null_probs,
                  std::span<const double> alt_probs, std::int64_t n) {
  require(null_probs.size() == alt_probs.size(), "null and alternative must have the same cells");
  Efficacy e;
  const double cells = static_cast<double>(null_probs.size());
  e.lambda_n = static_cast<double>(n) / cells;
  e.eps_N = epsilon_N(alt_probs);
  const MomentSet moments = moment_set(h, PoissonRate(e.lambda_n));
  e.sigma0 = std::sqrt(moments.sigma2);
  e.rho = moments.rho;
  e.A0 = centering_constant(h, null_probs, n, kEfficacySeriesTolerance);
  e.A1 = centering_constant(h, alt_probs, n, kEfficacySeriesTolerance);
  e.x_exact = std::sqrt(cells) * (e.A1 - e.A0) / e.sigma0;
  e.x_approx = std::sqrt(static_cast<double>(n) * e.lambda_n / 2.0) * e.rho * e.eps_N;
  for (double p : alt_probs) {
    e.max_relative_deviation = std::max(e.max_relative_deviation, std::abs(cells * p - 1.0));
  }
  return e;
}

double pitman_power(double rho, double alpha) {
  require(std::abs(rho) <= 1.0 + 1e-9, "|rho| must not exceed one");
  return numeric::normal_cdf(std::abs(rho) / std::numbers::sqrt2 - numeric::upper_normal_point(alpha));
}

double pitman_relative_efficiency(const CellFunction& h, const CellFunction& g, double lambda) {
  const PoissonRate rate(lambda);
  const double rh = moment_set(h, rate).rho;
  const double rg = moment_set(g, rate).rho;
  return (rh * rh) / (rg * rg);
}

double ExpansionResult::predicted_rho(double lambda) const {
  return regime == ExpansionRegime::small_lambda ? 1.0 - coefficient * lambda
                                                 : 1.0 - coefficient / lambda;
}

double pds_small_lambda_coefficient(double d) {
  require(d > -1.0, "power-divergence parameter must satisfy d > -1");
  if (std::abs(d) < kLogBranchThreshold) {
    const double r = std::log(0.75) / std::numbers::ln2;
    return 0.375 * r * r;
  }
  const double num = std::pow(3.0, d) - std::pow(2.0, d + 1.0) + 1.0;
  const double den = std::expm1(d * std::numbers::ln2);
  return 3.0 * num * num / (8.0 * den * den);
}

ExpansionResult rho_expansion(const CellFunction& h, ExpansionRegime regime) {
  ExpansionResult out;
  out.regime = regime;
  if (regime == ExpansionRegime::large_lambda) {
    if (!h.is_power_divergence()) {
      fail(ErrorKind::ExpansionInapplicable,
           "large-lambda expansion is only available for power divergence kernels");
    }
    const double d = h.pds_parameter();
    out.coefficient = (d - 1.0) * (d - 1.0) / 6.0;
    return out;
  }
  // The ratio Δ³h(0)/Δ²h(0) does not depend on the binding λ for any kernel.
  const double second = forward_difference(h, 2, 1.0);
  const double third = forward_difference(h, 3, 1.0);
  if (second == 0.0 || !std::isfinite(second)) {
    fail(ErrorKind::ExpansionInapplicable, "second forward difference at zero vanishes for " +
                                               h.describe());
  }
  const double ratio = third / second;
  out.coefficient = ratio * ratio / 6.0;
  if (h.is_power_divergence()) out.closed_form_coefficient = pds_small_lambda_coefficient(h.pds_parameter());
  return out;
}

IntermediateSlope intermediate_slope(const CellFunction& h, std::int64_t n, std::int64_t cells,
                                     double eps) {
  require(n >= 1 && cells >= 2, "need n >= 1 and N >= 2");
  require(eps >= 0.0, "epsilon must be non-negative");
  const double lambda_n = static_cast<double>(n) / static_cast<double>(cells);
  const double n_lambda = static_cast<double>(n) * lambda_n;
  IntermediateSlope s;
  s.rho = moment_set(h, PoissonRate(lambda_n)).rho;
  s.slope = n_lambda * eps * eps * s.rho * s.rho / 4.0;
  s.alpha_level_approx = std::exp(-s.slope);
  s.x_N = std::sqrt(n_lambda / 2.0) * s.rho * eps;
  s.normal_tail_slope = -numeric::log_normal_sf(s.x_N);
  return s;
}

const BoundCheck* AdmissibilityReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

namespace {

AdmissibilityReport base_report(std::int64_t n, std::int64_t cells, double eps,
                                const AdmissibilityOptions& options) {
  require(n >= 1 && cells >= 2, "need n >= 1 and N >= 2");
  require(eps > 0.0, "admissibility needs epsilon > 0");
  AdmissibilityReport rep;
  rep.slack = options.slack;
  rep.lambda_n = static_cast<double>(n) / static_cast<double>(cells);
  const auto& t = options.thresholds;
  rep.regime = rep.lambda_n < t.very_sparse_below ? Regime::very_sparse
               : rep.lambda_n > t.dense_above     ? Regime::dense
                                                  : Regime::sparse;
  const double nd = static_cast<double>(n);
  const double lam = rep.lambda_n;
  rep.checks.push_back(growth_check("intermediate_scale", "sqrt(n*lambda)*eps >> 1",
                                    std::sqrt(nd * lam) * eps, 1.0, options.slack));
  rep.checks.push_back(cap_check("vanishing_mean_shift", "eps << 1/lambda", eps, 1.0 / lam,
                                 options.slack));
  return rep;
}

void add_moderate_check(AdmissibilityReport& rep, std::string prefix, double nd, double eps,
                        double slack) {
  const double lam = rep.lambda_n;
  rep.checks.push_back(growth_check(prefix + "_growth", "n*lambda^3 >> 1", nd * lam * lam * lam,
                                    1.0, slack));
  rep.checks.push_back(cap_check(prefix + "_moderate", "eps << (n*max(1,lambda^2))^(-1/3)", eps,
                                 std::pow(nd * std::max(1.0, lam * lam), -1.0 / 3.0), slack));
}

}  // namespace

AdmissibilityReport admissibility(double d, std::int64_t n, std::int64_t cells, double eps,
                                  const AdmissibilityOptions& options) {
  require(d > -1.0, "power-divergence parameter must satisfy d > -1");
  AdmissibilityReport rep = base_report(n, cells, eps, options);
  const double nd = static_cast<double>(n);
  const double Nd = static_cast<double>(cells);
  const double lam = rep.lambda_n;
  const double slack = options.slack;
  const double d_star = std::max(1.0, d);
  const bool cramer = d <= 0.0;
  const bool integer = is_integer(d);

  switch (rep.regime) {
    case Regime::sparse:
      if (cramer) {
        rep.checks.push_back(cap_check("sparse_pds_cramer", "no cap beyond the intermediate family", eps,
                                       kInf, slack));
      } else if (integer) {
        rep.checks.push_back(cap_check("sparse_pds_integer", "eps << n^(-d/(1+2d))", eps,
                                       std::pow(nd, -d / (1.0 + 2.0 * d)), slack));
      } else {
        rep.checks.push_back(cap_check("sparse_pds_fractional", "eps << min(n^(-3/8), n^(-d*/(1+2d*)))", eps,
                                       std::min(std::pow(nd, -0.375),
                                                std::pow(nd, -d_star / (1.0 + 2.0 * d_star))),
                                       slack));
      }
      break;
    case Regime::very_sparse: {
      rep.checks.push_back(growth_check("very_sparse_growth", "n*lambda^3 >> 1",
                                        nd * lam * lam * lam, 1.0, slack));
      const double base =
          std::pow(std::pow(nd, d_star) * std::pow(lam, d_star - 1.0), -1.0 / (2.0 * d_star + 1.0));
      if (cramer || integer) {
        rep.checks.push_back(cap_check("very_sparse_pds",
                                       "eps << (n^d* * lambda^(d*-1))^(-1/(2d*+1))", eps, base,
                                       slack));
      } else {
        rep.checks.push_back(cap_check(
            "very_sparse_pds_fractional",
            "eps << min((n*lambda^(4/3))^(-3/8), (n^d* * lambda^(d*-1))^(-1/(2d*+1)))", eps,
            std::min(std::pow(nd * std::pow(lam, 4.0 / 3.0), -0.375), base), slack));
      }
      break;
    }
    case Regime::dense:
      rep.checks.push_back(cap_check("dense_pds", "eps << (n*lambda^2)^(-1/3)", eps,
                                     std::pow(nd * lam * lam, -1.0 / 3.0), slack));
      break;
  }

  if (std::abs(d - 1.0) < kLogBranchThreshold) {
    add_moderate_check(rep, "chi_square", nd, eps, slack);
    // ε = (nλ²)^{−γ}, γ in (1/4, 1/3], N inside the γ-window.
    const double gamma = -std::log(eps) / std::log(nd * lam * lam);
    if (gamma > 0.25 && gamma <= 1.0 / 3.0 + 1e-12) {
      rep.checks.push_back(window_check(
          "chi_square_gamma_window",
          "eps=(n*lambda^2)^-gamma, n^((1-3g)/(1-2g)) << N << n^(3(1-2g)/(4(1-g)))", Nd,
          std::pow(nd, (1.0 - 3.0 * gamma) / (1.0 - 2.0 * gamma)),
          std::pow(nd, 3.0 * (1.0 - 2.0 * gamma) / (4.0 * (1.0 - gamma))), slack));
    } else {
      rep.checks.push_back(unavailable("chi_square_gamma_window", "gamma outside (1/4, 1/3]"));
    }
    // ε = (nλ)^{−1/3} ω^{2/3} with max(1, log(N²/n)) ≪ ω ≪ √(nλ): slope ratio → 0.
    const double omega = std::pow(eps, 1.5) * std::sqrt(nd * lam);
    const double lower = std::max(1.0, std::log(Nd * Nd / nd));
    BoundCheck zone{"chi_square_inferior_zone",
                    "max(1,log(N^2/n)) << omega << sqrt(n*lambda), omega=eps^(3/2)*sqrt(n*lambda)",
                    omega, std::max(lower / omega, omega / std::sqrt(nd * lam)), false};
    zone.admissible = zone.ratio <= slack * (1.0 + 1e-12);
    rep.checks.push_back(zone);
  }

  if (std::abs(d) < kLogBranchThreshold) {
    add_moderate_check(rep, "log_likelihood", nd, eps, slack);
    const double sqrt_n = std::sqrt(nd);
    // √n ≪ N ≪ n, ε = (nλ)^{−γ}, γ in (0, 1/3].
    const double gamma_wide = -std::log(eps) / std::log(nd * lam);
    if (Nd > sqrt_n && gamma_wide > 0.0 && gamma_wide <= 1.0 / 3.0 + 1e-12) {
      BoundCheck c = window_check("log_likelihood_gamma_window_wide",
                                  "sqrt(n) << N << n, eps=(n*lambda)^-gamma, "
                                  "n^((1-2g)/(1-g)) << N << n^((5-8g)/(5-4g))",
                                  Nd,
                                  std::max(sqrt_n, std::pow(nd, (1.0 - 2.0 * gamma_wide) /
                                                                    (1.0 - gamma_wide))),
                                  std::min(nd, std::pow(nd, (5.0 - 8.0 * gamma_wide) /
                                                                (5.0 - 4.0 * gamma_wide))),
                                  slack);
      rep.checks.push_back(c);
    } else {
      rep.checks.push_back(unavailable("log_likelihood_gamma_window_wide",
                                       "needs N > sqrt(n) and gamma in (0, 1/3]"));
    }
    // N ≪ √n, ε = (nλ²)^{−γ}, γ in (1/4, 1/3].
    const double gamma_narrow = -std::log(eps) / std::log(nd * lam * lam);
    if (Nd < sqrt_n && gamma_narrow > 0.25 && gamma_narrow <= 1.0 / 3.0 + 1e-12) {
      rep.checks.push_back(window_check(
          "log_likelihood_gamma_window_narrow",
          "N << sqrt(n), eps=(n*lambda^2)^-gamma, n^((1-3g)/(1-2g)) << N << n^((5-12g)/(5-6g))",
          Nd, std::pow(nd, (1.0 - 3.0 * gamma_narrow) / (1.0 - 2.0 * gamma_narrow)),
          std::min(sqrt_n, std::pow(nd, (5.0 - 12.0 * gamma_narrow) / (5.0 - 6.0 * gamma_narrow))),
          slack));
    } else {
      rep.checks.push_back(unavailable("log_likelihood_gamma_window_narrow",
                                       "needs N < sqrt(n) and gamma in (1/4, 1/3]"));
    }
  }
  return rep;
}

AdmissibilityReport admissibility(const CellFunction& h, std::int64_t n, std::int64_t cells,
                                  double eps, const AdmissibilityOptions& options) {
  if (h.is_power_divergence()) return admissibility(h.pds_parameter(), n, cells, eps, options);
  AdmissibilityReport rep = base_report(n, cells, eps, options);
  const auto* ind = std::get_if<Indicator>(&h.kind());
  const bool low_count = (ind != nullptr && ind->r <= 2) || std::holds_alternative<Collision>(h.kind());
  const double nd = static_cast<double>(n);
  if (rep.regime == Regime::sparse && cramer_class(h)) {
    rep.checks.push_back(cap_check("sparse_cramer", "no cap beyond the intermediate family", eps,
                                   kInf, options.slack));
  }
  if (rep.regime == Regime::very_sparse && low_count) {
    rep.checks.push_back(growth_check("count_growth", "n^(1/6)*lambda >> 1",
                                      std::pow(nd, 1.0 / 6.0) * rep.lambda_n, 1.0, options.slack));
    rep.checks.push_back(cap_check("count_very_sparse", "eps << N^(-1/3)", eps,
                                   std::pow(static_cast<double>(cells), -1.0 / 3.0), options.slack));
  }
  return rep;
}

bool cramer_class(const CellFunction& h) {
  if (const auto* pds = std::get_if<PowerDivergence>(&h.kind())) return pds->d <= 0.0;
  return true;
}

double sawtooth(double u, SawtoothConvention convention) {
  const double frac = u - std::floor(u);
  return convention == SawtoothConvention::printed ? frac + 0.5 : frac - 0.5;
}

double soae_t_alpha(double alpha) {
  return 1.0 / std::numbers::sqrt2 - numeric::upper_normal_point(alpha);
}

double soae_phi2_chisquare(double alpha, std::int64_t n, std::int64_t cells,
                           SawtoothConvention convention) {
  require(n >= 1 && cells >= 2, "need n >= 1 and N >= 2");
  const double t = soae_t_alpha(alpha);
  const double nd = static_cast<double>(n);
  const double lambda_n = nd / static_cast<double>(cells);
  const double lattice_arg = t * std::sqrt(nd * lambda_n / 2.0) + nd / 2.0;
  const double bracket = (1.0 - t * t) / (3.0 * std::numbers::sqrt2) + t / 2.0 +
                         std::numbers::sqrt2 * sawtooth(lattice_arg, convention);
  return numeric::normal_pdf(t) * bracket;
}

EfficiencyReport efficiency_report(const StatisticSpec& spec, std::int64_t n,
                                   std::span<const double> alt_probs,
                                   std::span<const double> alphas,
                                   const AdmissibilityOptions& options) {
  validate_probs(alt_probs);
  const auto cells = static_cast<std::int64_t>(alt_probs.size());
  const auto null_probs = uniform_probs(cells);
  EfficiencyReport rep;
  rep.statistic = spec.name;
  rep.n = n;
  rep.cells = cells;
  rep.efficacy = efficacy(spec.function, null_probs, alt_probs, n);
  for (double a : alphas) rep.pitman_power.emplace_back(a, pitman_power(rep.efficacy.rho, a));
  rep.slope = intermediate_slope(spec.function, n, cells, rep.efficacy.eps_N);
  rep.normal_tail_slope_exact = -numeric::log_normal_sf(rep.efficacy.x_exact);
  rep.regime = regime_report(n, cells, alt_probs, options.thresholds);
  if (rep.efficacy.eps_N > 0.0) {
    rep.admissibility = admissibility(spec.function, n, cells, rep.efficacy.eps_N, options);
  } else {
    rep.admissibility.regime = rep.regime.regime;
    rep.admissibility.lambda_n = rep.regime.lambda_n;
    rep.admissibility.slack = options.slack;
  }
  return rep;
}

}  // namespace mgof
