#include "mgof/bahadur.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mgof/efficiency.hpp"
#include "mgof/errors.hpp"
#include "mgof/numeric.hpp"
#include "mgof/poisson.hpp"

namespace mgof {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
// Tail terms below this fraction of the largest term are dropped.
constexpr double kLogTermFloor = -41.5;  // log(1e-18)
// Terms this far below the running peak are dropped.
constexpr double kLogSkip = -60.0;
constexpr std::int64_t kExtraTerms = 4000000;
constexpr double kZRange = 1e6;
constexpr double kMaxTilt = 1e3;
constexpr double kResidualTarget = 1e-10;
constexpr double kEdgeWidth = 1e-9;

std::int64_t tilt_cap(double z) { return series_cap(PoissonRate(z)) + kExtraTerms; }

bool is_error_kind(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::Divergent:
    case ErrorKind::NoRoot:
    case ErrorKind::NonConvergent:
      return true;
    default:
      return false;
  }
}

}  // namespace

TiltedMoments tilted_moments(double t, double z, const CellFunction& h, double lambda) {
  require(std::isfinite(t), "tilt must be finite");
  require(z > 0.0 && std::isfinite(z), "tilted rate must be positive");
  if (t > 0.0 && !cramer_class(h)) {
    fail(ErrorKind::Divergent, "E exp{t h} is infinite for t > 0 when h grows superlinearly (" +
                                   h.describe() + ")");
  }
  const PoissonRate rate(z);
  const std::int64_t cap = tilt_cap(z);
  const auto hint = static_cast<double>(h.support_hint());
  double bulk = z;

  double peak = kNegInf;
  double s0 = 0.0, s_xi = 0.0, s_h = 0.0;
  double prev = kNegInf;
  const double log_z = std::log(z);
  double log_pmf = -z;
  // Affine past the support hint: skip terms below the shifted Poisson bulk.
  std::int64_t skip_from = cap + 1;
  std::int64_t skip_to = cap + 1;
  if (const auto slope = h.tail_slope()) {
    bulk = z * std::exp(t * *slope);
    const double lower = bulk - 12.0 * std::sqrt(bulk) - 30.0;
    if (lower > hint + 1.0 && lower < static_cast<double>(cap)) {
      skip_from = h.support_hint();
      skip_to = static_cast<std::int64_t>(lower);
    }
  }
  // Convex h and t <= 0 give log-concave terms.
  if (t <= 0.0 && h.is_power_divergence()) bulk = 0.0;
  const auto start = static_cast<std::int64_t>(std::min(std::max(bulk, hint), static_cast<double>(cap)));
  for (std::int64_t r = 0; r <= cap; ++r) {
    if (r == skip_from) {
      r = skip_to;
      log_pmf = poisson_log_pmf(r, rate);
    } else if (r > 0) {
      log_pmf += log_z - std::log(static_cast<double>(r));
      if (r % 256 == 0) log_pmf = poisson_log_pmf(r, rate);
    }
    const double hr = h(r, lambda);
    const double lw = t * hr + log_pmf;
    if (lw > peak) {
      const double scale = std::exp(peak - lw);
      s0 *= scale;
      s_xi *= scale;
      s_h *= scale;
      peak = lw;
    }
    if (lw - peak > kLogSkip) {
      const double w = std::exp(lw - peak);
      s0 += w;
      s_xi += static_cast<double>(r) * w;
      s_h += hr * w;
    }
    // Geometric bound on the remaining terms.
    const double log_q = lw - prev;
    if (r > start && log_q < 0.0 &&
        lw - peak + log_q - std::log1p(-std::exp(log_q)) < kLogTermFloor) {
      return TiltedMoments{peak + std::log(s0), s_xi / s0, s_h / s0};
    }
    prev = lw;
  }
  fail(ErrorKind::Divergent, "tilted Poisson series did not decay by r = " + std::to_string(cap) +
                                 " at t = " + std::to_string(t) + ", z = " + std::to_string(z));
}

double psi(double t, double z, const CellFunction& h, double lambda) {
  return std::exp(tilted_moments(t, z, h, lambda).log_psi);
}

double solve_z(double t, const CellFunction& h, double lambda) {
  require(lambda > 0.0 && std::isfinite(lambda), "lambda must be positive");
  if (t == 0.0) return lambda;
  const double log_lambda = std::log(lambda);
  const double s_min = log_lambda - std::log(kZRange);
  const double s_max = log_lambda + std::log(kZRange);
  auto gap = [&](double s) { return tilted_moments(t, std::exp(s), h, lambda).mean_xi - lambda; };

  double a = log_lambda;
  double fa = gap(a);
  if (fa == 0.0) return lambda;
  const double direction = fa < 0.0 ? 1.0 : -1.0;
  double step = 0.25;
  double b = a;
  double fb = fa;
  while (true) {
    b = std::clamp(a + direction * step, s_min, s_max);
    fb = gap(b);
    if ((fb > 0.0) != (fa > 0.0) || fb == 0.0) break;
    if (b == s_min || b == s_max) {
      fail(ErrorKind::NoRoot, "no root of the tilted mean equation in (lambda*1e-6, lambda*1e6)");
    }
    a = b;
    fa = fb;
    step *= 2.0;
  }
  numeric::RootOptions options;
  options.x_tolerance = 1e-15;
  const auto root = numeric::find_root(gap, a, fa, b, fb, options);
  const double z = std::exp(root.x);
  const auto m = tilted_moments(t, z, h, lambda);
  const double residual = std::exp(m.log_psi) * std::abs(m.mean_xi - lambda);
  if (!(residual < kResidualTarget * std::max(1.0, lambda))) {
    fail(ErrorKind::NoRoot, "tilted mean equation residual " + std::to_string(residual) +
                                " above target at t = " + std::to_string(t));
  }
  return z;
}

double c_of_t(double t, const CellFunction& h, double lambda) {
  const double z = solve_z(t, h, lambda);
  const double log_psi = tilted_moments(t, z, h, lambda).log_psi;
  return lambda * std::log(lambda) - lambda + z - lambda * std::log(z) + log_psi;
}

double c_prime(double t, const CellFunction& h, double lambda) {
  const double delta = 1e-3 * std::max(1.0, std::abs(t));
  auto central = [&](double d) {
    return (c_of_t(t + d, h, lambda) - c_of_t(t - d, h, lambda)) / (2.0 * d);
  };
  return (4.0 * central(delta / 2.0) - central(delta)) / 3.0;
}

SlopeResult exact_slope(const CellFunction& h, double lambda, double a1_limit) {
  require(std::isfinite(a1_limit), "alternative centring must be finite");
  const double a0 = tilted_moments(0.0, lambda, h, lambda).mean_h;
  const double diff = a1_limit - a0;
  if (std::abs(diff) <= 1e-12 * std::max(1.0, std::abs(a0))) {
    return SlopeResult{0.0, lambda, 0.0, 0.0, -diff};
  }
  const double sign = diff > 0.0 ? 1.0 : -1.0;
  auto f = [&](double t) { return c_prime(t, h, lambda) - a1_limit; };
  auto out_of_range = [&]() -> SlopeResult {
    fail(ErrorKind::OutOfRange, "limiting centring " + std::to_string(a1_limit) +
                                    " is not attained on the feasible tilt interval of " +
                                    h.describe());
  };

  double lo = 0.0;
  double flo = -diff;
  double step = 0.25;
  double hi = 0.0;
  double fhi = 0.0;
  bool bracketed = false;
  while (!bracketed) {
    const double t = sign * step;
    if (std::abs(t) > kMaxTilt) return out_of_range();
    try {
      const double ft = f(t);
      if ((ft > 0.0) != (flo > 0.0) || ft == 0.0) {
        hi = t;
        fhi = ft;
        bracketed = true;
      } else {
        lo = t;
        flo = ft;
        step *= 2.0;
      }
    } catch (const Error& e) {
      if (!is_error_kind(e)) throw;
      // Shrink toward the edge of the feasible interval.
      double bad = t;
      for (int i = 0; i < 80 && !bracketed; ++i) {
        const double mid = 0.5 * (lo + bad);
        if (std::abs(bad - lo) <= kEdgeWidth * std::max(1.0, std::abs(lo))) break;
        try {
          const double fm = f(mid);
          if ((fm > 0.0) != (flo > 0.0) || fm == 0.0) {
            hi = mid;
            fhi = fm;
            bracketed = true;
          } else {
            lo = mid;
            flo = fm;
          }
        } catch (const Error& inner) {
          if (!is_error_kind(inner)) throw;
          bad = mid;
        }
      }
      if (!bracketed) return out_of_range();
    }
  }
  numeric::RootOptions options;
  options.x_tolerance = 1e-13;
  const auto root = numeric::find_root(f, lo, flo, hi, fhi, options);
  SlopeResult out;
  out.t0 = root.x;
  out.z0 = solve_z(out.t0, h, lambda);
  out.c_value = c_of_t(out.t0, h, lambda);
  out.J = out.t0 * a1_limit - out.c_value;
  out.residual = root.fx;
  return out;
}

namespace {

double xlogx_ratio(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(x / y); }

/// P{ξ(ω) > k}
double tail_above(std::int64_t k, double omega) {
  return poisson_upper_tail(k + 1, PoissonRate(omega));
}

}  // namespace

double kullback_I(std::span<const double> b, double omega, Reading reading) {
  require(!b.empty(), "need at least one frequency");
  require(omega > 0.0 && std::isfinite(omega), "omega must be positive");
  const PoissonRate rate(omega);
  const auto m = static_cast<std::int64_t>(b.size()) - 1;
  numeric::CompensatedSum head;
  numeric::CompensatedSum mass;
  for (std::int64_t r = 0; r <= m; ++r) {
    const double br = b[static_cast<std::size_t>(r)];
    require(br >= 0.0, "frequencies must be non-negative");
    head += xlogx_ratio(br, poisson_pmf(r, rate));
    mass += br;
  }
  const double rest = 1.0 - mass.value();
  require(rest >= -1e-15, "frequencies must sum to at most one");
  const double denominator = reading == Reading::corrected ? tail_above(m, omega) : tail_above(m - 1, omega);
  return head.value() + xlogx_ratio(std::max(rest, 0.0), denominator);
}

UpsilonOptimum optimal_upsilon(int m, std::span<const double> b, double lambda, Reading reading,
                               std::optional<double> alpha_override) {
  require(m >= 0, "m must be non-negative");
  require(b.size() == static_cast<std::size_t>(m) + 1, "need exactly m+1 frequencies b_0..b_m");
  require(lambda > 0.0 && std::isfinite(lambda), "lambda must be positive");
  const PoissonRate null_rate(lambda);
  double mass = 0.0;
  double mean = 0.0;
  bool degenerate = true;
  for (int r = 0; r <= m; ++r) {
    const double br = b[static_cast<std::size_t>(r)];
    require(br > 0.0 && br < 1.0, "frequencies b_r must lie in (0, 1)");
    mass += br;
    mean += r * br;
    if (std::abs(br - poisson_pmf(r, null_rate)) > 1e-12) degenerate = false;
  }
  require(mass < 1.0, "frequencies b_0..b_m must sum to less than one");
  if (degenerate) fail(ErrorKind::DegenerateAlternative, "frequencies equal the null Poisson ones");
  const double rest = 1.0 - mass;
  if (!(lambda - mean > 0.0)) {
    fail(ErrorKind::NoRoot, "lambda - sum r*b_r must be positive for the omega equation");
  }
  const double k = rest / (lambda - mean);
  // ω·P{ξ>m−1}/P{ξ>m} is the conditional mean of ξ(ω) above m, which
  // increases from m+1 to infinity.
  if (!(k < 1.0 / (m + 1.0))) {
    fail(ErrorKind::NoRoot, "omega equation has no root: remaining mass cannot carry the mean");
  }
  auto F = [&](double s) {
    const double omega = std::exp(s);
    return k - tail_above(m, omega) / (omega * tail_above(m - 1, omega));
  };
  double a = std::log(lambda);
  double fa = F(a);
  const double direction = fa < 0.0 ? 1.0 : -1.0;
  double step = 0.5;
  double c = a;
  double fc = fa;
  if (fa != 0.0) {
    while (true) {
      c = a + direction * step;
      if (std::abs(c - std::log(lambda)) > std::log(1e12)) {
        fail(ErrorKind::NoRoot, "omega equation root outside the search range");
      }
      fc = F(c);
      if ((fc > 0.0) != (fa > 0.0) || fc == 0.0) break;
      a = c;
      fa = fc;
      step *= 2.0;
    }
  }
  const double s = fa == 0.0 ? a : numeric::find_root(F, a, fa, c, fc).x;

  UpsilonOptimum out;
  out.m = m;
  out.b.assign(b.begin(), b.end());
  out.omega = std::exp(s);
  const PoissonRate rate(out.omega);
  const double tail = tail_above(m, out.omega);
  const double tail_log_ratio = std::log(rest / tail);
  numeric::CompensatedSum a1;
  for (int r = 0; r <= m; ++r) {
    const double br = b[static_cast<std::size_t>(r)];
    out.a.push_back(std::log(br) - poisson_log_pmf(r, rate) - tail_log_ratio);
    a1 += out.a.back() * br;
  }
  out.a1_limit = a1.value();
  out.I_m = kullback_I(b, out.omega, reading);
  const double alpha = alpha_override.value_or(lambda);
  require(alpha > 0.0, "alpha override must be positive");
  out.J = lambda - out.omega + lambda * std::log(out.omega / alpha) + out.I_m;
  return out;
}

double J_mu0(double b0, double lambda, Reading reading) {
  const double b[] = {b0};
  return optimal_upsilon(0, b, lambda, reading).J;
}

}  // namespace mgof
