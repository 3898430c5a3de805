#include "mgof/numeric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "mgof/errors.hpp"

namespace mgof::numeric {

void CompensatedSum::add(double x) noexcept {
  const double t = sum_ + x;
  if (std::abs(sum_) >= std::abs(x)) {
    carry_ += (sum_ - t) + x;
  } else {
    carry_ += (x - t) + sum_;
  }
  sum_ = t;
}

double compensated_sum(std::span<const double> values) noexcept {
  CompensatedSum acc;
  for (double v : values) acc.add(v);
  return acc.value();
}

double normal_pdf(double x) noexcept {
  return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double normal_cdf(double x) noexcept { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_sf(double x) noexcept { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double log_normal_sf(double x) noexcept {
  if (x < 30.0) return std::log(normal_sf(x));
  // Mills ratio series: 1 - Φ(x) = φ(x)/x · (1 - 1/x² + 3/x⁴ - 15/x⁶ + 105/x⁸ - ...)
  const double inv2 = 1.0 / (x * x);
  const double series = 1.0 + inv2 * (-1.0 + inv2 * (3.0 + inv2 * (-15.0 + inv2 * 105.0)));
  return -0.5 * x * x - std::log(x) - 0.5 * std::log(2.0 * std::numbers::pi) + std::log(series);
}

namespace {

// Acklam's coefficients for the central and tail rational approximations.
constexpr std::array<double, 6> kA = {-3.969683028665376e+01, 2.209460984245205e+02,
                                      -2.759285104469687e+02, 1.383577518672690e+02,
                                      -3.066479806614716e+01, 2.506628277459239e+00};
constexpr std::array<double, 5> kB = {-5.447609879822406e+01, 1.615858368580409e+02,
                                      -1.556989798598866e+02, 6.680131188771972e+01,
                                      -1.328068155288572e+01};
constexpr std::array<double, 6> kC = {-7.784894002430293e-03, -3.223964580411365e-01,
                                      -2.400758277161838e+00, -2.549732539343734e+00,
                                      4.374664141464968e+00,  2.938163982698783e+00};
constexpr std::array<double, 4> kD = {7.784695709041462e-03, 3.224671290700398e-01,
                                      2.445134137142996e+00, 3.754408661907416e+00};
constexpr double kLowBreak = 0.02425;

double acklam(double p) {
  if (p < kLowBreak) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((kC[0] * q + kC[1]) * q + kC[2]) * q + kC[3]) * q + kC[4]) * q + kC[5]) /
           ((((kD[0] * q + kD[1]) * q + kD[2]) * q + kD[3]) * q + 1.0);
  }
  if (p > 1.0 - kLowBreak) return -acklam(1.0 - p);
  const double q = p - 0.5;
  const double r = q * q;
  return (((((kA[0] * r + kA[1]) * r + kA[2]) * r + kA[3]) * r + kA[4]) * r + kA[5]) * q /
         (((((kB[0] * r + kB[1]) * r + kB[2]) * r + kB[3]) * r + kB[4]) * r + 1.0);
}

}  // namespace

double normal_quantile(double p) {
  require(p > 0.0 && p < 1.0, "normal_quantile requires 0 < p < 1");
  double x = acklam(p);
  // One Halley step; the error of the rational approximation is small enough
  // that a single step reaches double precision.
  const double e = normal_cdf(x) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  x -= u / (1.0 + 0.5 * x * u);
  return x;
}

double upper_normal_point(double alpha) {
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
  return -normal_quantile(alpha);
}

RootResult find_root(const std::function<double(double)>& f, double a, double b,
                     const RootOptions& options) {
  return find_root(f, a, f(a), b, f(b), options);
}

RootResult find_root(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, const RootOptions& options) {
  if (fa == 0.0) return {a, fa, 0};
  if (fb == 0.0) return {b, fb, 0};
  if (!std::isfinite(fa) || !std::isfinite(fb) || (fa > 0.0) == (fb > 0.0)) {
    fail(ErrorKind::NoRoot, "bracket endpoints do not change sign");
  }
  if (a > b) {
    std::swap(a, b);
    std::swap(fa, fb);
  }

  RootResult best = std::abs(fa) < std::abs(fb) ? RootResult{a, fa, 0} : RootResult{b, fb, 0};
  // Illinois weights are applied to copies so `best` keeps true residuals.
  double wa = fa;
  double wb = fb;
  enum class Side { none, left, right } last = Side::none;
  int slow_steps = 0;

  for (int it = 1; it <= options.max_iterations; ++it) {
    const double width = b - a;
    double x = b - wb * (b - a) / (wb - wa);
    if (slow_steps >= 2 || !(x > a && x < b)) x = 0.5 * (a + b);
    if (x <= a || x >= b) break;  // bracket exhausted at machine precision

    const double fx = f(x);
    if (!std::isfinite(fx)) fail(ErrorKind::NoRoot, "non-finite function value inside bracket");
    if (std::abs(fx) < std::abs(best.fx)) best = {x, fx, it};
    best.iterations = it;
    if (fx == 0.0 || std::abs(fx) <= options.f_tolerance) return {x, fx, it};

    if ((fx > 0.0) == (fa > 0.0)) {
      a = x;
      fa = fx;
      wa = fx;
      if (last == Side::left) wb *= 0.5;
      last = Side::left;
    } else {
      b = x;
      fb = fx;
      wb = fx;
      if (last == Side::right) wa *= 0.5;
      last = Side::right;
    }

    slow_steps = (b - a) > 0.5 * width ? slow_steps + 1 : 0;
    if (b - a <= options.x_tolerance * std::max(1.0, std::abs(x))) break;
  }
  return best;
}

}  // namespace mgof::numeric
