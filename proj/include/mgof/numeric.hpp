#pragma once

// Small numerical toolkit shared by the statistical modules: compensated
// summation, the standard normal distribution, and bracketed root search.

#include <cstddef>
#include <functional>
#include <span>

namespace mgof::numeric {

/// Neumaier's variant of Kahan summation.
class CompensatedSum {
 public:
  void add(double x) noexcept;
  double value() const noexcept { return sum_ + carry_; }

  CompensatedSum& operator+=(double x) noexcept {
    add(x);
    return *this;
  }

 private:
  double sum_ = 0.0;
  double carry_ = 0.0;
};

double compensated_sum(std::span<const double> values) noexcept;

double normal_pdf(double x) noexcept;
double normal_cdf(double x) noexcept;
/// Upper tail 1 - Φ(x), accurate in the far tail.
double normal_sf(double x) noexcept;
/// log(1 - Φ(x)); finite for every finite x (asymptotic series beyond x = 30).
double log_normal_sf(double x) noexcept;

/// Inverse of Φ. Acklam's rational approximation (relative error 1.15e-9)
/// followed by one Halley step against std::erfc, giving ~1e-15 in practice.
/// Requires 0 < p < 1.
double normal_quantile(double p);

/// u_α with Φ(-u_α) = α, i.e. the upper α point of N(0,1).
double upper_normal_point(double alpha);

struct RootResult {
  double x = 0.0;
  double fx = 0.0;
  int iterations = 0;
};

struct RootOptions {
  double x_tolerance = 1e-14;  // relative to max(1, |x|)
  double f_tolerance = 0.0;    // stop as soon as |f| <= f_tolerance
  int max_iterations = 300;
};

/// Safeguarded secant/bisection search on a sign-changing bracket [a, b].
/// Secant (Illinois-modified regula falsi) steps are taken while they shrink
/// the bracket fast enough; otherwise the step falls back to bisection.
/// Throws Error(NoRoot) if f(a) and f(b) have the same strict sign.
RootResult find_root(const std::function<double(double)>& f, double a, double b,
                     const RootOptions& options = {});

/// Same as find_root, with the endpoint values already known.
RootResult find_root(const std::function<double(double)>& f, double a, double fa, double b,
                     double fb, const RootOptions& options = {});

}  // namespace mgof::numeric
