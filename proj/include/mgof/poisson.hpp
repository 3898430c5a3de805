#pragma once

// Poisson probabilities and moment functionals of cell functions. Every
// efficiency quantity of a symmetric statistic Σ h(η_m) reduces to moments of
// h(ξ) with ξ ~ Poi(λ); this module computes them by truncated series.

#include <cstdint>
#include <functional>

#include "mgof/cell_function.hpp"

namespace mgof {

inline constexpr double kDefaultSeriesTolerance = 1e-12;

/// Mean count per cell. Always positive and finite.
class PoissonRate {
 public:
  explicit PoissonRate(double lambda);
  double value() const noexcept { return lambda_; }

 private:
  double lambda_;
};

double poisson_log_pmf(std::int64_t r, PoissonRate rate);
double poisson_pmf(std::int64_t r, PoissonRate rate);

/// P{ξ >= k}; 1 for k <= 0.
double poisson_upper_tail(std::int64_t k, PoissonRate rate);

/// Hard cap on series length: ceil(λ + 25·sqrt(λ + 1) + 60).
std::int64_t series_cap(PoissonRate rate);

/// Number of terms (r = 0 .. length-1) needed so that the remaining tail of
/// Σ envelope(r)·π_r(λ) is below tol relative to the partial sum. Throws
/// NonConvergent when the cap is reached first.
std::int64_t series_length(PoissonRate rate, const std::function<double(std::int64_t)>& envelope,
                           std::int64_t support_hint, double tol);

/// E h(ξ), ξ ~ Poi(rate), with h bound to rate.
double expect(const CellFunction& h, PoissonRate rate, double tol = kDefaultSeriesTolerance);

/// E h(ξ), ξ ~ Poi(rate), with the kernel bound to a different mean count.
/// Used for cell expectations under alternatives, where the statistic keeps
/// its null normalisation λ_n while the cell mean is n·p_m.
double expect_bound(const CellFunction& h, double binding_lambda, PoissonRate rate,
                    double tol = kDefaultSeriesTolerance);

struct MomentSet {
  double mean_h = 0.0;    // E h(ξ)
  double var_h = 0.0;     // Var h(ξ)
  double cov_h_xi = 0.0;  // cov(h(ξ), ξ)
  double tau = 0.0;       // cov(h(ξ), ξ) / λ
  double sigma2 = 0.0;    // Var g(ξ), g = h − Eh − τ(ξ − λ)
  double rho = 0.0;       // corr(h(ξ) − τξ, ξ² − (2λ+1)ξ)
};

/// Ratio σ²(h)/Var h(ξ) below which h is treated as affine.
inline constexpr double kDegeneracyThreshold = 1e-12;

/// Moments of h(ξ) with h bound to rate. Throws DegenerateFunction when h is
/// affine in x on the support (σ²(h) = 0), where ρ is undefined.
MomentSet moment_set(const CellFunction& h, PoissonRate rate, double tol = kDefaultSeriesTolerance);

/// Δ^k h(0) = Σ_j (−1)^{k−j} C(k,j) h(j) for k in {1, 2, 3}, kernel bound to lambda.
double forward_difference(const CellFunction& h, int k, double lambda = 1.0);

}  // namespace mgof
