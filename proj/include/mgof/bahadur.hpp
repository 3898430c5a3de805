#pragma once

// Exact (Bahadur) slopes of h-tests against fixed alternatives: the
// exponentially tilted Poisson moments ψ_h(t, z), the cumulant c_h(t), the
// Legendre-type slope J, and the slope-optimal statistic of the class Υ_m.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "mgof/cell_function.hpp"

namespace mgof {

/// Moments of ξ ~ Poi(z) under the tilt e^{t h(ξ)}, h bound to lambda.
struct TiltedMoments {
  double log_psi = 0.0;  // log E e^{t h(ξ)}
  double mean_xi = 0.0;  // E ξ e^{th} / ψ
  double mean_h = 0.0;   // E h e^{th} / ψ
};

/// Throws Divergent for a kernel outside the Cramér class at t > 0, or when
/// the tilted terms stop decaying before the series cap.
TiltedMoments tilted_moments(double t, double z, const CellFunction& h, double lambda);

/// ψ_h(t, z) = E exp{t h(ξ(z))}
double psi(double t, double z, const CellFunction& h, double lambda);

/// z_h(t): the root of E(ξ(z) − λ) e^{t h(ξ(z))} = 0 on (λ·1e−6, λ·1e6).
double solve_z(double t, const CellFunction& h, double lambda);

/// c_h(t) = λ log λ − λ + z − λ log z + log ψ_h(t, z), z = z_h(t).
double c_of_t(double t, const CellFunction& h, double lambda);

/// c′_h(t) by a Richardson-extrapolated central difference.
double c_prime(double t, const CellFunction& h, double lambda);

struct SlopeResult {
  double t0 = 0.0;
  double z0 = 0.0;
  double c_value = 0.0;
  double J = 0.0;
  double residual = 0.0;  // c′(t0) − Ã₁
};

/// J(h, H₁) = t0·Ã₁ − c_h(t0) with c′_h(t0) = Ã₁. Throws OutOfRange when Ã₁
/// cannot be reached on the feasible tilt interval.
SlopeResult exact_slope(const CellFunction& h, double lambda, double a1_limit);

/// Index reading of the Kullback–Sanov tail denominator: `printed` sums the
/// null probabilities to m−1, `corrected` to m.
enum class Reading { printed, corrected };

/// Σ_{r≤m} b_r log(b_r/π_r(ω)) + (1−B) log((1−B)/(1 − Σ π_r(ω))), m = b.size()−1.
double kullback_I(std::span<const double> b, double omega, Reading reading = Reading::corrected);

struct UpsilonOptimum {
  int m = 0;
  std::vector<double> b;
  double omega = 0.0;
  std::vector<double> a;
  double I_m = 0.0;
  double J = 0.0;
  /// Ã₁ of the optimal table statistic: Σ a_r b_r.
  double a1_limit = 0.0;
};

/// Slope-optimal h̃(x) = Σ_{r≤m} a_r I{x = r} for limiting cell frequencies
/// b_r = lim N⁻¹ E₁ μ_r. J = λ − ω + λ log(ω/α) + I_m with α = λ unless
/// alpha_override is given. Throws DegenerateAlternative when b equals the
/// null frequencies and NoRoot when the ω-equation has no solution.
UpsilonOptimum optimal_upsilon(int m, std::span<const double> b, double lambda,
                               Reading reading = Reading::corrected,
                               std::optional<double> alpha_override = std::nullopt);

/// Slope of the empty-cells statistic μ₀ at limiting frequency b₀.
double J_mu0(double b0, double lambda, Reading reading = Reading::corrected);

}  // namespace mgof
