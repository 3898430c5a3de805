#pragma once

// Efficiency functionals of h-tests: centring constants, efficacy, Pitman
// power, ρ expansions, intermediate slopes with their validity domains, and
// the second-order power term of the chi-square test.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mgof/alternatives.hpp"
#include "mgof/poisson.hpp"
#include "mgof/statistics.hpp"

namespace mgof {

/// A(h) = N⁻¹ Σ_m E h(ξ_m), ξ_m ~ Poi(n p_m), with h bound to λ_n = n/N.
double centering_constant(const CellFunction& h, std::span<const double> probs, std::int64_t n,
                          double tol = kDefaultSeriesTolerance);

struct Efficacy {
  double lambda_n = 0.0;
  double eps_N = 0.0;
  double A0 = 0.0;
  double A1 = 0.0;
  double sigma0 = 0.0;
  double rho = 0.0;
  double x_exact = 0.0;   // √N (A1 − A0) / σ0
  double x_approx = 0.0;  // √(nλ_n/2) ρ ε(N)
  double max_relative_deviation = 0.0;  // max_m |N p_m − 1|
};

/// Throws DegenerateFunction when σ0 = 0.
Efficacy efficacy(const CellFunction& h, std::span<const double> null_probs,
                  std::span<const double> alt_probs, std::int64_t n);

/// Φ(|ρ|/√2 − u_α)
double pitman_power(double rho, double alpha);

/// ρ²(h, λ) / ρ²(g, λ)
double pitman_relative_efficiency(const CellFunction& h, const CellFunction& g, double lambda);

enum class ExpansionRegime { small_lambda, large_lambda };

struct ExpansionResult {
  ExpansionRegime regime = ExpansionRegime::small_lambda;
  /// ρ ≈ 1 − coefficient·λ (small λ) or 1 − coefficient/λ (large λ).
  double coefficient = 0.0;
  /// Small λ, power divergence only: 3(3^d − 2^{d+1} + 1)² / (8(2^d − 1)²),
  /// or (3/8)(log(3/4)/log 2)² at d = 0.
  std::optional<double> closed_form_coefficient;

  double predicted_rho(double lambda) const;
};

/// Small λ: coefficient (1/6)(Δ³h(0)/Δ²h(0))²; throws ExpansionInapplicable
/// when Δ²h(0) = 0. Large λ: (d−1)²/6 for power divergence kernels only.
ExpansionResult rho_expansion(const CellFunction& h, ExpansionRegime regime);

/// Small-λ coefficient of a power-divergence kernel from its closed form.
double pds_small_lambda_coefficient(double d);

struct IntermediateSlope {
  double rho = 0.0;
  double slope = 0.0;               // nλ_n ε² ρ² / 4
  double alpha_level_approx = 1.0;  // exp(−slope)
  double x_N = 0.0;                 // √(nλ_n/2) ρ ε
  double normal_tail_slope = 0.0;   // −log(1 − Φ(x_N))
};

IntermediateSlope intermediate_slope(const CellFunction& h, std::int64_t n, std::int64_t cells,
                                     double eps);

/// One asymptotic validity condition evaluated at finite (n, N, ε). `ratio`
/// is oriented so that the condition reads "ratio ≪ 1".
struct BoundCheck {
  std::string name;
  std::string condition;
  double bound = 0.0;  // the ε bound when the condition caps ε, else the compared quantity
  double ratio = 0.0;
  bool admissible = false;
};

struct AdmissibilityOptions {
  double slack = 0.1;
  RegimeThresholds thresholds{};
};

struct AdmissibilityReport {
  Regime regime = Regime::sparse;
  double lambda_n = 0.0;
  double slack = 0.1;
  std::vector<BoundCheck> checks;

  const BoundCheck* find(std::string_view name) const;
};

/// Validity domains of the slope approximation for the power-divergence
/// kernel with parameter d.
AdmissibilityReport admissibility(double d, std::int64_t n, std::int64_t cells, double eps,
                                  const AdmissibilityOptions& options = {});
/// Dispatches on the statistic: power divergence kernels as above, count
/// statistics μ_0, μ_1, μ_2 and C_n by their own domain.
AdmissibilityReport admissibility(const CellFunction& h, std::int64_t n, std::int64_t cells,
                                  double eps, const AdmissibilityOptions& options = {});

/// True when E exp{a|h(ξ)|} < ∞ for some a > 0.
bool cramer_class(const CellFunction& h);

enum class SawtoothConvention {
  printed,   // u − ⌊u⌋ + 1/2, range [1/2, 3/2)
  centered,  // u − ⌊u⌋ − 1/2, range [−1/2, 1/2)
};

double sawtooth(double u, SawtoothConvention convention = SawtoothConvention::printed);

/// t_α = 2^{−1/2} − u_α
double soae_t_alpha(double alpha);

/// Second-order (n λ_n)^{−1/2} power term of the chi-square test:
/// (2π)^{−1/2} e^{−t²/2} [ (1−t²)/(3√2) + t/2 + √2·S₁(t√(nλ_n/2) + n/2) ].
double soae_phi2_chisquare(double alpha, std::int64_t n, std::int64_t cells,
                           SawtoothConvention convention = SawtoothConvention::printed);

struct EfficiencyReport {
  std::string statistic;
  std::int64_t n = 0;
  std::int64_t cells = 0;
  Efficacy efficacy;
  std::vector<std::pair<double, double>> pitman_power;  // (α, power)
  IntermediateSlope slope;
  double normal_tail_slope_exact = 0.0;  // −log(1 − Φ(x_N)) at the exact efficacy
  RegimeReport regime;
  AdmissibilityReport admissibility;
};

EfficiencyReport efficiency_report(const StatisticSpec& spec, std::int64_t n,
                                   std::span<const double> alt_probs,
                                   std::span<const double> alphas,
                                   const AdmissibilityOptions& options = {});

}  // namespace mgof
