#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

namespace mgof {

/// Deviation pattern Δ_1..Δ_N for contamination alternatives p_m = N⁻¹(1 + δΔ_m).
struct HalfSplit {};
struct Cosine {
  int k = 1;  // Δ_m = √2·cos(2πkm/N)
};
struct CustomPattern {
  std::vector<double> deltas;
};
using Pattern = std::variant<HalfSplit, Cosine, CustomPattern>;

struct Contamination {
  std::int64_t cells = 2;
  double delta = 0.0;
  Pattern pattern = HalfSplit{};
};

/// Either an explicit probability vector or a contamination pattern.
using AlternativeSpec = std::variant<std::vector<double>, Contamination>;

std::vector<double> uniform_probs(std::int64_t cells);

/// Checks that probs is a probability vector: entries > 0 (or >= 0 when
/// allow_zero), sum within 1e-12 of one. Throws InvalidArgument.
void validate_probs(std::span<const double> probs, bool allow_zero = false);

/// ε(N) = N⁻¹ Σ (N p_m − 1)²
double epsilon_N(std::span<const double> probs);

/// Δ_1..Δ_N for a pattern on N cells. half_split puts +1 on the first ⌊N/2⌋
/// cells and −1 on the last ⌊N/2⌋; for odd N the middle cell is 0 and the
/// ±1 entries are scaled by √(N/(N−1)) so that N⁻¹ΣΔ² = 1.
std::vector<double> pattern_values(const Pattern& pattern, std::int64_t cells);

/// Explicit p vector. Throws InvalidPattern if ΣΔ deviates from 0 by more
/// than 1e-9 or any p_m <= 0.
std::vector<double> materialize(const AlternativeSpec& alt);
std::int64_t cell_count(const AlternativeSpec& alt);

enum class Regime { very_sparse, sparse, dense };
std::string_view regime_name(Regime regime);

struct RegimeThresholds {
  double very_sparse_below = 0.2;
  double dense_above = 5.0;
  /// √(nλ_n)·ε(N) at or above this counts as "large" (intermediate, not Pitman).
  double intermediate_scale_min = 3.0;
  /// ε(N)·λ_n at or below this counts as "small".
  double eps_lambda_max = 0.1;
};

struct RegimeReport {
  double lambda_n = 0.0;
  Regime regime = Regime::sparse;
  double eps_N = 0.0;
  double pitman_scale = 0.0;      // (nλ_n)^{-1/2}
  double intermediate_scale = 0.0;  // √(nλ_n)·ε(N)
  double eps_lambda = 0.0;        // ε(N)·λ_n
  bool scale_large = false;
  bool eps_lambda_small = false;
};

RegimeReport regime_report(std::int64_t n, std::int64_t cells, std::span<const double> probs,
                           const RegimeThresholds& thresholds = {});

}  // namespace mgof
