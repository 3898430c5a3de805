#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace mgof {

/// Power-divergence kernel h_d(x) = 2/(d(d+1)) · x · ((x/λ)^d − 1), with the
/// d → 0 limit 2x·log(x/λ). Requires d > −1.
struct PowerDivergence {
  double d = 1.0;
};

/// I{x = r}
struct Indicator {
  int r = 0;
};

/// I{x >= l}
struct TailIndicator {
  int l = 1;
};

/// (x − 1)·I{x > 1}
struct Collision {};

/// a_x for x <= m, zero beyond.
struct FiniteTable {
  std::vector<double> values;
};

/// Below this |d| the power-divergence kernel switches to the logarithmic form.
inline constexpr double kLogBranchThreshold = 1e-6;

/// A real function of a cell count. Power-divergence kernels depend on the
/// mean count λ they are bound to; all other kinds ignore it.
class CellFunction {
 public:
  using Kind = std::variant<PowerDivergence, Indicator, TailIndicator, Collision, FiniteTable>;

  explicit CellFunction(Kind kind);

  static CellFunction power_divergence(double d) { return CellFunction(PowerDivergence{d}); }
  static CellFunction indicator(int r) { return CellFunction(Indicator{r}); }
  static CellFunction tail_indicator(int l) { return CellFunction(TailIndicator{l}); }
  static CellFunction collision() { return CellFunction(Collision{}); }
  static CellFunction table(std::vector<double> values) {
    return CellFunction(FiniteTable{std::move(values)});
  }

  /// h(x) with the kernel bound to `lambda`. 0·log 0 := 0 and h_d(0) := 0.
  double operator()(std::int64_t x, double lambda) const;

  const Kind& kind() const noexcept { return kind_; }
  bool is_power_divergence() const noexcept;
  /// d for power-divergence kernels; throws InvalidArgument otherwise.
  double pds_parameter() const;

  /// One past the last count at which h can change shape (indicator position,
  /// table length). Series never stop before this point.
  std::int64_t support_hint() const noexcept;

  /// Slope of h on counts >= support_hint() when h is affine there; empty
  /// for power-divergence kernels.
  std::optional<double> tail_slope() const noexcept;

  std::string describe() const;

 private:
  Kind kind_;
};

}  // namespace mgof
