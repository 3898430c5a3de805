#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mgof/cell_function.hpp"

namespace mgof {

/// Observed occupancy vector η_1..η_N of a multinomial allocation.
/// N is the vector length (trailing zero cells count), n the total.
class CellCounts {
 public:
  explicit CellCounts(std::vector<std::int64_t> counts);

  std::span<const std::int64_t> counts() const noexcept { return counts_; }
  std::int64_t n() const noexcept { return n_; }
  std::int64_t cells() const noexcept { return static_cast<std::int64_t>(counts_.size()); }
  /// λ_n = n / N
  double lambda() const noexcept { return static_cast<double>(n_) / static_cast<double>(cells()); }

 private:
  std::vector<std::int64_t> counts_;
  std::int64_t n_ = 0;
};

/// A named cell function. Aliases: chi_square = pds(1), log_likelihood =
/// pds(0), freeman_tukey = pds(−1/2), empty_cells = μ_0, collisions = C_n.
struct StatisticSpec {
  std::string name;
  CellFunction function;

  static StatisticSpec chi_square();
  static StatisticSpec log_likelihood();
  static StatisticSpec freeman_tukey();
  static StatisticSpec power_divergence(double d);
  static StatisticSpec empty_cells();
  static StatisticSpec collisions();
  static StatisticSpec count(int r);        // μ_r
  static StatisticSpec at_least(int l);     // w_l
  static StatisticSpec table(std::vector<double> values);
};

/// Parses "chi_square", "log_likelihood", "freeman_tukey", "empty_cells",
/// "collisions", "pds:D" (D may be a fraction such as -2/3), "count:R",
/// "at_least:L" or "table:a0,a1,...". Throws InvalidArgument.
StatisticSpec parse_statistic(std::string_view text);

/// Parses a real number or a fraction "p/q".
double parse_fraction(std::string_view text);

/// S_N^h = Σ_l h(η_l) with h bound to λ_n = n/N.
double evaluate_statistic(const StatisticSpec& spec, const CellCounts& data);

enum class ClosedForm { chi_square, log_likelihood, freeman_tukey };

/// Direct closed forms: λ⁻¹Σ(η−λ)², 2Ση·log(η/λ), 4Σ(√η − √λ)².
double closed_form_statistic(ClosedForm name, const CellCounts& data);

}  // namespace mgof
