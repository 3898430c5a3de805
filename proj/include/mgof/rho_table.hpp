#pragma once

// The d × λ grid of |ρ(h_d, λ)| and its comparison with published values.

#include <string>
#include <vector>

namespace mgof {

struct GridAxis {
  std::vector<std::string> labels;  // as given, e.g. "-2/3"
  std::vector<double> values;
};

GridAxis parse_axis(const std::vector<std::string>& labels);

/// d ∈ {−2/3, −1/2, −1/3, 0, 1/3, 1/2, 2/3, 1, 3/2, 2, 5/2, 3, 4, 5}
GridAxis default_d_axis();
/// λ ∈ {0.05, 0.1, 0.5, 1, 1.5, 2, 3, 10, 20, 50}
GridAxis default_lambda_axis();

struct RhoTable {
  GridAxis d;
  GridAxis lambda;
  std::vector<std::vector<double>> abs_rho;  // [d][λ]
};

RhoTable compute_rho_table(const GridAxis& d, const GridAxis& lambda);

/// Published |ρ| on the default grid, [d][λ], as printed.
const std::vector<std::vector<double>>& published_rho_values();

struct RhoDiscrepancy {
  std::string d;
  std::string lambda;
  double computed = 0.0;
  double published = 0.0;
};

struct RhoComparison {
  int cells = 0;
  int matched = 0;
  double tolerance = 0.0;
  std::vector<RhoDiscrepancy> mismatches;
};

/// Compares a table computed on the default grid with the published values.
RhoComparison compare_with_published(const RhoTable& table, double tolerance = 0.01);

/// CSV with a header row of λ labels and one row per d, entries to 4 decimals.
std::string rho_table_csv(const RhoTable& table);

}  // namespace mgof
