#include "mgof/rho_table.hpp"

#include <cmath>

#include "mgof/cell_function.hpp"
#include "mgof/errors.hpp"
#include "mgof/io.hpp"
#include "mgof/poisson.hpp"
#include "mgof/statistics.hpp"

namespace mgof {

GridAxis parse_axis(const std::vector<std::string>& labels) {
  require(!labels.empty(), "grid axis must not be empty");
  GridAxis axis;
  for (const auto& label : labels) {
    axis.labels.push_back(label);
    axis.values.push_back(parse_fraction(label));
  }
  return axis;
}

GridAxis default_d_axis() {
  return parse_axis({"-2/3", "-1/2", "-1/3", "0", "1/3", "1/2", "2/3", "1", "3/2", "2", "5/2", "3",
                     "4", "5"});
}

GridAxis default_lambda_axis() {
  return parse_axis({"0.05", "0.1", "0.5", "1", "1.5", "2", "3", "10", "20", "50"});
}

RhoTable compute_rho_table(const GridAxis& d, const GridAxis& lambda) {
  RhoTable table{d, lambda, {}};
  for (double dv : d.values) {
    const auto h = CellFunction::power_divergence(dv);
    std::vector<double> row;
    for (double lv : lambda.values) row.push_back(std::abs(moment_set(h, PoissonRate(lv)).rho));
    table.abs_rho.push_back(std::move(row));
  }
  return table;
}

const std::vector<std::vector<double>>& published_rho_values() {
  static const std::vector<std::vector<double>> values = {
      {0.9933, 0.9838, 0.9400, 0.8768, 0.8314, 0.7811, 0.7266, 0.9257, 0.9740, 0.9900},
      {0.9942, 0.9838, 0.9402, 0.8909, 0.8545, 0.8321, 0.8001, 0.9480, 0.9803, 0.9920},
      {0.9950, 0.9839, 0.9620, 0.9192, 0.89891, 0.8743, 0.8573, 0.9615, 0.9834, 0.9940},
      {0.9970, 0.9940, 0.9720, 0.9525, 0.9400, 0.9350, 0.9369, 0.9793, 0.9897, 0.9960},
      {0.9983, 0.9840, 0.9845, 0.9758, 0.9699, 0.9714, 0.9797, 0.9928, 0.9961, 0.9980},
      {0.9989, 0.9979, 0.9900, 0.9898, 0.9815, 0.9791, 0.9879, 0.9972, 0.9993, 0.9985},
      {0.9999, 0.9924, 0.9901, 0.9900, 0.9930, 0.9945, 0.9961, 0.9977, 0.9996, 0.9990},
      {1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00, 1.00},
      {0.9984, 0.9844, 0.9900, 0.9901, 0.9930, 0.9925, 0.9879, 0.9977, 0.9997, 0.9989},
      {0.9917, 0.9843, 0.9618, 0.9617, 0.9583, 0.9632, 0.9716, 0.9883, 0.9929, 0.9960},
      {0.9759, 0.9519, 0.9220, 0.9192, 0.9237, 0.9323, 0.9389, 0.9704, 0.9835, 0.9920},
      {0.9449, 0.9391, 0.8631, 0.8627, 0.8876, 0.8933, 0.8981, 0.9526, 0.9708, 0.9880},
      {0.7917, 0.8049, 0.7443, 0.7495, 0.7736, 0.7921, 0.8164, 0.8989, 0.9392, 0.9720},
      {0.6323, 0.6708, 0.6047, 0.6225, 0.6582, 0.6741, 0.7103, 0.8363, 0.9012, 0.9520},
  };
  return values;
}

RhoComparison compare_with_published(const RhoTable& table, double tolerance) {
  const auto& published = published_rho_values();
  require(table.abs_rho.size() == published.size() &&
              table.lambda.values.size() == published.front().size(),
          "comparison needs the default grid");
  RhoComparison out;
  out.tolerance = tolerance;
  for (std::size_t i = 0; i < published.size(); ++i) {
    for (std::size_t j = 0; j < published[i].size(); ++j) {
      ++out.cells;
      const double computed = table.abs_rho[i][j];
      if (std::abs(computed - published[i][j]) <= tolerance) {
        ++out.matched;
      } else {
        out.mismatches.push_back(
            {table.d.labels[i], table.lambda.labels[j], computed, published[i][j]});
      }
    }
  }
  return out;
}

std::string rho_table_csv(const RhoTable& table) {
  std::string csv = "d";
  for (const auto& l : table.lambda.labels) csv += "," + l;
  csv += "\n";
  for (std::size_t i = 0; i < table.abs_rho.size(); ++i) {
    csv += table.d.labels[i];
    for (double v : table.abs_rho[i]) csv += "," + format_fixed(v, 4);
    csv += "\n";
  }
  return csv;
}

}  // namespace mgof
