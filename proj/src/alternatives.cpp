#include "mgof/alternatives.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mgof/errors.hpp"
#include "mgof/numeric.hpp"

namespace mgof {

std::vector<double> uniform_probs(std::int64_t cells) {
  require(cells >= 2, "need at least two cells");
  return std::vector<double>(static_cast<std::size_t>(cells), 1.0 / static_cast<double>(cells));
}

void validate_probs(std::span<const double> probs, bool allow_zero) {
  require(probs.size() >= 2, "need at least two cells");
  for (double p : probs) {
    require(std::isfinite(p) && (allow_zero ? p >= 0.0 : p > 0.0),
            allow_zero ? "probabilities must be non-negative" : "probabilities must be positive");
  }
  const double total = numeric::compensated_sum(probs);
  require(std::abs(total - 1.0) <= 1e-12, "probabilities must sum to one (got " +
                                              std::to_string(total) + ")");
}

double epsilon_N(std::span<const double> probs) {
  const double cells = static_cast<double>(probs.size());
  numeric::CompensatedSum acc;
  for (double p : probs) {
    const double dev = cells * p - 1.0;
    acc += dev * dev;
  }
  return acc.value() / cells;
}

std::vector<double> pattern_values(const Pattern& pattern, std::int64_t cells) {
  require(cells >= 2, "need at least two cells");
  const auto n = static_cast<std::size_t>(cells);
  std::vector<double> deltas(n, 0.0);
  if (std::holds_alternative<HalfSplit>(pattern)) {
    const std::size_t half = n / 2;
    const double scale =
        n % 2 == 0 ? 1.0 : std::sqrt(static_cast<double>(n) / static_cast<double>(n - 1));
    for (std::size_t m = 0; m < half; ++m) {
      deltas[m] = scale;
      deltas[n - 1 - m] = -scale;
    }
  } else if (const auto* cosine = std::get_if<Cosine>(&pattern)) {
    require(cosine->k >= 1 && 2 * static_cast<std::int64_t>(cosine->k) < cells,
            "cosine pattern needs 1 <= k < N/2");
    for (std::size_t m = 0; m < n; ++m) {
      const double angle = 2.0 * std::numbers::pi * cosine->k * static_cast<double>(m + 1) /
                           static_cast<double>(n);
      deltas[m] = std::numbers::sqrt2 * std::cos(angle);
    }
  } else {
    const auto& custom = std::get<CustomPattern>(pattern);
    require(custom.deltas.size() == n, "custom pattern length must equal the number of cells");
    deltas = custom.deltas;
  }
  return deltas;
}

std::int64_t cell_count(const AlternativeSpec& alt) {
  if (const auto* probs = std::get_if<std::vector<double>>(&alt)) {
    return static_cast<std::int64_t>(probs->size());
  }
  return std::get<Contamination>(alt).cells;
}

std::vector<double> materialize(const AlternativeSpec& alt) {
  if (const auto* probs = std::get_if<std::vector<double>>(&alt)) {
    validate_probs(*probs);
    return *probs;
  }
  const auto& c = std::get<Contamination>(alt);
  require(std::isfinite(c.delta) && c.delta >= 0.0, "contamination delta must be >= 0");
  const auto deltas = pattern_values(c.pattern, c.cells);
  const double total = numeric::compensated_sum(deltas);
  if (std::abs(total) > 1e-9) {
    fail(ErrorKind::InvalidPattern, "pattern does not sum to zero (sum=" + std::to_string(total) + ")");
  }
  const double cells = static_cast<double>(c.cells);
  std::vector<double> probs;
  probs.reserve(deltas.size());
  for (double d : deltas) {
    const double p = (1.0 + c.delta * d) / cells;
    if (!(p > 0.0)) fail(ErrorKind::InvalidPattern, "contamination makes a cell probability <= 0");
    probs.push_back(p);
  }
  return probs;
}

std::string_view regime_name(Regime regime) {
  switch (regime) {
    case Regime::very_sparse: return "very_sparse";
    case Regime::sparse: return "sparse";
    case Regime::dense: return "dense";
  }
  return "unknown";
}

RegimeReport regime_report(std::int64_t n, std::int64_t cells, std::span<const double> probs,
                           const RegimeThresholds& thresholds) {
  require(n >= 1, "need n >= 1");
  require(cells >= 2, "need N >= 2");
  require(static_cast<std::int64_t>(probs.size()) == cells, "probability vector length must equal N");
  RegimeReport rep;
  rep.lambda_n = static_cast<double>(n) / static_cast<double>(cells);
  if (rep.lambda_n < thresholds.very_sparse_below) {
    rep.regime = Regime::very_sparse;
  } else if (rep.lambda_n > thresholds.dense_above) {
    rep.regime = Regime::dense;
  } else {
    rep.regime = Regime::sparse;
  }
  rep.eps_N = epsilon_N(probs);
  const double n_lambda = static_cast<double>(n) * rep.lambda_n;
  rep.pitman_scale = 1.0 / std::sqrt(n_lambda);
  rep.intermediate_scale = std::sqrt(n_lambda) * rep.eps_N;
  rep.eps_lambda = rep.eps_N * rep.lambda_n;
  rep.scale_large = rep.intermediate_scale >= thresholds.intermediate_scale_min;
  rep.eps_lambda_small = rep.eps_lambda <= thresholds.eps_lambda_max;
  return rep;
}

}  // namespace mgof
