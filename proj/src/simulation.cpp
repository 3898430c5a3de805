#include "mgof/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "mgof/alternatives.hpp"
#include "mgof/errors.hpp"
#include "mgof/numeric.hpp"
#include "mgof/poisson.hpp"

namespace mgof {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::vector<double> resolved_probs(const SimConfig& cfg) {
  if (cfg.probs.empty()) return uniform_probs(cfg.cells);
  require(static_cast<std::int64_t>(cfg.probs.size()) == cfg.cells,
          "probability vector length must equal N");
  validate_probs(cfg.probs, true);
  return cfg.probs;
}

void validate(const SimConfig& cfg) {
  require(cfg.n >= 1, "n must be at least 1");
  require(cfg.cells >= 2, "N must be at least 2");
  require(cfg.replications >= 1, "replications must be at least 1");
  require(cfg.alpha > 0.0 && cfg.alpha < 1.0, "alpha must lie in (0, 1)");
}

unsigned worker_count(unsigned requested, std::int64_t replications) {
  unsigned w = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::int64_t>(w, replications));
}

double mean_of(std::span<const double> x) {
  numeric::CompensatedSum acc;
  for (double v : x) acc += v;
  return acc.value() / static_cast<double>(x.size());
}

double variance_of(std::span<const double> x, double mean) {
  if (x.size() < 2) return 0.0;
  numeric::CompensatedSum acc;
  for (double v : x) acc += (v - mean) * (v - mean);
  return acc.value() / static_cast<double>(x.size() - 1);
}

double exceed_rate(std::span<const double> x, double threshold) {
  const auto hits = std::count_if(x.begin(), x.end(), [&](double v) { return v > threshold; });
  return static_cast<double>(hits) / static_cast<double>(x.size());
}

double binomial_se(double p, std::size_t r) { return std::sqrt(p * (1.0 - p) / static_cast<double>(r)); }

}  // namespace

std::string_view critical_mode_name(CriticalMode mode) {
  return mode == CriticalMode::normal_approx ? "normal_approx" : "empirical_null";
}

CriticalMode parse_critical_mode(std::string_view text) {
  if (text == "normal_approx") return CriticalMode::normal_approx;
  if (text == "empirical_null") return CriticalMode::empirical_null;
  fail(ErrorKind::InvalidArgument, "unknown critical mode '" + std::string(text) + "'");
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t domain, std::uint64_t k) {
  return splitmix64(splitmix64(splitmix64(seed) ^ domain) ^ k);
}

CellCounts sample_counts(std::int64_t n, std::span<const double> probs, std::mt19937_64& rng) {
  require(n >= 1, "n must be at least 1");
  validate_probs(probs, true);
  const std::size_t cells = probs.size();
  std::vector<double> suffix(cells + 1, 0.0);
  for (std::size_t m = cells; m-- > 0;) suffix[m] = suffix[m + 1] + probs[m];
  std::vector<std::int64_t> counts(cells, 0);
  std::int64_t remaining = n;
  for (std::size_t m = 0; m + 1 < cells && remaining > 0; ++m) {
    const double q = suffix[m] > 0.0 ? std::clamp(probs[m] / suffix[m], 0.0, 1.0) : 0.0;
    std::binomial_distribution<std::int64_t> draw(remaining, q);
    counts[m] = draw(rng);
    remaining -= counts[m];
  }
  counts[cells - 1] += remaining;
  return CellCounts(std::move(counts));
}

std::vector<double> simulate_statistic(const SimConfig& cfg, std::uint64_t domain) {
  validate(cfg);
  const auto probs = resolved_probs(cfg);
  const double lambda = static_cast<double>(cfg.n) / static_cast<double>(cfg.cells);
  std::vector<double> table(static_cast<std::size_t>(cfg.n) + 1);
  for (std::int64_t r = 0; r <= cfg.n; ++r) {
    table[static_cast<std::size_t>(r)] = cfg.statistic.function(r, lambda);
  }
  const auto reps = static_cast<std::size_t>(cfg.replications);
  std::vector<double> values(reps);
  auto run = [&](std::size_t first, std::size_t stride) {
    for (std::size_t k = first; k < reps; k += stride) {
      std::mt19937_64 rng(substream_seed(cfg.seed, domain, k));
      const auto counts = sample_counts(cfg.n, probs, rng);
      numeric::CompensatedSum s;
      for (auto c : counts.counts()) s += table[static_cast<std::size_t>(c)];
      values[k] = s.value();
    }
  };
  const unsigned workers = worker_count(cfg.threads, cfg.replications);
  if (workers <= 1) {
    run(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w, workers);
  }
  return values;
}

double ks_distance_normal(std::span<const double> sample) {
  require(!sample.empty(), "sample must be non-empty");
  std::vector<double> z(sample.begin(), sample.end());
  std::sort(z.begin(), z.end());
  const double r = static_cast<double>(z.size());
  double d = 0.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double f = numeric::normal_cdf(z[i]);
    d = std::max({d, static_cast<double>(i + 1) / r - f, f - static_cast<double>(i) / r});
  }
  return d;
}

double empirical_critical_value(std::span<const double> sample, double alpha) {
  require(!sample.empty(), "sample must be non-empty");
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
  std::vector<double> sorted(sample.begin(), sample.end());
  std::sort(sorted.begin(), sorted.end());
  const auto rank = static_cast<std::size_t>(
      std::ceil((1.0 - alpha) * static_cast<double>(sorted.size() + 1) - 1e-9));
  return sorted[std::min(rank, sorted.size()) - 1];
}

double normal_critical_value(const CellFunction& h, std::int64_t n, std::int64_t cells, double alpha) {
  const PoissonRate rate(static_cast<double>(n) / static_cast<double>(cells));
  const auto moments = moment_set(h, rate);
  const double big_n = static_cast<double>(cells);
  return big_n * moments.mean_h + numeric::upper_normal_point(alpha) * std::sqrt(moments.sigma2 * big_n);
}

SimResult mc_null_distribution(const SimConfig& cfg) {
  validate(cfg);
  SimResult out;
  out.replications = cfg.replications;
  out.rng.seed = cfg.seed;
  out.rng.domain = kNullDomain;
  const PoissonRate rate(static_cast<double>(cfg.n) / static_cast<double>(cfg.cells));
  const auto moments = moment_set(cfg.statistic.function, rate);
  out.A0 = moments.mean_h;
  out.sigma0 = std::sqrt(moments.sigma2);
  out.values = simulate_statistic(cfg, kNullDomain);
  out.empirical_mean = mean_of(out.values);
  out.empirical_var = variance_of(out.values, out.empirical_mean);
  const double big_n = static_cast<double>(cfg.cells);
  std::vector<double> z(out.values.size());
  for (std::size_t k = 0; k < z.size(); ++k) {
    z[k] = (out.values[k] - big_n * out.A0) / (out.sigma0 * std::sqrt(big_n));
  }
  out.standardized_mean = mean_of(z);
  out.standardized_var = variance_of(z, out.standardized_mean);
  out.ks_distance = ks_distance_normal(z);
  out.threshold = cfg.critical_mode == CriticalMode::normal_approx
                      ? big_n * out.A0 + numeric::upper_normal_point(cfg.alpha) * out.sigma0 * std::sqrt(big_n)
                      : empirical_critical_value(out.values, cfg.alpha);
  out.rejection_rate = exceed_rate(out.values, out.threshold);
  out.rejection_se = binomial_se(out.rejection_rate, out.values.size());
  return out;
}

SizePower mc_size_power(const SimConfig& cfg_null, const SimConfig& cfg_alt) {
  require(cfg_null.n == cfg_alt.n && cfg_null.cells == cfg_alt.cells,
          "null and alternative runs must share n and N");
  require(cfg_null.statistic.name == cfg_alt.statistic.name,
          "null and alternative runs must use the same statistic");
  SizePower out;
  out.mode = cfg_null.critical_mode;
  out.null_run = mc_null_distribution(cfg_null);
  out.threshold = out.null_run.threshold;

  SimResult& alt = out.alt_run;
  alt.replications = cfg_alt.replications;
  alt.rng.seed = cfg_alt.seed;
  alt.rng.domain = kAltDomain;
  alt.A0 = out.null_run.A0;
  alt.sigma0 = out.null_run.sigma0;
  alt.values = simulate_statistic(cfg_alt, kAltDomain);
  alt.empirical_mean = mean_of(alt.values);
  alt.empirical_var = variance_of(alt.values, alt.empirical_mean);
  const double big_n = static_cast<double>(cfg_alt.cells);
  alt.standardized_mean = (alt.empirical_mean - big_n * alt.A0) / (alt.sigma0 * std::sqrt(big_n));
  alt.standardized_var = alt.empirical_var / (alt.sigma0 * alt.sigma0 * big_n);
  alt.threshold = out.threshold;
  alt.rejection_rate = exceed_rate(alt.values, out.threshold);
  alt.rejection_se = binomial_se(alt.rejection_rate, alt.values.size());

  out.size = out.null_run.rejection_rate;
  out.size_se = out.null_run.rejection_se;
  out.power = alt.rejection_rate;
  out.power_se = alt.rejection_se;
  return out;
}

CountMoments exact_count_moments(std::int64_t n, std::int64_t cells, std::int64_t r) {
  require(n >= 1 && cells >= 2, "need n >= 1 and N >= 2");
  require(r >= 0 && r <= n, "need 0 <= r <= n");
  const double nd = static_cast<double>(n);
  const double big_n = static_cast<double>(cells);
  const double rd = static_cast<double>(r);
  const double log_n = std::log(big_n);
  // P(η₁ = r)
  const double log_p1 = std::lgamma(nd + 1.0) - std::lgamma(rd + 1.0) - std::lgamma(nd - rd + 1.0) -
                        rd * log_n + (nd - rd) * std::log1p(-1.0 / big_n);
  const double p1 = std::exp(log_p1);
  // P(η₁ = r, η₂ = r)
  double p12 = 0.0;
  if (2 * r <= n) {
    const double rest = nd - 2.0 * rd;
    const double log_p12 = std::lgamma(nd + 1.0) - 2.0 * std::lgamma(rd + 1.0) -
                           std::lgamma(rest + 1.0) - 2.0 * rd * log_n +
                           (rest > 0.0 ? rest * std::log1p(-2.0 / big_n) : 0.0);
    p12 = std::exp(log_p12);
  }
  CountMoments out;
  out.mean = big_n * p1;
  out.variance = big_n * p1 * (1.0 - p1) + big_n * (big_n - 1.0) * (p12 - p1 * p1);
  return out;
}

}  // namespace mgof
