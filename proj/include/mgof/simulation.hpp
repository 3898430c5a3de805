#pragma once

// Seeded Monte Carlo for multinomial allocations: sampling, null
// distributions of standardized statistics, empirical size and power, and
// exact finite-n moments of the count statistics μ_r.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "mgof/statistics.hpp"

namespace mgof {

enum class CriticalMode { normal_approx, empirical_null };

std::string_view critical_mode_name(CriticalMode mode);
CriticalMode parse_critical_mode(std::string_view text);

struct SimConfig {
  std::int64_t n = 0;
  std::int64_t cells = 0;
  std::vector<double> probs;  // empty means uniform
  StatisticSpec statistic = StatisticSpec::chi_square();
  std::int64_t replications = 1000;
  std::uint64_t seed = 0;
  double alpha = 0.05;
  CriticalMode critical_mode = CriticalMode::normal_approx;
  unsigned threads = 0;  // 0: hardware concurrency
};

/// Generator identity recorded with every result.
struct RngInfo {
  std::string algorithm = "mt19937_64 per replicate, seeded by splitmix64(seed, domain, replicate)";
  std::string version = "1";
  std::uint64_t seed = 0;
  std::uint64_t domain = 0;
};

struct SimResult {
  std::int64_t replications = 0;
  double empirical_mean = 0.0;
  double empirical_var = 0.0;
  double A0 = 0.0;
  double sigma0 = 0.0;
  double standardized_mean = 0.0;
  double standardized_var = 0.0;
  double ks_distance = 0.0;
  double threshold = 0.0;
  double rejection_rate = 0.0;
  double rejection_se = 0.0;
  RngInfo rng;
  std::vector<double> values;  // S per replicate, in replicate order
};

struct SizePower {
  double threshold = 0.0;
  CriticalMode mode = CriticalMode::normal_approx;
  double size = 0.0;
  double size_se = 0.0;
  double power = 0.0;
  double power_se = 0.0;
  SimResult null_run;
  SimResult alt_run;
};

inline constexpr std::uint64_t kNullDomain = 1;
inline constexpr std::uint64_t kAltDomain = 2;

/// Seed of the generator used for replicate k of a domain.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t domain, std::uint64_t k);

/// One multinomial draw M(n, N, probs) by conditional binomials, cell by cell.
CellCounts sample_counts(std::int64_t n, std::span<const double> probs, std::mt19937_64& rng);

/// S_N^h for R replicates drawn from cfg.probs, replicate k on substream k.
std::vector<double> simulate_statistic(const SimConfig& cfg, std::uint64_t domain);

/// sup_x |F_R(x) − Φ(x)| of a sample.
double ks_distance_normal(std::span<const double> sample);

/// The ceil((1−α)(R+1))-th order statistic (the maximum when that exceeds R).
double empirical_critical_value(std::span<const double> sample, double alpha);

/// Normal-approximation critical value N·A₀ + u_α·σ₀·√N.
double normal_critical_value(const CellFunction& h, std::int64_t n, std::int64_t cells, double alpha);

/// Replicates under cfg.probs, standardized by the Poisson A₀ and σ₀ at λ_n.
SimResult mc_null_distribution(const SimConfig& cfg);

/// Empirical size under cfg_null and power under cfg_alt at a common threshold.
SizePower mc_size_power(const SimConfig& cfg_null, const SimConfig& cfg_alt);

struct CountMoments {
  double mean = 0.0;
  double variance = 0.0;
};

/// Exact mean and variance of μ_r under the uniform null M(n, N).
CountMoments exact_count_moments(std::int64_t n, std::int64_t cells, std::int64_t r);

}  // namespace mgof
