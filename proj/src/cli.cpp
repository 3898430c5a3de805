#include "mgof/cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <set>

#include <CLI11.hpp>

#include "mgof/bahadur.hpp"
#include "mgof/efficiency.hpp"
#include "mgof/errors.hpp"
#include "mgof/io.hpp"
#include "mgof/numeric.hpp"
#include "mgof/poisson.hpp"
#include "mgof/rho_table.hpp"
#include "mgof/simulation.hpp"
#include "mgof/statistics.hpp"

namespace mgof::cli {

using nlohmann::json;

namespace {

struct OutputOptions {
  bool as_json = false;
  std::string out_path;
};

template <typename T>
T get_or(const json& j, const std::string& key, T fallback) {
  if (!j.contains(key) || j.at(key).is_null()) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorKind::InvalidArgument, "config key '" + key + "' has the wrong type");
  }
}

template <typename T>
T get_required(const json& j, const std::string& key) {
  if (!j.contains(key) || j.at(key).is_null()) {
    fail(ErrorKind::InvalidArgument, "config key '" + key + "' is required");
  }
  return get_or<T>(j, key, T{});
}

json load_config(const std::string& path, RunManifest& manifest) {
  const std::string text = read_file(path);
  manifest.add_input(path);
  try {
    json j = json::parse(text);
    if (!j.is_object()) fail(ErrorKind::InvalidArgument, "config must be a JSON object");
    return j;
  } catch (const json::parse_error& e) {
    fail(ErrorKind::InvalidArgument, std::string("malformed config: ") + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) fail(ErrorKind::InvalidArgument, "cannot write '" + path + "'");
  f << content;
}

bool ends_with_csv(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
}

/// Prints the report (JSON or text) and writes --out. CSV outputs get a
/// sidecar manifest at PATH.manifest.json.
void emit(std::ostream& out, const OutputOptions& opts, json report, const RunManifest& manifest,
          const std::function<void(std::ostream&)>& text, const std::string& csv = {}) {
  report["manifest"] = manifest.to_json();
  if (opts.as_json) {
    out << report.dump(2) << "\n";
  } else {
    text(out);
  }
  if (opts.out_path.empty()) return;
  if (ends_with_csv(opts.out_path) && !csv.empty()) {
    write_text_file(opts.out_path, csv);
    write_text_file(opts.out_path + ".manifest.json", manifest.to_json().dump(2) + "\n");
  } else {
    write_text_file(opts.out_path, report.dump(2) + "\n");
  }
}

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, const json& config,
                           std::ostream& err) {
  if (flag) return *flag;
  if (config.contains("seed") && !config.at("seed").is_null()) {
    return get_required<std::uint64_t>(config, "seed");
  }
  std::random_device device;
  const std::uint64_t seed = (static_cast<std::uint64_t>(device()) << 32) ^ device();
  err << "seed: " << seed << "\n";
  return seed;
}

json to_json(const Efficacy& e) {
  return {{"lambda_n", e.lambda_n}, {"eps_N", e.eps_N},       {"A0", e.A0},
          {"A1", e.A1},             {"sigma0", e.sigma0},     {"rho", e.rho},
          {"x_N", e.x_exact},       {"x_N_approx", e.x_approx},
          {"max_relative_deviation", e.max_relative_deviation}};
}

json to_json(const AdmissibilityReport& a) {
  json checks = json::array();
  for (const auto& c : a.checks) {
    checks.push_back({{"name", c.name},
                      {"condition", c.condition},
                      {"bound", c.bound},
                      {"ratio", c.ratio},
                      {"admissible", c.admissible}});
  }
  return {{"regime", regime_name(a.regime)}, {"lambda_n", a.lambda_n}, {"slack", a.slack},
          {"checks", checks}};
}

json to_json(const SimResult& r) {
  return {{"replications", r.replications},
          {"empirical_mean", r.empirical_mean},
          {"empirical_var", r.empirical_var},
          {"A0", r.A0},
          {"sigma0", r.sigma0},
          {"standardized_mean", r.standardized_mean},
          {"standardized_var", r.standardized_var},
          {"ks_distance", r.ks_distance},
          {"threshold", r.threshold},
          {"rejection_rate", r.rejection_rate},
          {"rejection_se", r.rejection_se},
          {"rng",
           {{"algorithm", r.rng.algorithm},
            {"version", r.rng.version},
            {"seed", r.rng.seed},
            {"domain", r.rng.domain}}}};
}

void add_output_flags(CLI::App* sub, OutputOptions& opts) {
  sub->add_flag("--json", opts.as_json, "Print a JSON report");
  sub->add_option("--out", opts.out_path, "Write the report to PATH (.csv for CSV)");
}

int cmd_test(const std::string& input, const std::string& statistic, double alpha,
             const OutputOptions& opts, std::ostream& out) {
  require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0, 1)");
  auto manifest = RunManifest::start("test");
  const auto counts = read_counts(input);
  manifest.add_input(input);
  const auto spec = parse_statistic(statistic);
  manifest.config = {{"statistic", spec.name}, {"alpha", alpha}};
  const double value = evaluate_statistic(spec, counts);
  const auto moments = moment_set(spec.function, PoissonRate(counts.lambda()));
  const double big_n = static_cast<double>(counts.cells());
  const double sigma0 = std::sqrt(moments.sigma2);
  const double z = (value - big_n * moments.mean_h) / (sigma0 * std::sqrt(big_n));
  const double p = numeric::normal_sf(z);
  const std::string decision = p < alpha ? "reject" : "fail to reject";
  json report = {{"statistic", spec.name}, {"n", counts.n()},        {"N", counts.cells()},
                 {"lambda_n", counts.lambda()}, {"value", value},   {"A0", moments.mean_h},
                 {"sigma0", sigma0},            {"standardized", z}, {"p_value", p},
                 {"alpha", alpha},              {"decision", decision}};
  const std::string csv = "statistic,n,N,value,standardized,p_value,decision\n" + spec.name + "," +
                          std::to_string(counts.n()) + "," + std::to_string(counts.cells()) + "," +
                          format_double(value) + "," + format_double(z) + "," + format_double(p) +
                          "," + decision + "\n";
  emit(out, opts, report, manifest, [&](std::ostream& o) {
    o << "statistic: " << spec.name << "\n"
      << "n: " << counts.n() << "  N: " << counts.cells() << "  lambda_n: "
      << format_double(counts.lambda()) << "\n"
      << "value: " << format_double(value) << "\n"
      << "standardized: " << format_double(z) << "\n"
      << "p-value: " << format_double(p) << "\n"
      << "decision at alpha=" << format_double(alpha) << ": " << decision << "\n";
  }, csv);
  return kOk;
}

int cmd_rho_table(const std::vector<std::string>& d_labels,
                  const std::vector<std::string>& lambda_labels,
                  const std::string& discrepancy_path, const OutputOptions& opts,
                  std::ostream& out, std::ostream& err) {
  auto manifest = RunManifest::start("rho-table");
  const bool default_grid = d_labels.empty() && lambda_labels.empty();
  const auto d = d_labels.empty() ? default_d_axis() : parse_axis(d_labels);
  const auto lambda = lambda_labels.empty() ? default_lambda_axis() : parse_axis(lambda_labels);
  manifest.config = {{"d", d.labels}, {"lambda", lambda.labels}};
  const auto table = compute_rho_table(d, lambda);
  const std::string csv = rho_table_csv(table);
  json report = {{"d", d.labels}, {"lambda", lambda.labels}, {"abs_rho", table.abs_rho}};
  if (default_grid) {
    const auto cmp = compare_with_published(table);
    json mismatches = json::array();
    std::string dcsv = "d,lambda,computed,published,abs_difference\n";
    for (const auto& m : cmp.mismatches) {
      mismatches.push_back({{"d", m.d},
                            {"lambda", m.lambda},
                            {"computed", m.computed},
                            {"published", m.published}});
      dcsv += m.d + "," + m.lambda + "," + format_fixed(m.computed, 6) + "," +
              format_double(m.published) + "," +
              format_fixed(std::abs(m.computed - m.published), 6) + "\n";
    }
    report["comparison"] = {{"cells", cmp.cells},
                            {"matched", cmp.matched},
                            {"tolerance", cmp.tolerance},
                            {"mismatches", mismatches}};
    if (!opts.as_json) {
      err << "published grid: " << cmp.matched << "/" << cmp.cells << " within "
          << format_double(cmp.tolerance) << "\n";
    }
    if (!discrepancy_path.empty()) write_text_file(discrepancy_path, dcsv);
  } else if (!discrepancy_path.empty()) {
    fail(ErrorKind::InvalidArgument, "--discrepancies needs the default grid");
  }
  emit(out, opts, report, manifest, [&](std::ostream& o) { o << csv; }, csv);
  return kOk;
}

int cmd_efficiency(const std::string& config_path, const std::string& statistic_flag,
                   const OutputOptions& opts, std::ostream& out) {
  auto manifest = RunManifest::start("efficiency");
  const json cfg = load_config(config_path, manifest);
  check_config(cfg, {"version", "statistic", "n", "N", "alternative", "alphas", "slack"});
  const auto spec = parse_statistic(
      statistic_flag.empty() ? get_required<std::string>(cfg, "statistic") : statistic_flag);
  const auto n = get_required<std::int64_t>(cfg, "n");
  const auto cells = get_required<std::int64_t>(cfg, "N");
  require(cfg.contains("alternative"), "config key 'alternative' is required");
  const auto probs = parse_alternative(cfg.at("alternative"), cells);
  const auto alphas = get_or<std::vector<double>>(cfg, "alphas", {0.05});
  AdmissibilityOptions adm;
  adm.slack = get_or<double>(cfg, "slack", adm.slack);
  manifest.config = cfg;
  manifest.config["statistic"] = spec.name;

  const auto rep = efficiency_report(spec, n, probs, alphas, adm);
  json pitman = json::array();
  for (const auto& [a, p] : rep.pitman_power) pitman.push_back({{"alpha", a}, {"power", p}});
  json report = {
      {"statistic", rep.statistic},
      {"n", rep.n},
      {"N", rep.cells},
      {"efficacy", to_json(rep.efficacy)},
      {"pitman_power", pitman},
      {"intermediate_slope",
       {{"rho", rep.slope.rho},
        {"slope", rep.slope.slope},
        {"alpha_level_approx", rep.slope.alpha_level_approx},
        {"x_N", rep.slope.x_N},
        {"normal_tail_slope", rep.slope.normal_tail_slope},
        {"normal_tail_slope_exact_efficacy", rep.normal_tail_slope_exact}}},
      {"regime",
       {{"name", regime_name(rep.regime.regime)},
        {"lambda_n", rep.regime.lambda_n},
        {"pitman_scale", rep.regime.pitman_scale},
        {"intermediate_scale", rep.regime.intermediate_scale},
        {"eps_lambda", rep.regime.eps_lambda}}},
      {"admissibility", to_json(rep.admissibility)},
      {"cramer_class", cramer_class(spec.function)}};
  emit(out, opts, report, manifest, [&](std::ostream& o) {
    o << "statistic: " << rep.statistic << "  n: " << rep.n << "  N: " << rep.cells << "\n"
      << "regime: " << regime_name(rep.regime.regime)
      << "  lambda_n: " << format_double(rep.efficacy.lambda_n) << "\n"
      << "eps(N): " << format_double(rep.efficacy.eps_N) << "\n"
      << "A0: " << format_double(rep.efficacy.A0) << "  A1: " << format_double(rep.efficacy.A1)
      << "  sigma0: " << format_double(rep.efficacy.sigma0) << "\n"
      << "rho: " << format_double(rep.efficacy.rho) << "\n"
      << "x_N: " << format_double(rep.efficacy.x_exact)
      << "  approx: " << format_double(rep.efficacy.x_approx) << "\n";
    for (const auto& [a, p] : rep.pitman_power) {
      o << "pitman power at alpha=" << format_double(a) << ": " << format_double(p) << "\n";
    }
    o << "intermediate slope: " << format_double(rep.slope.slope)
      << "  alpha approx: " << format_double(rep.slope.alpha_level_approx) << "\n";
    for (const auto& c : rep.admissibility.checks) {
      o << "  " << c.name << ": ratio " << format_double(c.ratio)
        << (c.admissible ? " admissible" : " not admissible") << "\n";
    }
  });
  return kOk;
}

Reading parse_reading(const std::string& text) {
  if (text == "corrected") return Reading::corrected;
  if (text == "printed") return Reading::printed;
  fail(ErrorKind::InvalidArgument, "reading must be 'corrected' or 'printed'");
}

int cmd_slope(const std::string& config_path, const OutputOptions& opts, std::ostream& out) {
  auto manifest = RunManifest::start("slope");
  const json cfg = load_config(config_path, manifest);
  check_config(cfg, {"version", "lambda", "b", "reading", "alpha_override", "statistic",
                     "a1_limit"});
  manifest.config = cfg;
  const auto lambda = get_required<double>(cfg, "lambda");
  json report = {{"lambda", lambda}};
  std::string text;
  if (cfg.contains("b")) {
    const auto b = get_required<std::vector<double>>(cfg, "b");
    require(!b.empty(), "'b' must not be empty");
    const auto reading = parse_reading(get_or<std::string>(cfg, "reading", "corrected"));
    std::optional<double> alpha_override;
    if (cfg.contains("alpha_override") && !cfg.at("alpha_override").is_null()) {
      alpha_override = get_required<double>(cfg, "alpha_override");
    }
    const auto opt = optimal_upsilon(static_cast<int>(b.size()) - 1, b, lambda, reading,
                                     alpha_override);
    const auto check = exact_slope(CellFunction::table(opt.a), lambda, opt.a1_limit);
    report["upsilon"] = {{"m", opt.m},         {"b", opt.b},   {"omega", opt.omega},
                         {"a", opt.a},         {"I_m", opt.I_m}, {"J", opt.J},
                         {"a1_limit", opt.a1_limit},
                         {"reading", reading == Reading::corrected ? "corrected" : "printed"}};
    report["exact_slope_of_optimum"] = {{"t0", check.t0}, {"z0", check.z0}, {"J", check.J},
                                        {"residual", check.residual}};
    report["cross_check_difference"] = std::abs(opt.J - check.J);
    text = "omega: " + format_double(opt.omega) + "\nI_m: " + format_double(opt.I_m) +
           "\nJ: " + format_double(opt.J) + "\nexact slope of optimal table: " +
           format_double(check.J) + "\n";
  }
  if (cfg.contains("statistic")) {
    const auto spec = parse_statistic(get_required<std::string>(cfg, "statistic"));
    const auto a1 = get_required<double>(cfg, "a1_limit");
    const auto s = exact_slope(spec.function, lambda, a1);
    report["exact_slope"] = {{"statistic", spec.name}, {"a1_limit", a1}, {"t0", s.t0},
                             {"z0", s.z0},             {"c", s.c_value}, {"J", s.J},
                             {"residual", s.residual}};
    text += "statistic: " + spec.name + "\nt0: " + format_double(s.t0) +
            "\nJ: " + format_double(s.J) + "\n";
  }
  require(report.contains("upsilon") || report.contains("exact_slope"),
          "config needs 'b' or 'statistic' with 'a1_limit'");
  emit(out, opts, report, manifest, [&](std::ostream& o) { o << text; });
  return kOk;
}

struct SimFlags {
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<double> alpha;
  std::string statistic;
};

SimConfig sim_config(const json& cfg, const SimFlags& flags, std::uint64_t seed) {
  SimConfig sc;
  sc.statistic = parse_statistic(flags.statistic.empty()
                                     ? get_or<std::string>(cfg, "statistic", "chi_square")
                                     : flags.statistic);
  sc.n = get_required<std::int64_t>(cfg, "n");
  sc.cells = get_required<std::int64_t>(cfg, "N");
  sc.replications = get_or<std::int64_t>(cfg, "replications", sc.replications);
  sc.alpha = flags.alpha.value_or(get_or<double>(cfg, "alpha", sc.alpha));
  sc.critical_mode = parse_critical_mode(get_or<std::string>(cfg, "critical_mode", "normal_approx"));
  sc.threads = flags.threads.value_or(get_or<unsigned>(cfg, "threads", 0u));
  sc.seed = seed;
  return sc;
}

int cmd_simulation(bool with_alternative, const std::string& config_path, const SimFlags& flags,
                   const OutputOptions& opts, std::ostream& out, std::ostream& err) {
  auto manifest = RunManifest::start(with_alternative ? "power" : "null-dist");
  const json cfg = load_config(config_path, manifest);
  std::vector<std::string> allowed = {"version", "statistic",     "n",      "N",   "replications",
                                      "seed",    "alpha",         "critical_mode", "threads"};
  if (with_alternative) allowed.push_back("alternative");
  check_config(cfg, allowed);
  const std::uint64_t seed = resolve_seed(flags.seed, cfg, err);
  const SimConfig null_cfg = sim_config(cfg, flags, seed);
  manifest.seed = seed;
  manifest.config = cfg;
  manifest.config["seed"] = seed;
  manifest.config["statistic"] = null_cfg.statistic.name;
  manifest.config["alpha"] = null_cfg.alpha;
  manifest.config["threads"] = null_cfg.threads;

  json report = {{"statistic", null_cfg.statistic.name},
                 {"n", null_cfg.n},
                 {"N", null_cfg.cells},
                 {"alpha", null_cfg.alpha},
                 {"critical_mode", critical_mode_name(null_cfg.critical_mode)}};
  std::string csv;
  std::function<void(std::ostream&)> text;
  if (!with_alternative) {
    const auto res = mc_null_distribution(null_cfg);
    report["null"] = to_json(res);
    csv = "statistic,n,N,replications,seed,empirical_mean,empirical_var,standardized_mean,"
          "standardized_var,ks_distance,threshold,size,size_se\n" +
          null_cfg.statistic.name + "," + std::to_string(null_cfg.n) + "," +
          std::to_string(null_cfg.cells) + "," + std::to_string(res.replications) + "," +
          std::to_string(seed) + "," + format_double(res.empirical_mean) + "," +
          format_double(res.empirical_var) + "," + format_double(res.standardized_mean) + "," +
          format_double(res.standardized_var) + "," + format_double(res.ks_distance) + "," +
          format_double(res.threshold) + "," + format_double(res.rejection_rate) + "," +
          format_double(res.rejection_se) + "\n";
    text = [res](std::ostream& o) {
      o << "standardized mean: " << format_double(res.standardized_mean) << "\n"
        << "standardized var: " << format_double(res.standardized_var) << "\n"
        << "KS distance: " << format_double(res.ks_distance) << "\n"
        << "size: " << format_double(res.rejection_rate) << " +- "
        << format_double(res.rejection_se) << "\n";
    };
  } else {
    SimConfig alt_cfg = null_cfg;
    if (cfg.contains("alternative")) alt_cfg.probs = parse_alternative(cfg.at("alternative"), null_cfg.cells);
    const auto sp = mc_size_power(null_cfg, alt_cfg);
    const auto null_probs = uniform_probs(null_cfg.cells);
    const auto alt_probs = alt_cfg.probs.empty() ? null_probs : alt_cfg.probs;
    const auto eff = efficacy(null_cfg.statistic.function, null_probs, alt_probs, null_cfg.n);
    const double u = numeric::upper_normal_point(null_cfg.alpha);
    const double predicted = pitman_power(eff.rho, null_cfg.alpha);
    const double predicted_exact = numeric::normal_cdf(eff.x_exact - u);
    report["threshold"] = sp.threshold;
    report["size"] = sp.size;
    report["size_se"] = sp.size_se;
    report["power"] = sp.power;
    report["power_se"] = sp.power_se;
    report["eps_N"] = eff.eps_N;
    report["rho"] = eff.rho;
    report["pitman_power"] = predicted;
    report["efficacy_power"] = predicted_exact;
    report["null"] = to_json(sp.null_run);
    report["alternative"] = to_json(sp.alt_run);
    csv = "statistic,n,N,replications,seed,threshold,size,size_se,power,power_se,pitman_power\n" +
          null_cfg.statistic.name + "," + std::to_string(null_cfg.n) + "," +
          std::to_string(null_cfg.cells) + "," + std::to_string(null_cfg.replications) + "," +
          std::to_string(seed) + "," + format_double(sp.threshold) + "," + format_double(sp.size) +
          "," + format_double(sp.size_se) + "," + format_double(sp.power) + "," +
          format_double(sp.power_se) + "," + format_double(predicted) + "\n";
    text = [sp, predicted, predicted_exact](std::ostream& o) {
      o << "threshold: " << format_double(sp.threshold) << "\n"
        << "size: " << format_double(sp.size) << " +- " << format_double(sp.size_se) << "\n"
        << "power: " << format_double(sp.power) << " +- " << format_double(sp.power_se) << "\n"
        << "normal prediction from x_N: " << format_double(predicted_exact) << "\n"
        << "pitman power at eps = (n lambda_n)^(-1/2): " << format_double(predicted) << "\n";
    };
  }
  emit(out, opts, report, manifest, text, csv);
  return kOk;
}

}  // namespace

void check_config(const json& j, const std::vector<std::string>& allowed, bool versioned) {
  if (!j.is_object()) fail(ErrorKind::InvalidArgument, "config must be a JSON object");
  const std::set<std::string> known(allowed.begin(), allowed.end());
  for (const auto& item : j.items()) {
    if (!known.count(item.key())) {
      fail(ErrorKind::InvalidArgument, "unknown config key '" + item.key() + "'");
    }
  }
  if (versioned) {
    if (!j.contains("version")) fail(ErrorKind::InvalidArgument, "config key 'version' is required");
    if (!j.at("version").is_number_integer() || j.at("version").get<int>() != 1) {
      fail(ErrorKind::InvalidArgument, "unsupported config version (expected 1)");
    }
  }
}

std::vector<double> parse_alternative(const json& j, std::int64_t cells) {
  if (!j.is_object()) fail(ErrorKind::InvalidArgument, "'alternative' must be an object");
  if (j.contains("probs")) {
    check_config(j, {"probs"}, false);
    auto probs = get_required<std::vector<double>>(j, "probs");
    require(static_cast<std::int64_t>(probs.size()) == cells,
            "alternative probability vector length must equal N");
    validate_probs(probs);
    return probs;
  }
  check_config(j, {"pattern", "delta", "epsilon", "k", "deltas"}, false);
  const auto name = get_or<std::string>(j, "pattern", "half_split");
  Pattern pattern;
  if (name == "half_split") {
    pattern = HalfSplit{};
  } else if (name == "cosine") {
    pattern = Cosine{get_or<int>(j, "k", 1)};
  } else if (name == "custom") {
    pattern = CustomPattern{get_required<std::vector<double>>(j, "deltas")};
  } else {
    fail(ErrorKind::InvalidArgument, "unknown pattern '" + name + "'");
  }
  const bool has_delta = j.contains("delta");
  const bool has_eps = j.contains("epsilon");
  require(has_delta != has_eps, "alternative needs exactly one of 'delta' or 'epsilon'");
  double delta = 0.0;
  if (has_delta) {
    delta = get_required<double>(j, "delta");
  } else {
    const double eps = get_required<double>(j, "epsilon");
    require(eps >= 0.0, "'epsilon' must be non-negative");
    const auto deltas = pattern_values(pattern, cells);
    double mean_sq = 0.0;
    for (double d : deltas) mean_sq += d * d;
    mean_sq /= static_cast<double>(cells);
    require(mean_sq > 0.0, "pattern must not vanish");
    delta = std::sqrt(eps / mean_sq);
  }
  return materialize(Contamination{cells, delta, pattern});
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Goodness-of-fit tests on multinomial cell counts: statistics, efficiencies, "
               "exact slopes and Monte Carlo calibration",
               "mgof"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  OutputOptions opts;
  std::string input, statistic = "chi_square", config, discrepancies;
  double alpha = 0.05;
  std::vector<std::string> d_list, lambda_list;
  SimFlags sim;
  std::string sim_statistic;

  auto* test = app.add_subcommand("test", "Evaluate a statistic on observed counts");
  test->add_option("--input", input, "Counts file (CSV row/column or JSON array)")->required();
  test->add_option("--statistic", statistic, "NAME or pds:D");
  test->add_option("--alpha", alpha, "Significance level");
  add_output_flags(test, opts);

  auto* rho = app.add_subcommand("rho-table", "Grid of |rho(h_d, lambda)|");
  rho->add_option("--d", d_list, "Power-divergence parameters (fractions allowed)")->delimiter(',');
  rho->add_option("--lambda", lambda_list, "Mean counts per cell")->delimiter(',');
  rho->add_option("--discrepancies", discrepancies,
                  "Write cells deviating from the published grid to PATH (CSV)");
  add_output_flags(rho, opts);

  auto* eff = app.add_subcommand("efficiency", "Efficacy, Pitman power and intermediate slope");
  eff->add_option("--config", config, "JSON config")->required();
  eff->add_option("--statistic", sim_statistic, "Override the configured statistic");
  add_output_flags(eff, opts);

  auto* slope = app.add_subcommand("slope", "Exact slopes and the optimal count statistic");
  slope->add_option("--config", config, "JSON config")->required();
  add_output_flags(slope, opts);

  std::uint64_t seed_value = 0;
  unsigned threads_value = 0;
  double sim_alpha = 0.05;
  std::vector<CLI::App*> sims;
  for (const char* name : {"power", "null-dist"}) {
    auto* sub = app.add_subcommand(name, std::string(name) == "power"
                                             ? "Monte Carlo size and power"
                                             : "Monte Carlo null distribution");
    sub->add_option("--config", config, "JSON config")->required();
    sub->add_option("--seed", seed_value, "64-bit seed");
    sub->add_option("--threads", threads_value, "Worker threads (0: all cores)");
    sub->add_option("--alpha", sim_alpha, "Significance level");
    sub->add_option("--statistic", sim_statistic, "Override the configured statistic");
    add_output_flags(sub, opts);
    sims.push_back(sub);
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  try {
    if (test->parsed()) return cmd_test(input, statistic, alpha, opts, out);
    if (rho->parsed()) return cmd_rho_table(d_list, lambda_list, discrepancies, opts, out, err);
    if (eff->parsed()) return cmd_efficiency(config, sim_statistic, opts, out);
    if (slope->parsed()) return cmd_slope(config, opts, out);
    for (auto* sub : sims) {
      if (!sub->parsed()) continue;
      if (sub->count("--seed")) sim.seed = seed_value;
      if (sub->count("--threads")) sim.threads = threads_value;
      if (sub->count("--alpha")) sim.alpha = sim_alpha;
      sim.statistic = sim_statistic;
      return cmd_simulation(sub->get_name() == "power", config, sim, opts, out, err);
    }
    err << "error: no subcommand\n";
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return is_input_error(e.kind()) ? kInputError : kNumericError;
  } catch (const nlohmann::json::exception& e) {
    err << "error: InvalidArgument: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace mgof::cli
