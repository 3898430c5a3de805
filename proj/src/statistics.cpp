#include "mgof/statistics.hpp"

#include <charconv>
#include <cmath>
#include <numeric>
#include <string>

#include "mgof/errors.hpp"
#include "mgof/numeric.hpp"

namespace mgof {

CellCounts::CellCounts(std::vector<std::int64_t> counts) : counts_(std::move(counts)) {
  require(counts_.size() >= 2, "need at least two cells");
  for (auto c : counts_) require(c >= 0, "cell counts must be non-negative");
  n_ = std::accumulate(counts_.begin(), counts_.end(), std::int64_t{0});
  require(n_ >= 1, "need at least one observation");
}

StatisticSpec StatisticSpec::chi_square() { return {"chi_square", CellFunction::power_divergence(1.0)}; }
StatisticSpec StatisticSpec::log_likelihood() {
  return {"log_likelihood", CellFunction::power_divergence(0.0)};
}
StatisticSpec StatisticSpec::freeman_tukey() {
  return {"freeman_tukey", CellFunction::power_divergence(-0.5)};
}
StatisticSpec StatisticSpec::power_divergence(double d) {
  return {"pds:" + std::to_string(d), CellFunction::power_divergence(d)};
}
StatisticSpec StatisticSpec::empty_cells() { return {"empty_cells", CellFunction::indicator(0)}; }
StatisticSpec StatisticSpec::collisions() { return {"collisions", CellFunction::collision()}; }
StatisticSpec StatisticSpec::count(int r) {
  return {"count:" + std::to_string(r), CellFunction::indicator(r)};
}
StatisticSpec StatisticSpec::at_least(int l) {
  return {"at_least:" + std::to_string(l), CellFunction::tail_indicator(l)};
}
StatisticSpec StatisticSpec::table(std::vector<double> values) {
  std::string name = "table:";
  for (std::size_t i = 0; i < values.size(); ++i) {
    name += (i ? "," : "") + std::to_string(values[i]);
  }
  return {name, CellFunction::table(std::move(values))};
}

namespace {

double parse_double(std::string_view text) {
  // std::from_chars for double is locale independent.
  double value = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  require(ec == std::errc() && ptr == last && first != last,
          "not a number: '" + std::string(text) + "'");
  return value;
}

int parse_int(std::string_view text) {
  int value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  require(ec == std::errc() && ptr == text.data() + text.size() && !text.empty(),
          "not an integer: '" + std::string(text) + "'");
  return value;
}

}  // namespace

double parse_fraction(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_double(text);
  const double num = parse_double(text.substr(0, slash));
  const double den = parse_double(text.substr(slash + 1));
  require(den != 0.0, "zero denominator in '" + std::string(text) + "'");
  return num / den;
}

StatisticSpec parse_statistic(std::string_view text) {
  if (text == "chi_square") return StatisticSpec::chi_square();
  if (text == "log_likelihood") return StatisticSpec::log_likelihood();
  if (text == "freeman_tukey") return StatisticSpec::freeman_tukey();
  if (text == "empty_cells") return StatisticSpec::empty_cells();
  if (text == "collisions") return StatisticSpec::collisions();

  const auto colon = text.find(':');
  require(colon != std::string_view::npos, "unknown statistic '" + std::string(text) + "'");
  const auto head = text.substr(0, colon);
  const auto rest = text.substr(colon + 1);
  if (head == "pds") {
    StatisticSpec spec = StatisticSpec::power_divergence(parse_fraction(rest));
    spec.name = std::string(text);
    return spec;
  }
  if (head == "count") return StatisticSpec::count(parse_int(rest));
  if (head == "at_least") return StatisticSpec::at_least(parse_int(rest));
  if (head == "table") {
    std::vector<double> values;
    std::size_t start = 0;
    while (start <= rest.size()) {
      const auto comma = rest.find(',', start);
      const auto piece = rest.substr(start, comma == std::string_view::npos ? rest.npos : comma - start);
      values.push_back(parse_fraction(piece));
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }
    StatisticSpec spec = StatisticSpec::table(std::move(values));
    spec.name = std::string(text);
    return spec;
  }
  fail(ErrorKind::InvalidArgument, "unknown statistic '" + std::string(text) + "'");
}

double evaluate_statistic(const StatisticSpec& spec, const CellCounts& data) {
  const double lambda = data.lambda();
  numeric::CompensatedSum acc;
  for (auto eta : data.counts()) acc += spec.function(eta, lambda);
  return acc.value();
}

double closed_form_statistic(ClosedForm name, const CellCounts& data) {
  const double lambda = data.lambda();
  numeric::CompensatedSum acc;
  switch (name) {
    case ClosedForm::chi_square:
      for (auto eta : data.counts()) {
        const double dev = static_cast<double>(eta) - lambda;
        acc += dev * dev;
      }
      return acc.value() / lambda;
    case ClosedForm::log_likelihood:
      for (auto eta : data.counts()) {
        if (eta == 0) continue;
        const double e = static_cast<double>(eta);
        acc += e * std::log(e / lambda);
      }
      return 2.0 * acc.value();
    case ClosedForm::freeman_tukey:
      for (auto eta : data.counts()) {
        const double dev = std::sqrt(static_cast<double>(eta)) - std::sqrt(lambda);
        acc += dev * dev;
      }
      return 4.0 * acc.value();
  }
  return 0.0;
}

}  // namespace mgof
