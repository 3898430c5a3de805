#include "mgof/cell_function.hpp"

#include <cmath>
#include <sstream>

#include "mgof/errors.hpp"

namespace mgof {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

CellFunction::CellFunction(Kind kind) : kind_(std::move(kind)) {
  std::visit(overloaded{
                 [](const PowerDivergence& k) {
                   require(std::isfinite(k.d) && k.d > -1.0,
                           "power-divergence parameter must satisfy d > -1");
                 },
                 [](const Indicator& k) { require(k.r >= 0, "indicator position must be >= 0"); },
                 [](const TailIndicator& k) { require(k.l >= 1, "tail indicator needs l >= 1"); },
                 [](const Collision&) {},
                 [](const FiniteTable& k) {
                   require(!k.values.empty(), "finite table needs at least one value");
                   for (double a : k.values) require(std::isfinite(a), "table values must be finite");
                 },
             },
             kind_);
}

double CellFunction::operator()(std::int64_t x, double lambda) const {
  return std::visit(
      overloaded{
          [&](const PowerDivergence& k) -> double {
            if (x <= 0) return 0.0;
            const double xd = static_cast<double>(x);
            const double log_ratio = std::log(xd / lambda);
            if (std::abs(k.d) < kLogBranchThreshold) return 2.0 * xd * log_ratio;
            return 2.0 / (k.d * (k.d + 1.0)) * xd * std::expm1(k.d * log_ratio);
          },
          [&](const Indicator& k) -> double { return x == k.r ? 1.0 : 0.0; },
          [&](const TailIndicator& k) -> double { return x >= k.l ? 1.0 : 0.0; },
          [&](const Collision&) -> double { return x > 1 ? static_cast<double>(x - 1) : 0.0; },
          [&](const FiniteTable& k) -> double {
            return x >= 0 && x < static_cast<std::int64_t>(k.values.size())
                       ? k.values[static_cast<std::size_t>(x)]
                       : 0.0;
          },
      },
      kind_);
}

bool CellFunction::is_power_divergence() const noexcept {
  return std::holds_alternative<PowerDivergence>(kind_);
}

double CellFunction::pds_parameter() const {
  const auto* pds = std::get_if<PowerDivergence>(&kind_);
  require(pds != nullptr, "not a power-divergence kernel: " + describe());
  return pds->d;
}

std::int64_t CellFunction::support_hint() const noexcept {
  return std::visit(overloaded{
                        [](const PowerDivergence&) -> std::int64_t { return 1; },
                        [](const Indicator& k) -> std::int64_t { return k.r + 1; },
                        [](const TailIndicator& k) -> std::int64_t { return k.l + 1; },
                        [](const Collision&) -> std::int64_t { return 2; },
                        [](const FiniteTable& k) -> std::int64_t {
                          return static_cast<std::int64_t>(k.values.size());
                        },
                    },
                    kind_);
}

std::optional<double> CellFunction::tail_slope() const noexcept {
  if (std::holds_alternative<PowerDivergence>(kind_)) return std::nullopt;
  return std::holds_alternative<Collision>(kind_) ? 1.0 : 0.0;
}

std::string CellFunction::describe() const {
  std::ostringstream os;
  std::visit(overloaded{
                 [&](const PowerDivergence& k) { os << "pds(d=" << k.d << ")"; },
                 [&](const Indicator& k) { os << "indicator(r=" << k.r << ")"; },
                 [&](const TailIndicator& k) { os << "tail_indicator(l=" << k.l << ")"; },
                 [&](const Collision&) { os << "collisions"; },
                 [&](const FiniteTable& k) {
                   os << "table(";
                   for (std::size_t i = 0; i < k.values.size(); ++i) {
                     os << (i ? "," : "") << k.values[i];
                   }
                   os << ")";
                 },
             },
             kind_);
  return os.str();
}

}  // namespace mgof
