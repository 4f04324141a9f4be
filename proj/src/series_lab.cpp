#include "qsandor/series_lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qsandor/compensated_sum.hpp"
#include "qsandor/error.hpp"
#include "qsandor/sandor_classic.hpp"

namespace qsandor {

namespace {

[[noreturn]] void spec_error(const std::string& what) { throw Error(Errc::SpecError, what); }

}  // namespace

std::string_view to_string(SeriesKind kind) noexcept {
  switch (kind) {
    case SeriesKind::SStarWeighted: return "S_STAR_WEIGHTED";
    case SeriesKind::ZStarPlain: return "Z_STAR_PLAIN";
    case SeriesKind::ZStarWeighted: return "Z_STAR_WEIGHTED";
    case SeriesKind::PStarLogLog: return "P_STAR_LOGLOG";
  }
  return "?";
}

std::string_view to_string(Verdict verdict) noexcept {
  switch (verdict) {
    case Verdict::DeltaVanishing: return "DELTA_VANISHING";
    case Verdict::DeltaPersistent: return "DELTA_PERSISTENT";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

std::optional<SeriesKind> parse_series_kind(std::string_view name) noexcept {
  for (auto kind : {SeriesKind::SStarWeighted, SeriesKind::ZStarPlain, SeriesKind::ZStarWeighted,
                    SeriesKind::PStarLogLog})
    if (to_string(kind) == name) return kind;
  return std::nullopt;
}

void validate(const SeriesSpec& spec) {
  if (!std::isfinite(spec.alpha) || !(spec.alpha > 0.0)) spec_error("alpha must be a finite value > 0");
  if (spec.n_max < 4 || spec.n_max > SeriesSpec::kMaxN) spec_error("n_max must lie in [4, 1e8]");
  if (spec.kind == SeriesKind::PStarLogLog && (!std::isfinite(spec.p) || !(spec.p > 1.0)))
    spec_error("P_STAR_LOGLOG needs a finite base p > 1");
}

std::int64_t start_index(const SeriesSpec& spec) {
  validate(spec);
  if (spec.kind != SeriesKind::PStarLogLog) return 1;
  auto n = std::max<std::int64_t>(3, static_cast<std::int64_t>(std::ceil(std::log(2.0) / std::log(spec.p))));
  while (p_star(static_cast<double>(n), spec.p) < 2) ++n;
  if (n > spec.n_max) spec_error("n_max is below the first positive P_STAR_LOGLOG term");
  return n;
}

namespace {

// Term evaluation without re-validating the spec.
double raw_term(const SeriesSpec& spec, std::int64_t n) {
  const double nd = static_cast<double>(n);
  switch (spec.kind) {
    case SeriesKind::SStarWeighted:
      return 1.0 / (nd * std::pow(static_cast<double>(s_star(nd)), spec.alpha));
    case SeriesKind::ZStarPlain:
      return std::pow(static_cast<double>(z_star(nd)), -spec.alpha);
    case SeriesKind::ZStarWeighted:
      return 1.0 / (nd * std::pow(static_cast<double>(z_star(nd)), spec.alpha));
    case SeriesKind::PStarLogLog: {
      const double ratio = std::log(std::log(nd)) / std::log(static_cast<double>(p_star(nd, spec.p)));
      return std::pow(ratio, spec.alpha) / nd;
    }
  }
  spec_error("unknown series kind");
}

}  // namespace

double term_of(const SeriesSpec& spec, std::int64_t n) {
  const std::int64_t start = start_index(spec);
  if (n < start || n > spec.n_max)
    spec_error("term index " + std::to_string(n) + " outside [" + std::to_string(start) + ", n_max]");
  return raw_term(spec, n);
}

std::vector<std::int64_t> default_checkpoints(std::int64_t n_max) {
  const std::int64_t last = n_max / 2;
  const std::int64_t first = std::min<std::int64_t>(10, last);
  std::vector<std::int64_t> anchors{first, last};
  if (last > first)
    anchors.push_back(std::llround(std::sqrt(static_cast<double>(first) * static_cast<double>(last))));
  std::vector<std::int64_t> out;
  for (auto a : anchors) {
    out.push_back(a);
    out.push_back(2 * a);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Verdict classify(std::span<const DoublingDelta> deltas, double sum, const VerdictThresholds& t) {
  if (deltas.size() < 3) return Verdict::Inconclusive;
  const auto last = deltas.last(3);
  const double d0 = last[0].delta, d1 = last[1].delta, d2 = last[2].delta;

  if (d1 <= d0 / t.shrink_factor && d2 <= d1 / t.shrink_factor) return Verdict::DeltaVanishing;

  auto close = [&](double a, double b) { return std::abs(a - b) <= t.persistence_band * std::max(a, b); };
  const double floor = t.noise_floor_ulps * std::numeric_limits<double>::epsilon() * std::abs(sum);
  if (close(d0, d1) && close(d1, d2) && std::min({d0, d1, d2}) > floor) return Verdict::DeltaPersistent;
  return Verdict::Inconclusive;
}

SeriesReport partial_sums(const SeriesSpec& spec, std::span<const std::int64_t> checkpoints,
                          const VerdictThresholds& thresholds) {
  const std::int64_t start = start_index(spec);
  for (std::size_t i = 0; i < checkpoints.size(); ++i) {
    if (checkpoints[i] < 1 || checkpoints[i] > spec.n_max) spec_error("checkpoints must lie in [1, n_max]");
    if (i > 0 && checkpoints[i] <= checkpoints[i - 1]) spec_error("checkpoints must be strictly increasing");
  }

  SeriesReport report;
  report.spec = spec;
  report.start = start;
  report.checkpoints.reserve(checkpoints.size());

  CompensatedSum sum;
  auto next = checkpoints.begin();
  // Checkpoints before the first term see the empty sum.
  while (next != checkpoints.end() && *next < start) report.checkpoints.push_back({*next++, 0.0});
  for (std::int64_t n = start; n <= spec.n_max; ++n) {
    sum += raw_term(spec, n);
    if (next != checkpoints.end() && *next == n) report.checkpoints.push_back({*next++, sum.value()});
  }
  report.total = sum.value();

  for (const auto& cp : report.checkpoints) {
    auto twin = std::find_if(report.checkpoints.begin(), report.checkpoints.end(),
                             [&](const SeriesCheckpoint& c) { return c.n == 2 * cp.n; });
    if (twin != report.checkpoints.end())
      report.doubling_deltas.push_back({cp.n, twin->partial_sum - cp.partial_sum});
  }
  report.verdict_hint = classify(report.doubling_deltas, report.total, thresholds);
  return report;
}

}  // namespace qsandor
