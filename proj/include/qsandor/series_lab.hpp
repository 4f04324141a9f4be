#pragma once

// Partial sums and finite-N convergence diagnostics for
//
//   S_STAR_WEIGHTED   sum 1 / (n S*(n)^a)
//   Z_STAR_PLAIN      sum 1 / Z*(n)^a
//   Z_STAR_WEIGHTED   sum 1 / (n Z*(n)^a)
//   P_STAR_LOGLOG     sum (1/n) (log log n / log P*(n))^a
//
// The verdict is a heuristic read of the doubling deltas sum(2N) - sum(N);
// it is not a convergence proof.

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace qsandor {

enum class SeriesKind { SStarWeighted, ZStarPlain, ZStarWeighted, PStarLogLog };
enum class Verdict { DeltaVanishing, DeltaPersistent, Inconclusive };

std::string_view to_string(SeriesKind kind) noexcept;
std::string_view to_string(Verdict verdict) noexcept;
std::optional<SeriesKind> parse_series_kind(std::string_view name) noexcept;

struct SeriesSpec {
  static constexpr std::int64_t kMaxN = 100'000'000;

  SeriesKind kind = SeriesKind::ZStarPlain;
  double alpha = 1.0;
  double p = 2.0;  // P_STAR_LOGLOG only
  std::int64_t n_max = 1'000'000;
};

/// Throws SpecError unless alpha > 0, 4 <= n_max <= 1e8 and (for the P
/// family) p > 1.
void validate(const SeriesSpec& spec);

/// First summed index: 1, except P_STAR_LOGLOG which starts at the first
/// n >= 3 with P*(n) >= 2 so that log log n and log P*(n) are both positive.
std::int64_t start_index(const SeriesSpec& spec);

/// The n-th term. SpecError below start_index or above n_max.
double term_of(const SeriesSpec& spec, std::int64_t n);

struct VerdictThresholds {
  double shrink_factor = 2.0;      // vanishing: each delta <= previous / shrink_factor
  double persistence_band = 0.5;   // persistent: consecutive deltas differ by <= band * larger
  double noise_floor_ulps = 10.0;  // persistent deltas must exceed this * eps * sum
};

struct SeriesCheckpoint {
  std::int64_t n;
  double partial_sum;
};

struct DoublingDelta {
  std::int64_t n;  // delta = sum(2n) - sum(n)
  double delta;
};

struct SeriesReport {
  SeriesSpec spec;
  std::int64_t start = 1;
  std::vector<SeriesCheckpoint> checkpoints;
  std::vector<DoublingDelta> doubling_deltas;
  double total = 0.0;  // sum up to n_max
  Verdict verdict_hint = Verdict::Inconclusive;
};

/// Doubling-window checkpoints {a, 2a} for three anchors a spaced
/// geometrically from 10 to n_max/2.
std::vector<std::int64_t> default_checkpoints(std::int64_t n_max);

/// Verdict from the last three deltas (Inconclusive if there are fewer).
Verdict classify(std::span<const DoublingDelta> deltas, double sum,
                 const VerdictThresholds& thresholds = {});

/// Streams n = start ... n_max with compensated summation. Checkpoints must
/// be strictly increasing, positive and <= n_max (SpecError otherwise); a
/// delta is recorded for every checkpoint N whose double 2N is also a
/// checkpoint.
SeriesReport partial_sums(const SeriesSpec& spec, std::span<const std::int64_t> checkpoints,
                          const VerdictThresholds& thresholds = {});

}  // namespace qsandor
