#pragma once

// Executable checks of the theorems and inequalities, one TheoremId each.
// Every check walks a fixed parameter grid and records, per point, the two
// sides of the inequality and a signed violation (> 0 means broken, or >= 0
// for strict inequalities).

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qsandor/qspecial.hpp"
#include "qsandor/series_lab.hpp"

namespace qsandor {

enum class TheoremId {
  T11,               // S*(x) ~ log x / log log x
  T12,               // sum 1/(n S*(n)^a): convergent iff a > 1
  T13,               // Z*(x) ~ sqrt(8x+1)/2
  T14,               // sum 1/Z*(n)^a (a > 2), sum 1/(n Z*(n)^a) (all a > 0)
  T15,               // log P*(x) ~ log x
  T16,               // sum (1/n)(log log n / log P*(n))^a: convergent iff a > 1
  T21,               // lower < Z_q*(x) <= upper
  T22,               // P_q*(x) ~ x log p / log(1/(1-q))
  SandwichZ,         // Z_q* <= Z_q <= Z_q* + 1
  SandwichP,         // P_q* <= P_q <= P_q* + 1
  LimitQ1,           // Z_q*, P_q* recover Z*, P* as q -> 1-
  QGammaRecurrence,  // Γ_q(x+1) = [x]_q Γ_q(x)
  QGammaLimit,       // Γ_q -> Γ as q -> 1-
};

std::string_view to_string(TheoremId id) noexcept;
std::optional<TheoremId> parse_theorem(std::string_view name) noexcept;
std::span<const TheoremId> all_theorems() noexcept;

/// Acceptance tolerances; the defaults are the pinned values.
struct Tolerances {
  double recurrence_abs = 1e-10;     // |log Γ_q(x+1) - log Γ_q(x) - log [x]_q|
  double classical_limit_rel = 1e-3; // |Γ_q(x) - Γ(x)| / Γ(x) at q = 0.9999
  double t13_final = 1e-4;           // |Z*(x)/(sqrt(8x+1)/2) - 1| for x >= 1e8
  double t22_coarse = 1e-2;          // ratio deviation for x < 1e6
  double t22_fine = 1e-3;            // ratio deviation for x >= 1e6
  double limit_q1_z = 1e-2;          // |Z_q*(x) - [Z*(x)]_q| at q = 1 - 1e-4
  double limit_q1_p_margin = 1e-2;   // P points closer than this (in log) to some log m! are skipped
};

struct VerifyOptions {
  std::optional<double> x_max;
  std::optional<int> points;
  std::optional<double> q;  // replaces the default q grid by a single value
  std::optional<double> p;  // replaces the default p grid by a single value
  std::optional<std::int64_t> n_max;
  std::optional<Precision> precision;
  Tolerances tolerances;
  VerdictThresholds thresholds;
  std::uint64_t seed = 0x5eed5a4d0ULL;
  std::int64_t random_samples = 100'000;
};

struct VerifyFailure {
  nlohmann::json point;
  double lhs = 0.0;
  double rhs = 0.0;
  double violation = 0.0;
};

struct VerifyReport {
  TheoremId theorem = TheoremId::T21;
  nlohmann::json grid = nlohmann::json::object();
  std::int64_t points_checked = 0;
  std::vector<VerifyFailure> failures;
  double worst_violation = 0.0;

  bool passed() const noexcept { return failures.empty(); }
};

/// Runs one check. Library errors raised inside the grid propagate.
VerifyReport verify(TheoremId id, const VerifyOptions& options = {});

/// {theorem, grid, points_checked, failures:[{point, lhs, rhs, violation}],
///  worst_violation, passed}
nlohmann::json to_json(const VerifyReport& report);

}  // namespace qsandor
