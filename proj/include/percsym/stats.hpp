#pragma once

#include <cstdint>
#include <string>

namespace percsym {

struct Interval {
  double lo = 0;
  double hi = 0;
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
};

// Two-sided standard normal quantile z with P(|Z| <= z) = level.
double normal_two_sided_quantile(double level);

// Wilson score interval for `successes` out of `n` trials.
Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double level);

// mean +- z * standard_error
Interval normal_interval(double mean, double standard_error, double level);

enum class Verdict { consistent, violation, inconclusive };
std::string to_string(Verdict v);

// How a confidence interval for a quantity claimed to be >= 0 is read.
struct VerdictPolicy {
  std::uint64_t min_samples = 100;  // fewer samples: always inconclusive
  double max_half_width = 0.05;     // wider intervals straddling 0: inconclusive
};

// VIOLATION if hi < 0; CONSISTENT if the interval includes or exceeds 0 and is
// informative; INCONCLUSIVE otherwise.
Verdict classify_nonnegative(const Interval& ci, std::uint64_t n, const VerdictPolicy& policy = {});

// Folds per-item verdicts: any violation wins, then any inconclusive.
Verdict combine(Verdict a, Verdict b);

}  // namespace percsym
