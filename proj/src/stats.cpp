#include "percsym/stats.hpp"

#include "percsym/error.hpp"

#include <boost/math/distributions/normal.hpp>

#include <cmath>

namespace percsym {

double normal_two_sided_quantile(double level) {
  if (!(level > 0 && level < 1)) throw InvalidArgument("confidence level must lie in (0, 1)");
  return boost::math::quantile(boost::math::normal_distribution<double>(), 0.5 + level / 2);
}

Interval wilson_interval(std::uint64_t successes, std::uint64_t n, double level) {
  if (n == 0) throw InvalidArgument("Wilson interval needs n >= 1");
  if (successes > n) throw InvalidArgument("more successes than trials");
  const double z = normal_two_sided_quantile(level);
  const double nn = static_cast<double>(n);
  const double phat = static_cast<double>(successes) / nn;
  const double z2 = z * z;
  const double denom = 1 + z2 / nn;
  const double center = (phat + z2 / (2 * nn)) / denom;
  const double half = z / denom * std::sqrt(phat * (1 - phat) / nn + z2 / (4 * nn * nn));
  Interval ci{std::max(0.0, center - half), std::min(1.0, center + half)};
  // guard the lo <= estimate <= hi invariant against rounding at the ends
  ci.lo = std::min(ci.lo, phat);
  ci.hi = std::max(ci.hi, phat);
  return ci;
}

Interval normal_interval(double mean, double standard_error, double level) {
  const double z = normal_two_sided_quantile(level);
  return {mean - z * standard_error, mean + z * standard_error};
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::consistent: return "CONSISTENT";
    case Verdict::violation: return "VIOLATION";
    case Verdict::inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

Verdict classify_nonnegative(const Interval& ci, std::uint64_t n, const VerdictPolicy& policy) {
  if (n < policy.min_samples) return Verdict::inconclusive;
  if (ci.hi < 0) return Verdict::violation;
  if (ci.lo >= 0) return Verdict::consistent;
  if ((ci.hi - ci.lo) / 2 > policy.max_half_width) return Verdict::inconclusive;
  return Verdict::consistent;
}

Verdict combine(Verdict a, Verdict b) {
  if (a == Verdict::violation || b == Verdict::violation) return Verdict::violation;
  if (a == Verdict::inconclusive || b == Verdict::inconclusive) return Verdict::inconclusive;
  return Verdict::consistent;
}

}  // namespace percsym
