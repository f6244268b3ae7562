#include "emcel/cantor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <string>

#include "emcel/errors.hpp"

namespace emcel::cantor {

namespace {

__extension__ typedef unsigned __int128 u128;

// Cantor function digits below this scale no longer change a double result.
constexpr double kDigitCutoff = 0x1p-70;
constexpr double kTiny = 0x1p-60;

// x in (0, 1) as N / 2^E with N < 2^E and E <= 113.
struct Dyadic {
  u128 numerator;
  int exponent;
};

Dyadic to_dyadic(double x) {
  int e = 0;
  const double f = std::frexp(x, &e);  // x = f * 2^e, f in [0.5, 1)
  const auto mantissa = static_cast<std::uint64_t>(std::ldexp(f, 53));
  return {mantissa, 53 - e};
}

}  // namespace

std::vector<Interval> set_intervals(int n) {
  if (n < 0 || n > kMaxLevel)
    throw DomainError("Cantor level must lie in [0, " + std::to_string(kMaxLevel) + "]");
  // integer left ends in units of 3^-n
  std::vector<std::uint64_t> lefts{0};
  lefts.reserve(std::size_t{1} << n);
  std::uint64_t pow3 = 1;
  for (int level = 1; level <= n; ++level) {
    const std::size_t count = lefts.size();
    for (std::size_t i = 0; i < count; ++i) lefts.push_back(lefts[i] + 2 * pow3);
    pow3 *= 3;
  }
  // lefts are in units of 3^-n: A -> A/3 keeps the integer, A -> (A+2)/3 adds
  // 2*3^(level-1); the first half stays below the second, so the list is sorted
  const double scale = static_cast<double>(pow3);
  std::vector<Interval> out;
  out.reserve(lefts.size());
  for (auto l : lefts) {
    const double left = static_cast<double>(l) / scale;
    out.push_back({left, n == 0 ? 1.0 : static_cast<double>(l + 1) / scale});
  }
  return out;
}

double cdf(double x) {
  if (std::isnan(x)) return x;
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;

  double scale = 0.5;
  while (x < kTiny) {  // leading ternary zeros
    x *= 3.0;
    scale *= 0.5;
  }
  double result = 0.0;
  auto [num, exp] = to_dyadic(x);
  const u128 mask = (u128{1} << exp) - 1;
  while (num != 0 && scale > kDigitCutoff) {
    num *= 3;
    const auto digit = static_cast<unsigned>(num >> exp);
    num &= mask;
    if (digit == 1) return result + scale;
    if (digit == 2) result += scale;
    scale *= 0.5;
  }
  return result;
}

double cdf_primitive(double x) {
  if (std::isnan(x)) return x;
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 0.5 + (x - 1.0);

  // P(x) = P(3x)/6                     on [0, 1/3]
  //      = 1/12 + (3x - 1)/6           on [1/3, 2/3]
  //      = 1/4 + (3x - 2)/6 + P(3x-2)/6 on [2/3, 1]
  double coef = 1.0;
  while (x < kTiny) {
    x *= 3.0;
    coef /= 6.0;
  }
  double total = 0.0;
  auto [num, exp] = to_dyadic(x);
  const u128 mask = (u128{1} << exp) - 1;
  while (num != 0 && coef > 1e-30) {
    num *= 3;
    const auto digit = static_cast<unsigned>(num >> exp);
    num &= mask;
    const double rest = std::ldexp(static_cast<double>(num), -exp);
    if (digit == 1) return total + coef * (1.0 / 12.0 + rest / 6.0);
    if (digit == 2) total += coef * (0.25 + rest / 6.0);
    coef /= 6.0;
  }
  return total;
}

double level_cdf(std::span<const Interval> intervals, int n, double x) {
  if (intervals.empty()) return 0.0;
  const double count = static_cast<double>(intervals.size());
  // number of intervals entirely left of x
  auto it = std::upper_bound(intervals.begin(), intervals.end(), x,
                             [](double v, const Interval& iv) { return v < iv.right; });
  const auto full = static_cast<double>(it - intervals.begin());
  double partial = 0.0;
  if (it != intervals.end() && x > it->left) partial = (x - it->left) * std::pow(1.5, n);
  return full / count + partial;
}

double cdf_bound_check(int n, std::span<const double> grid) {
  const auto intervals = set_intervals(n);
  double worst = 0.0;
  for (double x : grid) worst = std::max(worst, std::abs(cdf(x) - level_cdf(intervals, n, x)));
  return worst;
}

int default_level(double h) {
  if (!(h > 0.0 && h < 1.0)) throw DomainError("default Cantor level needs h in (0, 1)");
  return std::max(1, static_cast<int>(std::ceil(std::log2(1.0 / h))));
}

double CantorSingularPart::cdf(double x) const { return cantor::cdf(x); }

double CantorSingularPart::increment_integral(double a, double b) const {
  if (!(b > a)) return 0.0;
  return (cdf_primitive(b) - cdf_primitive(a)) - (b - a) * cantor::cdf(a);
}

PartPtr level_density(int n) {
  const auto intervals = set_intervals(n);
  const double value = std::pow(1.5, n);
  std::vector<PiecewiseConstantDensity::Segment> segments;
  segments.reserve(intervals.size());
  for (const auto& iv : intervals) segments.push_back({iv.left, iv.right, value});
  return std::make_shared<PiecewiseConstantDensity>(0.0, std::move(segments));
}

}  // namespace emcel::cantor
