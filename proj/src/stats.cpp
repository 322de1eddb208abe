#include "urnlift/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace urnlift {

double ks_critical(double alpha, std::size_t n, std::size_t m) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in (0,1)");
  const double c = std::sqrt(-0.5 * std::log(alpha / 2.0));
  const double nn = static_cast<double>(n), mm = static_cast<double>(m);
  return c * std::sqrt((nn + mm) / (nn * mm));
}

KsReport ks_two_sample(std::vector<double> a, std::vector<double> b, double alpha) {
  if (a.size() < 25 || b.size() < 25)
    throw ConfigError("two-sample KS needs at least 25 samples per side");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  double d = 0.0;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KsReport report;
  report.d = d;
  report.critical = ks_critical(alpha, a.size(), b.size());
  report.alpha = alpha;
  report.pass = d <= report.critical;
  report.n = a.size();
  report.m = b.size();
  return report;
}

namespace {

double ln_gamma(double x) { return std::lgamma(x); }

// Regularized lower incomplete gamma by series (x < a+1) or continued
// fraction (x >= a+1); standard Numerical Recipes style split.
double gamma_p_series(double a, double x) {
  double ap = a;
  double sum = 1.0 / a;
  double del = sum;
  for (int i = 0; i < 500; ++i) {
    ap += 1.0;
    del *= x / ap;
    sum += del;
    if (std::abs(del) < std::abs(sum) * 1e-15) break;
  }
  return sum * std::exp(-x + a * std::log(x) - ln_gamma(a));
}

double gamma_q_contfrac(double a, double x) {
  const double tiny = 1e-300;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 500; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 1e-15) break;
  }
  return std::exp(-x + a * std::log(x) - ln_gamma(a)) * h;
}

}  // namespace

double gamma_p(double a, double x) {
  if (!(a > 0.0) || x < 0.0) throw ConfigError("gamma_p needs a > 0, x >= 0");
  if (x == 0.0) return 0.0;
  return x < a + 1.0 ? gamma_p_series(a, x) : 1.0 - gamma_q_contfrac(a, x);
}

double chi_square_quantile(double p, int dof) {
  if (!(p > 0.0 && p < 1.0)) throw ConfigError("quantile level must lie in (0,1)");
  if (dof < 1) throw ConfigError("chi-square needs dof >= 1");
  const double a = 0.5 * dof;
  auto cdf = [a](double x) { return gamma_p(a, 0.5 * x); };
  double lo = 0.0;
  double hi = std::max(10.0, dof + 20.0 * std::sqrt(static_cast<double>(2 * dof)));
  while (cdf(hi) < p) hi *= 2.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (cdf(mid) < p) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo < 1e-12 * std::max(1.0, hi)) break;
  }
  return 0.5 * (lo + hi);
}

ChiSquareReport chi_square_gof(const std::vector<std::uint64_t>& counts,
                               const std::vector<double>& probs, double alpha) {
  if (counts.size() != probs.size() || counts.size() < 2)
    throw ConfigError("chi-square needs matching counts and probabilities over >= 2 cells");
  double psum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw ConfigError("cell probabilities must be nonnegative");
    psum += p;
  }
  if (std::abs(psum - 1.0) > 1e-9) throw ConfigError("cell probabilities must sum to 1");
  std::uint64_t total = 0;
  for (auto c : counts) total += c;
  double stat = 0.0;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    const double expected = static_cast<double>(total) * probs[i];
    if (expected < 5.0)
      throw ConfigError("chi-square cell " + std::to_string(i) +
                        " has expected count below 5; merge cells or add samples");
    const double diff = static_cast<double>(counts[i]) - expected;
    stat += diff * diff / expected;
  }
  ChiSquareReport report;
  report.statistic = stat;
  report.dof = static_cast<int>(counts.size()) - 1;
  report.critical = chi_square_quantile(1.0 - alpha, report.dof);
  report.alpha = alpha;
  report.pass = stat <= report.critical;
  return report;
}

std::vector<double> gem_stick_breaking(double theta, int k, UniformSource& source) {
  if (!(theta > 0.0)) throw ConfigError("stick breaking needs theta > 0");
  if (k < 1) throw ConfigError("stick breaking needs k >= 1");
  std::vector<double> weights(static_cast<std::size_t>(k));
  double remaining = 1.0;
  for (auto& w : weights) {
    // Beta(1, theta) by inversion: 1 - U^(1/theta).
    const double b = 1.0 - std::pow(1.0 - source.next(), 1.0 / theta);
    w = remaining * b;
    remaining *= 1.0 - b;
  }
  return weights;
}

double expected_distinct(double theta, std::uint64_t n) {
  if (!(theta > 0.0)) throw ConfigError("expected_distinct needs theta > 0");
  double sum = 0.0;
  for (std::uint64_t i = 0; i < n; ++i) sum += theta / (theta + static_cast<double>(i));
  return sum;
}

}  // namespace urnlift
