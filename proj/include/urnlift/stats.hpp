#pragma once

#include <cstdint>
#include <vector>

#include "urnlift/rng.hpp"

namespace urnlift {

struct KsReport {
  double d = 0.0;         // sup |F_a - F_b|
  double critical = 0.0;  // c(alpha) * sqrt((n+m)/(n*m))
  double alpha = 0.0;
  bool pass = false;  // d <= critical
  std::size_t n = 0;
  std::size_t m = 0;
};

/// Two-sample Kolmogorov-Smirnov test at the asymptotic critical value
/// c(alpha) = sqrt(-ln(alpha/2)/2). Requires n, m >= 25 (the asymptotic
/// threshold is unreliable below that).
KsReport ks_two_sample(std::vector<double> a, std::vector<double> b, double alpha);

double ks_critical(double alpha, std::size_t n, std::size_t m);

struct ChiSquareReport {
  double statistic = 0.0;
  int dof = 0;
  double critical = 0.0;
  double alpha = 0.0;
  bool pass = false;  // statistic <= critical
};

/// Pearson goodness-of-fit of observed counts against cell probabilities.
/// Probabilities must sum to 1 (1e-9) and every expected count must be >= 5.
ChiSquareReport chi_square_gof(const std::vector<std::uint64_t>& counts,
                               const std::vector<double>& probs, double alpha = 0.001);

/// Upper quantile helpers exposed for testing. gamma_p is the regularized
/// lower incomplete gamma P(a, x).
double gamma_p(double a, double x);
double chi_square_quantile(double p, int dof);

/// First k weights of a GEM(theta) stick-breaking sequence:
/// w_i = B_i * prod_{j<i} (1 - B_j), B_i iid Beta(1, theta). This is the
/// size-biased order, so w_1 is the size-biased first weight (Uniform(0,1)
/// when theta = 1).
std::vector<double> gem_stick_breaking(double theta, int k, UniformSource& source);

/// Expected number of distinct atoms after n draws of the theta-seeded
/// exchangeable urn: sum_{i=0}^{n-1} theta / (theta + i).
double expected_distinct(double theta, std::uint64_t n);

}  // namespace urnlift
