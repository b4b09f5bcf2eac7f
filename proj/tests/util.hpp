#pragma once

// Shared generators for the test suites.

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "thiele/core.hpp"

namespace test_util {

/// n distinct doubles drawn uniformly from [lo, hi].
inline std::vector<double> distinct_uniform(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> xs;
  while (xs.size() < n) {
    const double x = u(rng);
    if (std::find(xs.begin(), xs.end(), x) == xs.end()) xs.push_back(x);
  }
  return xs;
}

/// p(x) / q(x) with real coefficients, lowest degree first.
struct RationalFunction {
  std::vector<double> p;
  std::vector<double> q;

  static double horner(const std::vector<double>& c, double x) {
    double r = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * x + *it;
    return r;
  }
  double numerator(double x) const { return horner(p, x); }
  double denominator(double x) const { return horner(q, x); }
  double operator()(double x) const { return numerator(x) / denominator(x); }
};

/// Random p/q with the given degrees; the denominator has constant term 2
/// and small higher coefficients so it stays away from zero on [-1, 1].
inline RationalFunction random_rational(std::mt19937_64& rng, int deg_p, int deg_q) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  RationalFunction r;
  for (int i = 0; i <= deg_p; ++i) r.p.push_back(u(rng));
  r.q.push_back(2.0);
  for (int i = 1; i <= deg_q; ++i) r.q.push_back(0.5 * u(rng));
  return r;
}

inline thiele::SampleSet random_rational_samples(std::mt19937_64& rng, std::size_t n) {
  std::uniform_int_distribution<int> deg(0, 3);
  const RationalFunction r = random_rational(rng, deg(rng), deg(rng));
  const auto xs = distinct_uniform(rng, n, -1.0, 1.0);
  std::vector<double> fs;
  for (double x : xs) fs.push_back(r(x));
  return thiele::SampleSet(xs, fs);
}

/// Backward evaluation of a truncated fraction without model invariants.
inline double raw_eval(const std::vector<double>& nodes, const std::vector<double>& coeffs,
                       std::size_t terms, double x) {
  double res = 0.0;
  for (std::size_t i = terms - 1; i >= 1; --i) res = (x - nodes[i - 1]) / (coeffs[i] + res);
  return coeffs[0] + res;
}

}  // namespace test_util
