#include "thiele/convergents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace thiele {

ConvergentTrace convergent_trace(const ThieleModel& model, double x, bool scaled) {
  const auto& a = model.coeffs();
  const auto& z = model.nodes();

  ConvergentTrace trace;
  trace.scaled_ = scaled;
  trace.pairs_.reserve(a.size() + 2);
  trace.scale_log_.reserve(a.size() + 2);

  ConvergentPair lag2{0.0, 1.0};
  ConvergentPair lag1{1.0, 0.0};
  ConvergentPair cur{a[0], 1.0};
  double log_scale = 0.0;
  trace.pairs_.push_back(lag2);
  trace.pairs_.push_back(lag1);
  trace.pairs_.push_back(cur);
  trace.scale_log_.assign(3, 0.0);

  lag2 = lag1;
  lag1 = cur;
  for (std::size_t i = 1; i < a.size(); ++i) {
    const double d = x - z[i - 1];
    cur = {a[i] * lag1.numerator + d * lag2.numerator,
           a[i] * lag1.denominator + d * lag2.denominator};
    if (scaled) {
      const double s = std::max(std::abs(cur.numerator), std::abs(cur.denominator));
      if (s > kRescaleThreshold || (s > 0.0 && s < 1.0 / kRescaleThreshold)) {
        cur.numerator /= s;
        cur.denominator /= s;
        lag1.numerator /= s;
        lag1.denominator /= s;
        log_scale += std::log(s);
      }
    }
    trace.pairs_.push_back(cur);
    trace.scale_log_.push_back(log_scale);
    lag2 = lag1;
    lag1 = cur;
  }
  return trace;
}

bool check_consecutive_distinct(const ThieleModel& model, std::span<const double> sample_xs) {
  const auto& nodes = model.nodes();
  std::vector<double> usable;
  for (double x : sample_xs)
    if (std::find(nodes.begin(), nodes.end(), x) == nodes.end()) usable.push_back(x);
  const std::size_t m = model.order();
  if (usable.size() < m + 2)
    throw InsufficientSamples("need at least " + std::to_string(m + 2) +
                              " samples away from the nodes, got " + std::to_string(usable.size()));

  std::vector<bool> distinct(m, false);
  for (double x : usable) {
    // Consecutive pairs share the same cumulative scale product, so the
    // scaled trace decides non-vanishing just like the unscaled one.
    const ConvergentTrace t = convergent_trace(model, x, true);
    for (std::size_t i = 0; i < m; ++i) {
      if (distinct[i]) continue;
      const auto& p = t.at(static_cast<int>(i));
      const auto& q = t.at(static_cast<int>(i) + 1);
      const double l = p.numerator * q.denominator;
      const double r = q.numerator * p.denominator;
      const double scale = std::abs(l) + std::abs(r);
      if (std::abs(l - r) > 1e-12 * scale) distinct[i] = true;
    }
  }
  return std::all_of(distinct.begin(), distinct.end(), [](bool b) { return b; });
}

double check_phi_residual_identity(const ThieleModel& model, const SampleSet& data) {
  const std::size_t m = model.order();
  if (m < 2) throw InvalidInput("residual identity check needs a model of order >= 2");
  const auto& z = model.nodes();
  const auto& a = model.coeffs();

  auto value_at = [&](double x) {
    const auto it = std::find(data.xs().begin(), data.xs().end(), x);
    if (it == data.xs().end()) throw InvalidInput("model node is not among the samples");
    return data.fs()[static_cast<std::size_t>(it - data.xs().begin())];
  };

  double worst = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double x = z[j + 1];
    const double f = value_at(x);
    const ConvergentTrace t = convergent_trace(model, x, false);
    for (int i = -2; i <= static_cast<int>(j); ++i) {
      const auto& p = t.at(i);
      if (!(std::abs(p.numerator) <= kRescaleThreshold && std::abs(p.denominator) <= kRescaleThreshold))
        throw OverflowDetected("unscaled convergent recurrence exceeds 1e100 at node " +
                               std::to_string(j + 1));
    }

    const int jj = static_cast<int>(j);
    const auto& prev = t.at(jj - 1);
    const auto& curr = t.at(jj);
    const double upper = f * prev.denominator - prev.numerator;
    const double lower = f * curr.denominator - curr.numerator;
    const double phi = -(x - z[j]) * upper / lower;

    // Deviation relative to the larger of the two values and the magnitude
    // of the operands of the upper residual, which loses all relative
    // accuracy when a coefficient is zero in exact arithmetic.
    const double expected = a[j + 1];
    const double diff = std::abs(phi - expected);
    const double operand =
        std::abs(x - z[j]) * (std::abs(f * prev.denominator) + std::abs(prev.numerator)) /
        std::abs(lower);
    const double size = std::max({std::abs(phi), std::abs(expected), operand});
    const double dev = diff == 0.0 ? 0.0 : (size > 0.0 ? diff / size : diff);
    worst = std::max(worst, std::isnan(dev) ? std::numeric_limits<double>::infinity() : dev);
  }
  return worst;
}

}  // namespace thiele
