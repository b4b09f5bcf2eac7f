#include "thiele/newman.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "thiele/convergents.hpp"

namespace thiele::newman {

namespace {

void require_n(int n) {
  if (n < 1) throw InvalidN("Newman point count n must be >= 1, got " + std::to_string(n));
}

void require_interval(double lo, double hi, std::size_t count) {
  if (count < 2) throw InvalidInput("grid needs at least 2 points");
  if (!(lo < hi)) throw InvalidInput("grid needs lo < hi");
}

double grid_point(double lo, double hi, std::size_t i, std::size_t count) {
  if (i + 1 == count) return hi;
  return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

}  // namespace

double eta(int n) {
  require_n(n);
  return std::exp(-1.0 / std::sqrt(static_cast<double>(n)));
}

SampleSet newman_points(int n) {
  const double e = eta(n);
  const auto count = static_cast<std::size_t>(2 * n + 1);
  std::vector<double> xs(count);
  // Left branch -eta^{j-1}, j = 1..n; right branch is its mirror image.
  for (int j = 1; j <= n; ++j) {
    const double p = std::pow(e, j - 1);
    xs[static_cast<std::size_t>(j - 1)] = -p;
    xs[count - static_cast<std::size_t>(j)] = p;
  }
  xs[static_cast<std::size_t>(n)] = 0.0;
  std::vector<double> fs(count);
  std::transform(xs.begin(), xs.end(), fs.begin(), [](double x) { return std::abs(x); });
  return SampleSet(std::move(xs), std::move(fs));
}

GridError sup_error_on_grid(const ThieleModel& model, const std::function<double(double)>& f,
                            double lo, double hi, std::size_t count) {
  require_interval(lo, hi, count);
  GridError out;
  for (std::size_t i = 0; i < count; ++i) {
    const double x = grid_point(lo, hi, i, count);
    const double e = std::abs(eval_cfrac(model, x) - f(x));
    if (std::isnan(e)) {
      ++out.nan_count;
      continue;
    }
    out.sup = std::max(out.sup, e);
  }
  return out;
}

double node_error_norm(const ThieleModel& model, const SampleSet& data) {
  double sum = 0.0;
  for (std::size_t i = 0; i < data.size(); ++i) {
    const double r = data.fs()[i] - eval_cfrac(model, data.xs()[i]);
    sum += r * r;
  }
  return std::sqrt(sum);
}

std::vector<PoleBracket> pole_scan(const ThieleModel& model, double lo, double hi,
                                   std::size_t samples) {
  require_interval(lo, hi, samples);
  std::vector<PoleBracket> out;
  if (model.order() == 0) return out;

  const int m = static_cast<int>(model.order());
  auto last = [&](double x) { return convergent_trace(model, x, true).at(m); };
  auto sign = [](double v) { return (v > 0.0) - (v < 0.0); };

  double x0 = lo;
  int s0 = sign(last(x0).denominator);
  for (std::size_t i = 1; i < samples; ++i) {
    const double x1 = grid_point(lo, hi, i, samples);
    const int s1 = sign(last(x1).denominator);
    if (s0 * s1 < 0) {
      double a = x0, b = x1;
      const int sa = s0;
      for (int it = 0; it < 200; ++it) {
        const double mid = a + (b - a) / 2;
        if (mid <= a || mid >= b) break;
        const int sm = sign(last(mid).denominator);
        if (sm == 0) {
          a = b = mid;
          break;
        }
        (sm == sa ? a : b) = mid;
      }
      // A common root of numerator and denominator is removable; a pole
      // shows either as a numerator of fixed sign across the narrowed
      // bracket or as a large quotient next to the root.
      const ConvergentPair pa = last(a), pb = last(b);
      const int na = sign(pa.numerator), nb = sign(pb.numerator);
      const bool numerator_keeps_sign = na != 0 && na == nb;
      const double peak = std::max(std::abs(pa.ratio()), std::abs(pb.ratio()));
      if (numerator_keeps_sign || !(peak <= kPoleMagnitude)) out.push_back({x0, x1});
    }
    x0 = x1;
    if (s1 != 0) s0 = s1;
  }
  return out;
}

double ols_slope(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw InvalidInput("regression needs at least two (x, y) pairs");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - mx) * (ys[i] - my);
    sxx += (xs[i] - mx) * (xs[i] - mx);
  }
  if (sxx == 0.0) throw InvalidInput("regression abscissae are all equal");
  return sxy / sxx;
}

std::optional<double> even_n_trend_slope(std::span<const StudyRow> rows) {
  std::vector<double> xs, ys;
  for (const auto& r : rows) {
    if (r.failed() || r.n % 2 != 0 || !(r.sup_err > 0.0)) continue;
    xs.push_back(std::sqrt(static_cast<double>(r.n)));
    ys.push_back(std::log10(r.sup_err));
  }
  if (xs.size() < 2) return std::nullopt;
  return ols_slope(xs, ys);
}

std::vector<StudyRow> run_newman_study(const StudyConfig& cfg) {
  require_n(cfg.n_min);
  if (cfg.n_max < cfg.n_min) throw InvalidN("n_max must not be below n_min");
  require_interval(cfg.grid.lo, cfg.grid.hi, cfg.grid.count);

  std::vector<StudyRow> rows;
  for (int n = cfg.n_min; n <= cfg.n_max; ++n) {
    StudyRow row;
    row.n = n;
    row.eta = eta(n);
    try {
      const SampleSet data = newman_points(n);
      const FitResult fit = fit_adaptive(data, FitConfig{cfg.tol, std::nullopt});
      row.order = static_cast<long>(fit.model.order());
      row.stopped_early = fit.report.stopped_early;
      row.sup_err = sup_error_on_grid(fit.model, [](double x) { return std::abs(x); },
                                      cfg.grid.lo, cfg.grid.hi, cfg.grid.count)
                        .sup;
      row.node_err_2norm = node_error_norm(fit.model, data);
      row.poles_in_unit_interval =
          static_cast<long>(pole_scan(fit.model, cfg.pole_lo, cfg.pole_hi, cfg.pole_samples).size());
    } catch (const Error& e) {
      row.order = -1;
      row.sup_err = kNaN;
      row.node_err_2norm = kNaN;
      row.poles_in_unit_interval = -1;
      row.stopped_early = false;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace thiele::newman
