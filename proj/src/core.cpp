#include "thiele/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <utility>

namespace thiele {

namespace {

bool has_exact_duplicate(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  return std::adjacent_find(values.begin(), values.end()) != values.end();
}

}  // namespace

SampleSet::SampleSet(std::vector<double> xs, std::vector<double> fs)
    : xs_(std::move(xs)), fs_(std::move(fs)) {
  if (xs_.empty()) throw InvalidInput("sample set is empty");
  if (xs_.size() != fs_.size())
    throw InvalidInput("abscissae and values differ in length");
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (!std::isfinite(xs_[i]))
      throw InvalidInput("non-finite abscissa at index " + std::to_string(i));
    if (!std::isfinite(fs_[i]))
      throw InvalidInput("non-finite value at index " + std::to_string(i));
  }
  if (has_exact_duplicate(xs_)) throw InvalidInput("duplicate abscissa");
}

ThieleModel::ThieleModel(std::vector<double> nodes, std::vector<double> coeffs)
    : nodes_(std::move(nodes)), coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw InvalidInput("model has no coefficients");
  if (nodes_.size() != coeffs_.size())
    throw InvalidInput("model nodes and coefficients differ in length");
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (!std::isfinite(nodes_[i]) || !std::isfinite(coeffs_[i]))
      throw InvalidInput("non-finite model entry at index " + std::to_string(i));
  }
  if (has_exact_duplicate(nodes_)) throw InvalidInput("duplicate model node");
  if (coeffs_.size() > 1 && coeffs_.back() == 0.0)
    throw InvalidInput("last coefficient of the continued fraction is zero");
}

std::size_t select_first_point(const SampleSet& data) {
  const auto& fs = data.fs();
  std::size_t best = 0;
  for (std::size_t i = 1; i < fs.size(); ++i)
    if (std::abs(fs[i]) < std::abs(fs[best])) best = i;
  return best;
}

double eval_cfrac(const ThieleModel& model, double x) noexcept {
  const auto& a = model.coeffs();
  const auto& z = model.nodes();
  double res = 0.0;
  for (std::size_t i = a.size() - 1; i >= 1; --i) res = (x - z[i - 1]) / (a[i] + res);
  return a[0] + res;
}

std::vector<double> eval_cfrac_batch(const ThieleModel& model, std::span<const double> xs) {
  std::vector<double> out(xs.size());
  std::transform(xs.begin(), xs.end(), out.begin(),
                 [&](double x) { return eval_cfrac(model, x); });
  return out;
}

namespace {

// Candidate inverse differences over the points not yet selected.
struct ResidualState {
  std::vector<double> rr;
  std::vector<double> xs;
  std::vector<double> fs;

  std::size_t size() const noexcept { return xs.size(); }

  void erase(std::size_t j) {
    const auto off = static_cast<std::ptrdiff_t>(j);
    rr.erase(rr.begin() + off);
    xs.erase(xs.begin() + off);
    fs.erase(fs.begin() + off);
  }
};

// NaN counts as an infinite error: the convergent certainly does not
// interpolate there.
double pointwise_error(double value, double f) {
  const double e = std::abs(value - f);
  return std::isnan(e) ? std::numeric_limits<double>::infinity() : e;
}

std::vector<double> remaining_errors(const std::vector<double>& nodes,
                                     const std::vector<double>& coeffs,
                                     const ResidualState& state) {
  // Evaluates without the ThieleModel invariants so that a tentative zero
  // last coefficient can be probed.
  std::vector<double> errs(state.size());
  for (std::size_t j = 0; j < state.size(); ++j) {
    double res = 0.0;
    for (std::size_t i = coeffs.size() - 1; i >= 1; --i)
      res = (state.xs[j] - nodes[i - 1]) / (coeffs[i] + res);
    errs[j] = pointwise_error(coeffs[0] + res, state.fs[j]);
  }
  return errs;
}

double stop_threshold(const ResidualState& state, double tol) {
  double scale = 0.0;
  for (double f : state.fs) scale = std::max(scale, std::abs(f));
  return scale > 0.0 ? tol * scale : tol;
}

bool below_threshold(const std::vector<double>& errs, double threshold) {
  return std::all_of(errs.begin(), errs.end(), [&](double e) { return e < threshold; });
}

std::string describe(const char* what, std::size_t step, double x) {
  std::ostringstream os;
  os.precision(17);
  os << what << " at step " << step << " (x = " << x << ")";
  return os.str();
}

}  // namespace

FitResult fit_adaptive(const SampleSet& data, const FitConfig& cfg) {
  if (!(cfg.tol > 0.0)) throw InvalidInput("tolerance must be positive");

  const std::size_t first = select_first_point(data);
  std::vector<double> nodes{data.xs()[first]};
  std::vector<double> coeffs{data.fs()[first]};
  FitReport report;

  ResidualState state;
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (i == first) continue;
    state.rr.push_back(data.fs()[i]);
    state.xs.push_back(data.xs()[i]);
    state.fs.push_back(data.fs()[i]);
  }

  std::vector<std::size_t> by_error(state.size());
  for (std::size_t k = 1; state.size() > 0; ++k) {
    if (cfg.max_order && coeffs.size() > *cfg.max_order) {
      report.diagnostics.push_back("maximum order reached");
      break;
    }

    const std::vector<double> errs = remaining_errors(nodes, coeffs, state);
    const double threshold = stop_threshold(state, cfg.tol);
    if (below_threshold(errs, threshold)) {
      report.stopped_early = true;
      break;
    }

    const double znew = nodes.back();
    const double anew = coeffs.back();
    for (std::size_t j = 0; j < state.size(); ++j)
      state.rr[j] = (state.xs[j] - znew) / (state.rr[j] - anew);

    by_error.resize(state.size());
    std::iota(by_error.begin(), by_error.end(), std::size_t{0});
    std::stable_sort(by_error.begin(), by_error.end(),
                     [&](std::size_t l, std::size_t r) { return errs[l] > errs[r]; });

    std::optional<std::size_t> chosen;
    for (std::size_t j : by_error) {
      // Only points the convergent misses by at least the threshold qualify.
      if (!(errs[j] >= threshold)) break;
      const double a = state.rr[j];
      if (!std::isfinite(a)) {
        report.diagnostics.push_back(describe("skipped non-finite inverse difference", k, state.xs[j]));
        continue;
      }
      if (a == 0.0) {
        ResidualState after = state;
        after.erase(j);
        bool is_last = after.size() == 0;
        if (!is_last) {
          nodes.push_back(state.xs[j]);
          coeffs.push_back(0.0);
          is_last = below_threshold(remaining_errors(nodes, coeffs, after),
                                    stop_threshold(after, cfg.tol));
          nodes.pop_back();
          coeffs.pop_back();
        }
        if (is_last) {
          report.diagnostics.push_back(describe("rejected zero final inverse difference", k, state.xs[j]));
          continue;
        }
      }
      chosen = j;
      break;
    }

    if (!chosen) {
      report.diagnostics.push_back("no admissible candidate at step " + std::to_string(k) +
                                   "; stopped at order " + std::to_string(coeffs.size() - 1));
      break;
    }
    nodes.push_back(state.xs[*chosen]);
    coeffs.push_back(state.rr[*chosen]);
    state.erase(*chosen);
  }

  // A zero accepted as an inner coefficient becomes the last one if a later
  // step was cut short.
  while (coeffs.size() > 1 && coeffs.back() == 0.0) {
    report.diagnostics.push_back("dropped trailing zero inverse difference");
    nodes.pop_back();
    coeffs.pop_back();
  }

  ThieleModel model(std::move(nodes), std::move(coeffs));
  report.steps_taken = model.order();
  report.node_errors.resize(data.size());
  for (std::size_t i = 0; i < data.size(); ++i)
    report.node_errors[i] = std::abs(eval_cfrac(model, data.xs()[i]) - data.fs()[i]);
  return {std::move(model), std::move(report)};
}

ThieleModel fit_fixed_order(const SampleSet& data) {
  const auto& xs = data.xs();
  const std::size_t n = xs.size();
  // level[k] holds phi_i[x_0, ..., x_{i-1}, x_k] for k >= i.
  std::vector<double> level = data.fs();
  std::vector<double> coeffs;
  coeffs.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    coeffs.push_back(level[i]);
    for (std::size_t k = i + 1; k < n; ++k) {
      const double den = level[k] - level[i];
      if (den == 0.0) throw BreakdownError(i + 1);
      level[k] = (xs[k] - xs[i]) / den;
      if (!std::isfinite(level[k])) throw BreakdownError(i + 1);
    }
  }
  if (n > 1 && coeffs.back() == 0.0) throw BreakdownError(n - 1);
  return ThieleModel(xs, std::move(coeffs));
}

}  // namespace thiele
