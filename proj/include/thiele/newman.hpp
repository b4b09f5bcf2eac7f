#pragma once

// Rational interpolation of |x| in Newman points and the associated
// convergence study.

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "thiele/core.hpp"

namespace thiele::newman {

/// exp(-1/sqrt(n)). Throws InvalidN for n < 1.
double eta(int n);

/// The 2n+1 points (-1, -eta, ..., -eta^{n-1}, 0, eta^{n-1}, ..., eta, 1)
/// with f = |x|, in ascending order. Throws InvalidN for n < 1.
SampleSet newman_points(int n);

struct GridError {
  double sup = 0.0;
  /// Grid points skipped because the model evaluated to NaN there.
  std::size_t nan_count = 0;
};

/// max |C(x) - f(x)| over `count` equispaced points in [lo, hi].
/// Throws InvalidInput unless count >= 2 and lo < hi.
GridError sup_error_on_grid(const ThieleModel& model,
                            const std::function<double(double)>& f, double lo,
                            double hi, std::size_t count);

/// Euclidean norm of f_i - C(x_i) over every sample in `data`.
double node_error_norm(const ThieleModel& model, const SampleSet& data);

/// A denominator root bracket [lo, hi] containing a pole candidate.
struct PoleBracket {
  double lo = 0.0;
  double hi = 0.0;
};

/// |C| must exceed this somewhere in a bracket for it to count as a pole.
inline constexpr double kPoleMagnitude = 1e6;

/// Scans B_m (scaled recurrence) at `samples` equispaced points of [lo, hi]
/// for strict sign changes. Each change is narrowed by bisection to adjacent
/// doubles and reported unless it looks removable: A_m changes sign (or
/// vanishes) across the narrowed bracket while |A_m / B_m| stays below
/// kPoleMagnitude. Pole-zero doublets whose residue is below the rounding
/// level of B_m are therefore still reported.
/// Throws InvalidInput unless samples >= 2 and lo < hi.
std::vector<PoleBracket> pole_scan(const ThieleModel& model, double lo, double hi,
                                   std::size_t samples);

struct GridSpec {
  double lo = 0.0;
  double hi = 0.01;
  std::size_t count = 10000;
};

struct StudyConfig {
  int n_min = 5;
  int n_max = 50;
  GridSpec grid;
  double tol = 5e-15;
  double pole_lo = -1.0;
  double pole_hi = 1.0;
  std::size_t pole_samples = 20001;
};

struct StudyRow {
  int n = 0;
  double eta = 0.0;
  /// Model order; -1 when the fit failed.
  long order = -1;
  double sup_err = 0.0;
  double node_err_2norm = 0.0;
  long poles_in_unit_interval = 0;
  bool stopped_early = false;
  /// Set when this row's fit threw; the numeric fields are then NaN / -1.
  std::optional<std::string> error;

  bool failed() const noexcept { return error.has_value(); }
};

/// One row per n in [n_min, n_max], ordered by n. A failing fit is recorded
/// in its row and does not abort the study.
/// Throws InvalidN unless 1 <= n_min <= n_max.
std::vector<StudyRow> run_newman_study(const StudyConfig& cfg);

/// Ordinary least-squares slope of log10(sup_err) against sqrt(n) over the
/// non-failed rows with even n and positive error. Empty when fewer than two
/// such rows exist.
std::optional<double> even_n_trend_slope(std::span<const StudyRow> rows);

/// OLS slope of ys against xs. Requires at least two points with distinct xs.
double ols_slope(std::span<const double> xs, std::span<const double> ys);

}  // namespace thiele::newman
