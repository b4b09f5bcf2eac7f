#pragma once

// Thiele continued-fraction interpolation.
//
// A model of order m is the continued fraction
//
//   C_m(x) = a_0 + (x - z_0) / (a_1 + (x - z_1) / (a_2 + ... + (x - z_{m-1}) / a_m))
//
// where z_i are the interpolation nodes in selection order and a_i are the
// diagonal inverse differences phi_i[z_0, ..., z_i].

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "thiele/errors.hpp"

namespace thiele {

/// Distinct real abscissae with finite function values. Validated on
/// construction; immutable afterwards.
class SampleSet {
 public:
  /// Throws InvalidInput on empty input, length mismatch, exactly
  /// duplicated abscissae or non-finite values.
  SampleSet(std::vector<double> xs, std::vector<double> fs);

  const std::vector<double>& xs() const noexcept { return xs_; }
  const std::vector<double>& fs() const noexcept { return fs_; }
  std::size_t size() const noexcept { return xs_.size(); }

 private:
  std::vector<double> xs_;
  std::vector<double> fs_;
};

/// Nodes z_0..z_m and coefficients a_0..a_m of a Thiele continued fraction.
class ThieleModel {
 public:
  /// Throws InvalidInput unless both lists have the same non-zero length,
  /// the nodes are pairwise distinct and finite, every coefficient is
  /// finite, and the last coefficient is non-zero when the order is >= 1.
  ThieleModel(std::vector<double> nodes, std::vector<double> coeffs);

  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  std::size_t order() const noexcept { return coeffs_.size() - 1; }

  friend bool operator==(const ThieleModel&, const ThieleModel&) = default;

 private:
  std::vector<double> nodes_;
  std::vector<double> coeffs_;
};

struct FitConfig {
  /// Relative stopping tolerance on the remaining points.
  double tol = 5e-15;
  std::optional<std::size_t> max_order;
};

struct FitReport {
  std::size_t steps_taken = 0;
  /// The tolerance criterion fired before every sample was used.
  bool stopped_early = false;
  /// |C_m(x_i) - f_i| for every input sample, in input order.
  std::vector<double> node_errors;
  /// Free-form notes about guarded corner cases (empty when none occurred).
  std::vector<std::string> diagnostics;
};

struct FitResult {
  ThieleModel model;
  FitReport report;
};

/// Index of the sample with the smallest |f|; ties go to the lowest index.
/// The data must be non-empty, which SampleSet guarantees.
std::size_t select_first_point(const SampleSet& data);

/// Builds the interpolant by greedy point selection: after the first node,
/// every step adds the remaining point where the current convergent has the
/// largest error. The resulting coefficients are always finite.
///
/// The build stops once the largest remaining error drops below
/// `cfg.tol * max|f|` over the remaining points (absolute `cfg.tol` when
/// that maximum is zero), when every point is used, or at `cfg.max_order`.
/// Candidates whose inverse difference is non-finite are skipped in favour
/// of the next-largest error; a zero inverse difference is rejected when it
/// would be the last coefficient.
FitResult fit_adaptive(const SampleSet& data, const FitConfig& cfg = {});

/// Builds the interpolant taking points strictly in input order, like the
/// classical table construction. Throws BreakdownError as soon as any
/// inverse difference needs a zero denominator or comes out non-finite.
ThieleModel fit_fixed_order(const SampleSet& data);

/// Backward evaluation of the continued fraction. Plain IEEE arithmetic:
/// returns +-inf at a pole and may return NaN when x sits exactly on a node
/// and an inner tail cancels to zero (perturb x by one ulp in that case).
double eval_cfrac(const ThieleModel& model, double x) noexcept;

std::vector<double> eval_cfrac_batch(const ThieleModel& model,
                                     std::span<const double> xs);

}  // namespace thiele
