#pragma once

// Pointwise numerators A_i(x) and denominators B_i(x) of the convergents
// C_i = A_i / B_i, from the three-term recurrence
//
//   A_i = a_i A_{i-1} + (x - z_{i-1}) A_{i-2}
//   B_i = a_i B_{i-1} + (x - z_{i-1}) B_{i-2}
//
// seeded with (A_{-2}, B_{-2}) = (0, 1), (A_{-1}, B_{-1}) = (1, 0) and
// (A_0, B_0) = (a_0, 1).

#include <cstddef>
#include <span>
#include <vector>

#include "thiele/core.hpp"

namespace thiele {

struct ConvergentPair {
  double numerator = 0.0;
  double denominator = 0.0;

  double ratio() const noexcept { return numerator / denominator; }
};

class ConvergentTrace {
 public:
  /// Pair for convergent index i in [-2, order].
  const ConvergentPair& at(int i) const { return pairs_.at(static_cast<std::size_t>(i + 2)); }
  /// Natural log of the total positive factor divided out of pair i.
  double scale_log(int i) const { return scale_log_.at(static_cast<std::size_t>(i + 2)); }

  const std::vector<ConvergentPair>& pairs() const noexcept { return pairs_; }
  bool scaled() const noexcept { return scaled_; }
  int order() const noexcept { return static_cast<int>(pairs_.size()) - 3; }

 private:
  friend ConvergentTrace convergent_trace(const ThieleModel&, double, bool);

  std::vector<ConvergentPair> pairs_;
  std::vector<double> scale_log_;
  bool scaled_ = false;
};

/// Magnitude above which a scaled trace divides the working pairs by
/// max(|A_i|, |B_i|). Pairs below the reciprocal are scaled up likewise.
inline constexpr double kRescaleThreshold = 1e100;

/// Runs the recurrence at x. With `scaled` set, the current and lagged pairs
/// are jointly divided by a positive factor whenever they leave
/// [1/kRescaleThreshold, kRescaleThreshold]; ratios and signs are unaffected.
ConvergentTrace convergent_trace(const ThieleModel& model, double x, bool scaled);

/// True when every pair of consecutive convergents differs at one of the
/// sample points, i.e. A_i B_{i+1} - A_{i+1} B_i is non-zero relative to
/// the size of its terms. Samples coinciding with a node are ignored; throws
/// InsufficientSamples when fewer than order + 2 usable samples remain.
bool check_consecutive_distinct(const ThieleModel& model,
                                std::span<const double> sample_xs);

/// Recomputes every coefficient a_{j+1} (j = 0..m-1) from the linearized
/// residuals f B_j - A_j of the two preceding convergents at node z_{j+1}:
///
///   a_{j+1} = -(z_{j+1} - z_j) (f B_{j-1} - A_{j-1}) / (f B_j - A_j)
///
/// and returns the largest deviation from the stored value, relative to
/// max(|phi|, |a_{j+1}|, |z_{j+1} - z_j| (|f B_{j-1}| + |A_{j-1}|) / |f B_j - A_j|)
/// so that coefficients which vanish in exact arithmetic are judged against
/// the rounding level of the residuals. The
/// model must have order >= 2 and every node must appear in `data`.
/// Unscaled traces are used; throws OverflowDetected when any of them
/// exceeds kRescaleThreshold in magnitude.
double check_phi_residual_identity(const ThieleModel& model, const SampleSet& data);

}  // namespace thiele
