#pragma once

// Sweeps one prior mean over an interval and refines at every grid point.
// For multiplication with the first mean swept, the second refined mean
// traced against the sweep value is the smoothed counterpart of the
// hyperbola y = c / x: it follows c / x for large |x| and stays finite at 0.

#include <optional>
#include <vector>

#include "gparith/multiplication.hpp"

namespace gparith {

enum class SweepOperand { First, Second, Third };
enum class SweepMode {
  /// Each solve is seeded with the previous sample's solution (branch following).
  WarmStart,
  /// Independent multi-start refinement at every sample (global-minimum curve).
  ColdMultiStart,
};

struct SweepSpec {
  SweepOperand operand = SweepOperand::First;
  double from = -1.0;
  double to = 1.0;
  int steps = 401;
  SweepMode mode = SweepMode::WarmStart;

  /// Throws InvalidInput unless from < to (both finite) and steps >= 2.
  void validate() const;
  /// Uniform grid, both endpoints included.
  double value_at(int i) const;
};

struct TraceSample {
  double sweep_value = 0.0;
  RefinedTriple refined;
};

struct TraceCurve {
  SweepSpec spec;
  /// Prior before sweeping; the swept mean's base value is overwritten per sample.
  GaussianTriple base;
  std::vector<TraceSample> samples;
};

/// Non-converged samples are kept with diagnostics.converged == false.
TraceCurve trace_sweep(const GaussianTriple& base, const OperationSpec& op, const SweepSpec& sweep,
                       const MulSolverConfig& config = {});

struct CurveJump {
  double from = 0.0;
  double to = 0.0;
  /// Euclidean distance between the two refined mean vectors.
  double magnitude = 0.0;
};

struct CurveFeatures {
  double max_second_mean = 0.0;
  double max_second_mean_at = 0.0;
  std::vector<CurveJump> jumps;
  /// Max relative deviation of the partner mean from c / sweep over samples
  /// with |sweep| >= asymptote_min_abs. Empty when the sweep moves the third
  /// mean or no sample qualifies.
  std::optional<double> asymptote_max_rel_dev;
};

inline constexpr double kDefaultJumpThreshold = 10.0;

/// Jumps are consecutive converged pairs whose refined-mean distance exceeds
/// jump_threshold times the median consecutive distance. The asymptote is
/// checked for the mean paired with the swept one (second for First, first
/// for Second) against c / sweep, with c the base third mean.
/// Throws EmptyCurve when no sample converged.
CurveFeatures detect_features(const TraceCurve& curve,
                              double jump_threshold = kDefaultJumpThreshold,
                              double asymptote_min_abs = 50.0);

}  // namespace gparith
