#pragma once

// Multiplication of Gaussian operands: MAP refinement of (x, y, z)
// under the soft constraint x * y = z. The objective
//
//   F(v) = 1/2 [ (v - m)^T P (v - m) + T (x y - z)^2 ]
//
// is a nonconvex quartic, so the minimizer is found numerically with a damped
// Newton method run from several starting points. The refined precision is
// the Hessian of F at the minimizer.

#include <optional>
#include <vector>

#include "gparith/errors.hpp"
#include "gparith/model.hpp"

namespace gparith {

struct MulSolverConfig {
  /// Convergence when |grad F| <= gradient_tolerance * gradient_scale_mul.
  double gradient_tolerance = 1e-10;
  int max_iterations = 200;
  /// Upper bound on the number of multi-start points tried.
  int max_starts = 8;
  /// Initial Levenberg damping, relative to the largest Hessian diagonal.
  double damping_initial = 1e-3;

  /// Throws InvalidInput unless every field is finite and positive.
  void validate() const;
};

double objective_mul(const Vec3& point, const GaussianTriple& prior, double big_theta);

/// P (v - m) + T r (y, x, -1), r = x y - z.
Vec3 gradient_mul(const Vec3& point, const GaussianTriple& prior, double big_theta);

/// P + T [[y^2, 2xy - z, -y], [2xy - z, x^2, -x], [-y, -x, 1]].
Mat3 hessian_mul(const Vec3& point, const GaussianTriple& prior, double big_theta);

/// Magnitude of the terms that make up gradient_mul at `point`; rounding
/// error in the gradient is proportional to it, so convergence is judged
/// against tolerance * scale:
///
///   1 + |P m| + |P v| + T (|x y| + |z|) |(y, x, 1)|
double gradient_scale_mul(const Vec3& point, const GaussianTriple& prior, double big_theta);

/// Result of one damped Newton run.
struct LocalMinimum {
  Vec3 point{};
  double objective = 0.0;
  /// Relative gradient norm (|g| / gradient_scale_mul).
  double gradient_norm = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Damped (Levenberg) Newton descent from `start`. Never throws on
/// non-convergence; inspect `converged`.
LocalMinimum minimize_mul_from(const Vec3& start, const GaussianTriple& prior, double big_theta,
                               const MulSolverConfig& config);

/// Deterministic, ordered multi-start set:
///   prior means (a, b, c);
///   (c / b, b, c)              when |b| > 1e-8;
///   (a, c / a, c)              when |a| > 1e-8;
///   (s sqrt|c|, s sqrt|c| sign c, c), s = +1, -1, when |c| > 1e-12;
///   (a + theta, b + theta, c).
/// Truncated to `max_starts` entries.
std::vector<Vec3> mul_start_points(const GaussianTriple& prior, double theta, int max_starts);

/// Raised when no start converges. Carries the lowest-objective iterate.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& what, RefinedTriple best)
      : Error(what), best_(std::move(best)) {}
  const char* code() const noexcept override { return "non_convergence"; }
  const RefinedTriple& best() const noexcept { return best_; }

 private:
  RefinedTriple best_;
};

/// Multi-start refinement. Among converged starts the lowest objective wins;
/// objectives within 1e-12 (relative) tie and the point closest to the prior
/// means is taken. Throws NonConvergence when nothing converges.
RefinedTriple refine_mul(const GaussianTriple& prior, const OperationSpec& spec,
                         const MulSolverConfig& config = {});

/// Single local solve seeded at `start` (branch following). Returns the
/// result with diagnostics.converged == false rather than throwing.
RefinedTriple refine_mul_from(const GaussianTriple& prior, const OperationSpec& spec,
                              const Vec3& start, const MulSolverConfig& config = {});

/// Packages a point as a RefinedTriple: Hessian, residual, objective and the
/// saddle / SPD flags. Solver bookkeeping fields are left for the caller.
RefinedTriple finish_mul(const Vec3& point, const GaussianTriple& prior, double big_theta);

}  // namespace gparith
