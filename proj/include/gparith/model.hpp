#pragma once

// Core data model: uncertain operands, the joint Gaussian prior over the
// three operands, and the result of a refinement.

#include <string>

#include "gparith/linalg3.hpp"

namespace gparith {

/// A value known up to a Gaussian error: mean and standard deviation.
struct UncertainScalar {
  double mean = 0.0;
  double std = 1.0;

  /// Throws InvalidInput unless mean is finite and std is finite and > 0.
  void validate() const;
};

/// Symmetric positive-definite 3x3 precision (inverse covariance) matrix.
///
/// Slots follow the usual naming of the joint precision of (x, y, z):
///
///     | A  E  Z |
///     | E  B  H |
///     | Z  H  G |
///
/// Construction symmetrizes the input and rejects anything that fails the
/// Cholesky test, so every instance is a valid precision matrix.
class PrecisionMatrix3 {
 public:
  /// Throws InvalidInput on non-finite or asymmetric input and
  /// NotPositiveDefinite when the factorization fails.
  explicit PrecisionMatrix3(const Mat3& m);

  static PrecisionMatrix3 identity() { return PrecisionMatrix3(Mat3::identity()); }

  const Mat3& matrix() const noexcept { return m_; }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

  bool is_diagonal() const noexcept;

  friend bool operator==(const PrecisionMatrix3&, const PrecisionMatrix3&) = default;

 private:
  Mat3 m_;
};

/// Means (a, b, c) of the operands x, y, z together with their joint precision.
struct GaussianTriple {
  Vec3 means{};
  PrecisionMatrix3 precision = PrecisionMatrix3::identity();

  GaussianTriple() = default;
  /// Throws InvalidInput when a mean is not finite.
  GaussianTriple(const Vec3& m, const PrecisionMatrix3& p);
};

enum class OpKind { Add, Mul };

const char* to_string(OpKind kind);

/// Which constraint ties the operands together and how tightly:
/// the residual (x + y - z or x * y - z) is Gaussian with std `theta`.
class OperationSpec {
 public:
  /// Throws InvalidInput unless theta is finite and > 0.
  OperationSpec(OpKind kind, double theta);

  static OperationSpec add(double theta) { return {OpKind::Add, theta}; }
  static OperationSpec mul(double theta) { return {OpKind::Mul, theta}; }

  OpKind kind() const noexcept { return kind_; }
  double theta() const noexcept { return theta_; }
  /// Operation precision 1 / theta^2.
  double big_theta() const noexcept { return big_theta_; }

 private:
  OpKind kind_;
  double theta_;
  double big_theta_;
};

struct SolverDiagnostics {
  int iterations = 0;
  bool converged = false;
  int starts_tried = 0;
  /// Gradient norm at the solution divided by the objective's gradient scale
  /// (see the operation modules); compared against the configured tolerance.
  double gradient_norm = 0.0;
  /// Hessian at the solution has a clearly negative eigenvalue.
  bool saddle_point = false;
  /// Refined precision passed the Cholesky test.
  bool precision_spd = true;
};

/// Outcome of a refinement: refined means, the Hessian of the objective at
/// those means (the refined precision), and solver bookkeeping.
struct RefinedTriple {
  Vec3 means{};
  /// Not wrapped in PrecisionMatrix3: at a saddle point it is indefinite and
  /// still reported (diagnostics.precision_spd tells which case applies).
  Mat3 precision;
  double residual = 0.0;
  double objective = 0.0;
  SolverDiagnostics diagnostics;
};

/// Independent operands: diagonal precision diag(1/std^2).
GaussianTriple triple_from_independent(const UncertainScalar& x, const UncertainScalar& y,
                                       const UncertainScalar& z);

/// Covariance matrix, the inverse of the precision.
Mat3 covariance_of(const PrecisionMatrix3& p);

}  // namespace gparith
