#include "gparith/model.hpp"

#include <cmath>

#include "gparith/errors.hpp"

namespace gparith {

void UncertainScalar::validate() const {
  if (!std::isfinite(mean)) throw InvalidInput("operand mean must be finite");
  if (!std::isfinite(std) || !(std > 0.0)) {
    throw InvalidInput("operand std must be finite and positive");
  }
}

PrecisionMatrix3::PrecisionMatrix3(const Mat3& m) {
  if (!spd_check(m)) throw NotPositiveDefinite("precision matrix is not positive definite");
  m_ = 0.5 * (m + transpose(m));
}

bool PrecisionMatrix3::is_diagonal() const noexcept {
  return m_(0, 1) == 0.0 && m_(0, 2) == 0.0 && m_(1, 2) == 0.0;
}

GaussianTriple::GaussianTriple(const Vec3& m, const PrecisionMatrix3& p) : means(m), precision(p) {
  for (double v : means) {
    if (!std::isfinite(v)) throw InvalidInput("prior means must be finite");
  }
}

const char* to_string(OpKind kind) { return kind == OpKind::Add ? "add" : "mul"; }

OperationSpec::OperationSpec(OpKind kind, double theta) : kind_(kind), theta_(theta) {
  if (!std::isfinite(theta) || !(theta > 0.0)) {
    throw InvalidInput("theta must be finite and positive");
  }
  big_theta_ = 1.0 / (theta * theta);
  if (!std::isfinite(big_theta_)) throw InvalidInput("theta is too small");
}

GaussianTriple triple_from_independent(const UncertainScalar& x, const UncertainScalar& y,
                                       const UncertainScalar& z) {
  x.validate();
  y.validate();
  z.validate();
  const Mat3 p = Mat3::diag({1.0 / (x.std * x.std), 1.0 / (y.std * y.std), 1.0 / (z.std * z.std)});
  return GaussianTriple({x.mean, y.mean, z.mean}, PrecisionMatrix3(p));
}

Mat3 covariance_of(const PrecisionMatrix3& p) {
  if (p.is_diagonal()) {
    const Mat3& m = p.matrix();
    return Mat3::diag({1.0 / m(0, 0), 1.0 / m(1, 1), 1.0 / m(2, 2)});
  }
  return inverse_spd(p.matrix());
}

}  // namespace gparith
