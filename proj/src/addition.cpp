#include "gparith/addition.hpp"

#include <cmath>

#include "gparith/errors.hpp"

namespace gparith {

namespace {

void check_big_theta(double big_theta) {
  if (!std::isfinite(big_theta) || big_theta < 0.0) {
    throw InvalidInput("operation precision must be finite and non-negative");
  }
}

}  // namespace

Mat3 add_constraint_hessian(double big_theta) {
  const double t = big_theta;
  return Mat3::symmetric(t, t, -t, t, -t, t);
}

PrecisionMatrix3 refined_precision_add(const PrecisionMatrix3& xi, double big_theta) {
  check_big_theta(big_theta);
  return PrecisionMatrix3(xi.matrix() + add_constraint_hessian(big_theta));
}

double objective_add(const Vec3& point, const GaussianTriple& prior, double big_theta) {
  const Vec3 d = point - prior.means;
  const double r = point[0] + point[1] - point[2];
  return 0.5 * (dot(d, prior.precision.matrix() * d) + big_theta * r * r);
}

Vec3 gradient_add(const Vec3& point, const GaussianTriple& prior, double big_theta) {
  const Vec3 d = point - prior.means;
  const double r = point[0] + point[1] - point[2];
  return prior.precision.matrix() * d + (big_theta * r) * Vec3{1.0, 1.0, -1.0};
}

double gradient_scale_add(const GaussianTriple& prior) {
  return 1.0 + norm(prior.precision.matrix() * prior.means);
}

RefinedTriple refine_add(const GaussianTriple& prior, const OperationSpec& spec) {
  if (spec.kind() != OpKind::Add) throw InvalidInput("refine_add needs an addition spec");
  return refine_add(prior, spec.big_theta());
}

RefinedTriple refine_add(const GaussianTriple& prior, double big_theta) {
  check_big_theta(big_theta);
  const PrecisionMatrix3 refined = refined_precision_add(prior.precision, big_theta);

  // (P + T u u^T)^{-1} P m by Sherman-Morrison with u = (1, 1, -1):
  //   h' = u^T m / (1 + T u^T P^{-1} u),  m' = m - T h' P^{-1} u.
  // The residual h' is formed from u^T m and a sum of variances, never as
  // a difference of refined means.
  const Vec3 u{1.0, 1.0, -1.0};
  const Vec3 v = solve3(prior.precision.matrix(), u);
  const auto [a, b, c] = prior.means;
  const double h = ((a + b) - c) / (1.0 + big_theta * dot(u, v));
  RefinedTriple out;
  out.means = prior.means - (big_theta * h) * v;
  for (double m : out.means) {
    if (!std::isfinite(m)) throw Error("refine_add: non-finite refined mean");
  }
  out.precision = refined.matrix();
  out.residual = h;
  out.objective = objective_add(out.means, prior, big_theta);
  out.diagnostics.iterations = 1;
  out.diagnostics.converged = true;
  out.diagnostics.starts_tried = 1;
  out.diagnostics.gradient_norm =
      norm(gradient_add(out.means, prior, big_theta)) / gradient_scale_add(prior);
  out.diagnostics.precision_spd = true;
  return out;
}

double diagonal_residual_add(double a, double b, double c, double pa, double pb, double pc,
                             double big_theta) {
  return (a + b - c) / (1.0 + big_theta * (1.0 / pa + 1.0 / pb + 1.0 / pc));
}

}  // namespace gparith
