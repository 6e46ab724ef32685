#pragma once

// Addition of Gaussian operands: MAP refinement of (x, y, z) under the
// soft constraint x + y = z. The objective
//
//   F(v) = 1/2 [ (v - m)^T P (v - m) + T (x + y - z)^2 ]
//
// is quadratic, so the minimizer solves (P + T K) v = P m in closed form and
// the refined precision P + T K is exact, with K = u u^T, u = (1, 1, -1).

#include "gparith/model.hpp"

namespace gparith {

/// T * K with K = [[1,1,-1],[1,1,-1],[-1,-1,1]]. Rank one, PSD.
Mat3 add_constraint_hessian(double big_theta);

/// P + T K. Accepts T == 0 (returns P unchanged).
PrecisionMatrix3 refined_precision_add(const PrecisionMatrix3& xi, double big_theta);

double objective_add(const Vec3& point, const GaussianTriple& prior, double big_theta);
Vec3 gradient_add(const Vec3& point, const GaussianTriple& prior, double big_theta);

/// Normalizer for gradient_add at the solution: 1 + |P m|.
double gradient_scale_add(const GaussianTriple& prior);

RefinedTriple refine_add(const GaussianTriple& prior, const OperationSpec& spec);

/// Same as above with the operation precision given directly; T == 0 is the
/// degenerate no-op refinement.
RefinedTriple refine_add(const GaussianTriple& prior, double big_theta);

/// Constraint residual at the optimum for a diagonal prior precision
/// diag(pa, pb, pc), by eliminating the stationarity conditions:
///
///   pa (x - a) = pb (y - b) = -pc (z - c) = -T r,   r = x + y - z
///   =>  r = (a + b - c) / (1 + T (1/pa + 1/pb + 1/pc)).
double diagonal_residual_add(double a, double b, double c, double pa, double pb, double pc,
                             double big_theta);

}  // namespace gparith
