#pragma once

// Brute-force and finite-difference tools for checking the solvers without
// going through them. Test-only: the CLI does not link this.

#include <functional>

#include "gparith/kernels.hpp"
#include "gparith/model.hpp"

namespace gparith::oracle {

using ScalarField = std::function<double(const Vec3&)>;
using VectorField = std::function<Vec3(const Vec3&)>;

struct GridBox {
  Vec3 center{};
  Vec3 half_widths{1.0, 1.0, 1.0};
  /// Odd, so the center is a grid point.
  int points_per_axis = 21;

  /// Throws InvalidInput for non-positive half widths or an even / < 3 count.
  void validate() const;
  /// Coordinate of grid index i on `axis`; index (n-1)/2 is exactly the center.
  double coordinate(std::size_t axis, int i) const;
};

struct GridMinimum {
  Vec3 point{};
  double value = 0.0;
};

/// Exhaustive scan; ties resolve to the first point in (x, y, z)
/// lexicographic index order.
GridMinimum grid_min(const ScalarField& objective, const GridBox& box);

/// grid_min of the addition or multiplication objective, evaluated a grid
/// row at a time through the batched kernels. Same scan order and tie rule.
GridMinimum grid_min_objective(OpKind kind, const GaussianTriple& prior, double big_theta,
                               const GridBox& box,
                               kernels::Isa isa = kernels::detected_isa());

/// Central differences with step rel_step * (1 + |v_i|) per axis.
Vec3 fd_gradient(const ScalarField& objective, const Vec3& point, double rel_step = 1e-6);

/// Central differences of a gradient, symmetrized.
Mat3 fd_hessian(const VectorField& gradient, const Vec3& point, double rel_step = 1e-4);

}  // namespace gparith::oracle
