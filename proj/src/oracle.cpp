#include "gparith/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "gparith/errors.hpp"

namespace gparith::oracle {

void GridBox::validate() const {
  for (double h : half_widths) {
    if (!std::isfinite(h) || !(h > 0.0)) throw InvalidInput("grid half widths must be positive");
  }
  for (double c : center) {
    if (!std::isfinite(c)) throw InvalidInput("grid center must be finite");
  }
  if (points_per_axis < 3 || points_per_axis % 2 == 0) {
    throw InvalidInput("points_per_axis must be odd and >= 3");
  }
}

double GridBox::coordinate(std::size_t axis, int i) const {
  const int half = (points_per_axis - 1) / 2;
  return center[axis] + half_widths[axis] * (static_cast<double>(i - half) / half);
}

GridMinimum grid_min(const ScalarField& objective, const GridBox& box) {
  box.validate();
  const int n = box.points_per_axis;
  GridMinimum best{{}, std::numeric_limits<double>::infinity()};
  bool first = true;
  for (int i = 0; i < n; ++i) {
    const double x = box.coordinate(0, i);
    for (int j = 0; j < n; ++j) {
      const double y = box.coordinate(1, j);
      for (int k = 0; k < n; ++k) {
        const Vec3 p{x, y, box.coordinate(2, k)};
        const double v = objective(p);
        if (first || v < best.value) {
          best = {p, v};
          first = false;
        }
      }
    }
  }
  return best;
}

GridMinimum grid_min_objective(OpKind kind, const GaussianTriple& prior, double big_theta,
                               const GridBox& box, kernels::Isa isa) {
  box.validate();
  const auto n = static_cast<std::size_t>(box.points_per_axis);
  const auto params = kernels::ObjectiveParams::from(kind, prior, big_theta);

  std::vector<double> xs(n), ys(n), zs(n), values(n);
  for (std::size_t k = 0; k < n; ++k) zs[k] = box.coordinate(2, static_cast<int>(k));

  GridMinimum best{{}, std::numeric_limits<double>::infinity()};
  bool first = true;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = box.coordinate(0, static_cast<int>(i));
    std::fill(xs.begin(), xs.end(), x);
    for (std::size_t j = 0; j < n; ++j) {
      const double y = box.coordinate(1, static_cast<int>(j));
      std::fill(ys.begin(), ys.end(), y);
      kernels::objective_batch(params, xs, ys, zs, values, isa);
      for (std::size_t k = 0; k < n; ++k) {
        if (first || values[k] < best.value) {
          best = {{x, y, zs[k]}, values[k]};
          first = false;
        }
      }
    }
  }
  return best;
}

Vec3 fd_gradient(const ScalarField& objective, const Vec3& point, double rel_step) {
  if (!(rel_step > 0.0)) throw InvalidInput("rel_step must be positive");
  Vec3 g{};
  for (std::size_t i = 0; i < 3; ++i) {
    const double h = rel_step * (1.0 + std::abs(point[i]));
    Vec3 plus = point;
    Vec3 minus = point;
    plus[i] += h;
    minus[i] -= h;
    g[i] = (objective(plus) - objective(minus)) / (plus[i] - minus[i]);
  }
  return g;
}

Mat3 fd_hessian(const VectorField& gradient, const Vec3& point, double rel_step) {
  if (!(rel_step > 0.0)) throw InvalidInput("rel_step must be positive");
  Mat3 h;
  for (std::size_t j = 0; j < 3; ++j) {
    const double step = rel_step * (1.0 + std::abs(point[j]));
    Vec3 plus = point;
    Vec3 minus = point;
    plus[j] += step;
    minus[j] -= step;
    const Vec3 col = (1.0 / (plus[j] - minus[j])) * (gradient(plus) - gradient(minus));
    for (std::size_t i = 0; i < 3; ++i) h(i, j) = col[i];
  }
  return 0.5 * (h + transpose(h));
}

}  // namespace gparith::oracle
