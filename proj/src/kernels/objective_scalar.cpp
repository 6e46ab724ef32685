#include <cstddef>

#include "gparith/kernels.hpp"

namespace gparith::kernels {

// Keep the operation order in sync with objective_avx2.cpp.
void objective_batch_scalar(const ObjectiveParams& p, std::span<const double> xs,
                            std::span<const double> ys, std::span<const double> zs,
                            std::span<double> out) {
  const bool mul = p.kind == OpKind::Mul;
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double x = xs[i];
    const double y = ys[i];
    const double z = zs[i];
    const double dx = x - p.a;
    const double dy = y - p.b;
    const double dz = z - p.c;
    const double diag = ((p.pxx * dx) * dx + (p.pyy * dy) * dy) + (p.pzz * dz) * dz;
    const double cross = ((p.pxy * dx) * dy + (p.pxz * dx) * dz) + (p.pyz * dy) * dz;
    const double q = diag + 2.0 * cross;
    const double r = mul ? x * y - z : (x + y) - z;
    out[i] = 0.5 * (q + (p.big_theta * r) * r);
  }
}

}  // namespace gparith::kernels
