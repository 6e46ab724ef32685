#pragma once

// Batched evaluation of the refinement objectives over many points.
//
// The scalar kernel is the reference. The AVX2 kernel performs the same
// operations in the same order (no FMA contraction), so both produce
// bit-identical results; the dispatcher picks AVX2 when the CPU has it.

#include <span>

#include "gparith/model.hpp"

namespace gparith::kernels {

enum class Isa { Scalar, Avx2 };

const char* to_string(Isa isa);

/// Best instruction set available on this machine and compiled in.
Isa detected_isa();
/// True iff `isa` can run here.
bool isa_available(Isa isa);

/// Flattened prior and constraint, laid out for broadcasting.
struct ObjectiveParams {
  OpKind kind = OpKind::Mul;
  double a = 0.0, b = 0.0, c = 0.0;
  double pxx = 1.0, pyy = 1.0, pzz = 1.0;
  double pxy = 0.0, pxz = 0.0, pyz = 0.0;
  double big_theta = 1.0;

  static ObjectiveParams from(OpKind kind, const GaussianTriple& prior, double big_theta);
};

/// out[i] = F(xs[i], ys[i], zs[i]). All spans must have equal length.
void objective_batch_scalar(const ObjectiveParams& p, std::span<const double> xs,
                            std::span<const double> ys, std::span<const double> zs,
                            std::span<double> out);

#if defined(GPARITH_HAVE_AVX2)
void objective_batch_avx2(const ObjectiveParams& p, std::span<const double> xs,
                          std::span<const double> ys, std::span<const double> zs,
                          std::span<double> out);
#endif

/// Runs the kernel for `isa`; throws InvalidInput if it is unavailable or the
/// spans disagree in length.
void objective_batch(const ObjectiveParams& p, std::span<const double> xs,
                     std::span<const double> ys, std::span<const double> zs,
                     std::span<double> out, Isa isa = detected_isa());

}  // namespace gparith::kernels
