#include "gparith/errors.hpp"
#include "gparith/kernels.hpp"

namespace gparith::kernels {

const char* to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(GPARITH_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

Isa detected_isa() {
  static const Isa isa = isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
  return isa;
}

ObjectiveParams ObjectiveParams::from(OpKind kind, const GaussianTriple& prior, double big_theta) {
  const Mat3& m = prior.precision.matrix();
  ObjectiveParams p;
  p.kind = kind;
  p.a = prior.means[0];
  p.b = prior.means[1];
  p.c = prior.means[2];
  p.pxx = m(0, 0);
  p.pyy = m(1, 1);
  p.pzz = m(2, 2);
  p.pxy = m(0, 1);
  p.pxz = m(0, 2);
  p.pyz = m(1, 2);
  p.big_theta = big_theta;
  return p;
}

void objective_batch(const ObjectiveParams& p, std::span<const double> xs,
                     std::span<const double> ys, std::span<const double> zs,
                     std::span<double> out, Isa isa) {
  if (xs.size() != out.size() || ys.size() != out.size() || zs.size() != out.size()) {
    throw InvalidInput("objective_batch: span lengths differ");
  }
  if (!isa_available(isa)) throw InvalidInput("objective_batch: instruction set unavailable");
#if defined(GPARITH_HAVE_AVX2)
  if (isa == Isa::Avx2) {
    objective_batch_avx2(p, xs, ys, zs, out);
    return;
  }
#endif
  objective_batch_scalar(p, xs, ys, zs, out);
}

}  // namespace gparith::kernels
