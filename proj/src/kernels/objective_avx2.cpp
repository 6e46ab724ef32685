#include <immintrin.h>

#include <cstddef>

#include "gparith/kernels.hpp"

namespace gparith::kernels {

void objective_batch_avx2(const ObjectiveParams& p, std::span<const double> xs,
                          std::span<const double> ys, std::span<const double> zs,
                          std::span<double> out) {
  const std::size_t n = out.size();
  const __m256d a = _mm256_set1_pd(p.a);
  const __m256d b = _mm256_set1_pd(p.b);
  const __m256d c = _mm256_set1_pd(p.c);
  const __m256d pxx = _mm256_set1_pd(p.pxx);
  const __m256d pyy = _mm256_set1_pd(p.pyy);
  const __m256d pzz = _mm256_set1_pd(p.pzz);
  const __m256d pxy = _mm256_set1_pd(p.pxy);
  const __m256d pxz = _mm256_set1_pd(p.pxz);
  const __m256d pyz = _mm256_set1_pd(p.pyz);
  const __m256d t = _mm256_set1_pd(p.big_theta);
  const __m256d two = _mm256_set1_pd(2.0);
  const __m256d half = _mm256_set1_pd(0.5);
  const bool mul = p.kind == OpKind::Mul;

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(xs.data() + i);
    const __m256d y = _mm256_loadu_pd(ys.data() + i);
    const __m256d z = _mm256_loadu_pd(zs.data() + i);
    const __m256d dx = _mm256_sub_pd(x, a);
    const __m256d dy = _mm256_sub_pd(y, b);
    const __m256d dz = _mm256_sub_pd(z, c);

    __m256d diag = _mm256_add_pd(_mm256_mul_pd(_mm256_mul_pd(pxx, dx), dx),
                                 _mm256_mul_pd(_mm256_mul_pd(pyy, dy), dy));
    diag = _mm256_add_pd(diag, _mm256_mul_pd(_mm256_mul_pd(pzz, dz), dz));
    __m256d cross = _mm256_add_pd(_mm256_mul_pd(_mm256_mul_pd(pxy, dx), dy),
                                  _mm256_mul_pd(_mm256_mul_pd(pxz, dx), dz));
    cross = _mm256_add_pd(cross, _mm256_mul_pd(_mm256_mul_pd(pyz, dy), dz));
    const __m256d q = _mm256_add_pd(diag, _mm256_mul_pd(two, cross));

    const __m256d r = mul ? _mm256_sub_pd(_mm256_mul_pd(x, y), z)
                          : _mm256_sub_pd(_mm256_add_pd(x, y), z);
    const __m256d penalty = _mm256_mul_pd(_mm256_mul_pd(t, r), r);
    _mm256_storeu_pd(out.data() + i, _mm256_mul_pd(half, _mm256_add_pd(q, penalty)));
  }
  if (i < n) {
    objective_batch_scalar(p, xs.subspan(i), ys.subspan(i), zs.subspan(i), out.subspan(i));
  }
}

}  // namespace gparith::kernels
