#include "gparith/linalg3.hpp"

#include <algorithm>
#include <cmath>

#include "gparith/errors.hpp"

namespace gparith {

namespace {

constexpr double kPivotThreshold = 1e-12;
constexpr double kAsymmetryThreshold = 1e-12;

}  // namespace

Vec3 operator+(const Vec3& u, const Vec3& v) { return {u[0] + v[0], u[1] + v[1], u[2] + v[2]}; }
Vec3 operator-(const Vec3& u, const Vec3& v) { return {u[0] - v[0], u[1] - v[1], u[2] - v[2]}; }
Vec3 operator*(double s, const Vec3& v) { return {s * v[0], s * v[1], s * v[2]}; }
double dot(const Vec3& u, const Vec3& v) { return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]; }
double norm(const Vec3& v) { return std::hypot(v[0], v[1], v[2]); }
double norm_inf(const Vec3& v) {
  return std::max({std::abs(v[0]), std::abs(v[1]), std::abs(v[2])});
}

Mat3 operator+(const Mat3& m, const Mat3& n) {
  Mat3 r;
  for (std::size_t k = 0; k < 9; ++k) r.a[k] = m.a[k] + n.a[k];
  return r;
}

Mat3 operator-(const Mat3& m, const Mat3& n) {
  Mat3 r;
  for (std::size_t k = 0; k < 9; ++k) r.a[k] = m.a[k] - n.a[k];
  return r;
}

Mat3 operator*(double s, const Mat3& m) {
  Mat3 r;
  for (std::size_t k = 0; k < 9; ++k) r.a[k] = s * m.a[k];
  return r;
}

Mat3 operator*(const Mat3& m, const Mat3& n) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      r(i, j) = m(i, 0) * n(0, j) + m(i, 1) * n(1, j) + m(i, 2) * n(2, j);
  return r;
}

Vec3 operator*(const Mat3& m, const Vec3& v) {
  return {m(0, 0) * v[0] + m(0, 1) * v[1] + m(0, 2) * v[2],
          m(1, 0) * v[0] + m(1, 1) * v[1] + m(1, 2) * v[2],
          m(2, 0) * v[0] + m(2, 1) * v[1] + m(2, 2) * v[2]};
}

Mat3 transpose(const Mat3& m) {
  Mat3 r;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) r(i, j) = m(j, i);
  return r;
}

double max_abs(const Mat3& m) {
  double r = 0.0;
  for (double x : m.a) r = std::max(r, std::abs(x));
  return r;
}

double norm(const Mat3& m) {
  double s = 0.0;
  for (double x : m.a) s += x * x;
  return std::sqrt(s);
}

double relative_asymmetry(const Mat3& m) {
  const double scale = max_abs(m);
  if (scale == 0.0) return 0.0;
  const double d = std::max({std::abs(m(0, 1) - m(1, 0)), std::abs(m(0, 2) - m(2, 0)),
                             std::abs(m(1, 2) - m(2, 1))});
  return d / scale;
}

Vec3 Cholesky3::solve(const Vec3& rhs) const {
  const Mat3& l = lower;
  // L w = rhs
  const double w0 = rhs[0] / l(0, 0);
  const double w1 = (rhs[1] - l(1, 0) * w0) / l(1, 1);
  const double w2 = (rhs[2] - l(2, 0) * w0 - l(2, 1) * w1) / l(2, 2);
  // L^T x = w
  const double x2 = w2 / l(2, 2);
  const double x1 = (w1 - l(2, 1) * x2) / l(1, 1);
  const double x0 = (w0 - l(1, 0) * x1 - l(2, 0) * x2) / l(0, 0);
  return {x0, x1, x2};
}

std::optional<Cholesky3> cholesky(const Mat3& m) {
  // Each pivot is compared against its own diagonal entry, so matrices whose
  // diagonal spans many orders of magnitude (precise and vague operands side
  // by side) are still accepted.
  for (std::size_t i = 0; i < 3; ++i) {
    if (!(m(i, i) > 0.0) || !std::isfinite(m(i, i))) return std::nullopt;
  }
  Mat3 l;
  for (std::size_t j = 0; j < 3; ++j) {
    double pivot = m(j, j);
    for (std::size_t k = 0; k < j; ++k) pivot -= l(j, k) * l(j, k);
    if (!(pivot > kPivotThreshold * m(j, j))) return std::nullopt;
    l(j, j) = std::sqrt(pivot);
    for (std::size_t i = j + 1; i < 3; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
      l(i, j) = s / l(j, j);
    }
  }
  return Cholesky3{l};
}

bool spd_check(const Mat3& m) {
  for (double x : m.a) {
    if (!std::isfinite(x)) throw InvalidInput("matrix has a non-finite entry");
  }
  if (relative_asymmetry(m) > kAsymmetryThreshold) {
    throw InvalidInput("matrix is not symmetric");
  }
  return cholesky(m).has_value();
}

Vec3 solve3(const Mat3& m, const Vec3& rhs) {
  const auto chol = cholesky(m);
  if (!chol) throw NotPositiveDefinite("solve3: matrix is not positive definite");
  Vec3 x = chol->solve(rhs);
  const Vec3 r = rhs - m * x;
  return x + chol->solve(r);
}

Mat3 inverse_spd(const Mat3& m) {
  const auto chol = cholesky(m);
  if (!chol) throw NotPositiveDefinite("inverse: matrix is not positive definite");
  Mat3 inv;
  for (std::size_t j = 0; j < 3; ++j) {
    Vec3 e{};
    e[j] = 1.0;
    Vec3 col = chol->solve(e);
    col = col + chol->solve(e - m * col);
    for (std::size_t i = 0; i < 3; ++i) inv(i, j) = col[i];
  }
  return 0.5 * (inv + transpose(inv));
}

Vec3 symmetric_eigenvalues(const Mat3& m) {
  Mat3 a = 0.5 * (m + transpose(m));
  for (int sweep = 0; sweep < 64; ++sweep) {
    const double off = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
    const double diag = a(0, 0) * a(0, 0) + a(1, 1) * a(1, 1) + a(2, 2) * a(2, 2);
    if (off <= 1e-34 * diag || off == 0.0) break;
    for (std::size_t p = 0; p < 2; ++p) {
      for (std::size_t q = p + 1; q < 3; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::hypot(t, 1.0);
        const double s = t * c;
        // a <- J^T a J with the rotation in the (p, q) plane
        for (std::size_t k = 0; k < 3; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < 3; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
      }
    }
  }
  Vec3 ev{a(0, 0), a(1, 1), a(2, 2)};
  std::sort(ev.begin(), ev.end());
  return ev;
}

}  // namespace gparith
