#pragma once

// Dense 3x3 linear algebra. The model always has exactly three operands,
// so nothing here generalizes to n x n.

#include <array>
#include <cstddef>
#include <optional>

namespace gparith {

using Vec3 = std::array<double, 3>;

/// Row-major dense 3x3 matrix.
struct Mat3 {
  std::array<double, 9> a{};

  constexpr double& operator()(std::size_t i, std::size_t j) { return a[3 * i + j]; }
  constexpr double operator()(std::size_t i, std::size_t j) const { return a[3 * i + j]; }

  static constexpr Mat3 zero() { return Mat3{}; }
  static constexpr Mat3 identity() { return diag({1.0, 1.0, 1.0}); }
  static constexpr Mat3 diag(const Vec3& d) {
    Mat3 m;
    m(0, 0) = d[0];
    m(1, 1) = d[1];
    m(2, 2) = d[2];
    return m;
  }
  /// Builds a symmetric matrix from its upper triangle.
  static constexpr Mat3 symmetric(double m00, double m01, double m02, double m11, double m12,
                                  double m22) {
    Mat3 m;
    m.a = {m00, m01, m02, m01, m11, m12, m02, m12, m22};
    return m;
  }

  friend constexpr bool operator==(const Mat3&, const Mat3&) = default;
};

Vec3 operator+(const Vec3& u, const Vec3& v);
Vec3 operator-(const Vec3& u, const Vec3& v);
Vec3 operator*(double s, const Vec3& v);
double dot(const Vec3& u, const Vec3& v);
double norm(const Vec3& v);
double norm_inf(const Vec3& v);

Mat3 operator+(const Mat3& m, const Mat3& n);
Mat3 operator-(const Mat3& m, const Mat3& n);
Mat3 operator*(double s, const Mat3& m);
Mat3 operator*(const Mat3& m, const Mat3& n);
Vec3 operator*(const Mat3& m, const Vec3& v);
Mat3 transpose(const Mat3& m);
double max_abs(const Mat3& m);
/// Frobenius norm.
double norm(const Mat3& m);

/// max |m_ij - m_ji| / max |m_ij|; zero for the zero matrix.
double relative_asymmetry(const Mat3& m);

/// Lower-triangular Cholesky factor L with m = L L^T.
struct Cholesky3 {
  Mat3 lower;

  Vec3 solve(const Vec3& rhs) const;
};

/// Factorizes a symmetric matrix. Returns nullopt when any pivot falls at or
/// below 1e-12 * max diagonal (or the matrix has a non-positive diagonal).
/// Only the lower triangle is read.
std::optional<Cholesky3> cholesky(const Mat3& m);

/// True iff `m` is positive definite. Throws InvalidInput when the relative
/// asymmetry exceeds 1e-12 or any entry is non-finite.
bool spd_check(const Mat3& m);

/// Solves m x = rhs for SPD m, with one step of iterative refinement.
/// Throws NotPositiveDefinite when the factorization fails.
Vec3 solve3(const Mat3& m, const Vec3& rhs);

/// Inverse of an SPD matrix, symmetrized. Throws NotPositiveDefinite.
Mat3 inverse_spd(const Mat3& m);

/// Eigenvalues of a symmetric matrix in ascending order (cyclic Jacobi).
Vec3 symmetric_eigenvalues(const Mat3& m);

}  // namespace gparith
