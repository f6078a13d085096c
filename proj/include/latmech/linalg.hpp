#pragma once

#include "latmech/types.hpp"

namespace latmech::linalg {

/// Eigen-pairs of a symmetric 6x6 matrix. Values are sorted descending and
/// column k of `vectors` is the unit eigenvector for `values[k]`.
struct SymEigen6 {
  Vec6 values;
  Mat6 vectors;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// 1e-13 * ||M||_F. Only the upper triangle of `m` is read.
SymEigen6 jacobi_eigen(const Mat6& m);

/// Largest |M - M^T| entry.
double asymmetry(const Mat6& m);

/// Product of two commuting symmetric matrices, computed on the upper
/// triangle and mirrored so the result is symmetric bit-for-bit.
Mat6 symmetric_product(const Mat6& a, const Mat6& b);

/// Matrix exponential by scaling and squaring with a degree-12 Taylor kernel.
/// Scales until ||M / 2^s||_1 < 0.5.
Mat6 expm(const Mat6& m);

/// Frobenius norm of the 3x3 defect R^T R - I.
double orthonormality_defect(const Mat3& r);

/// Rotation by `angle` radians about `axis` (normalised internally).
Mat3 axis_angle(const Vec3& axis, double angle);

}  // namespace latmech::linalg
