#pragma once

// Fourth-order elasticity tensors with minor and major symmetries, their
// Mandel (orthonormal) and Voigt 6x6 forms, rotations and Kelvin spectra.
//
// Mandel slot order is (11, 22, 33, 23, 13, 12); indices are 0-based, so slot
// 3 is the (1,2) pair, slot 4 is (0,2) and slot 5 is (0,1).

#include <array>
#include <span>

#include "latmech/types.hpp"

namespace latmech {

/// Unconstrained 3x3x3x3 array, row-major over (i, j, k, l).
using Tensor4Array = std::array<double, 81>;

constexpr int t4_index(int i, int j, int k, int l) { return ((i * 3 + j) * 3 + k) * 3 + l; }

/// Mandel slot -> index pair.
inline constexpr std::array<std::array<int, 2>, 6> kMandelPairs{{{0, 0}, {1, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}}};

/// Fourth-order stiffness with C_ijkl = C_jikl = C_ijlk = C_klij.
///
/// Instances can only be produced by `symmetrize` or `from_mandel`, both of
/// which guarantee the symmetries exactly.
class ElasticTensor4 {
 public:
  ElasticTensor4() { c_.fill(0.0); }

  static ElasticTensor4 zero() { return {}; }
  /// C_ijkl = lambda d_ij d_kl + mu (d_ik d_jl + d_il d_jk)
  static ElasticTensor4 isotropic(double lambda, double mu);
  /// Cubic symmetry aligned with the axes: C_1111, C_1122, C_2323.
  static ElasticTensor4 cubic(double c11, double c12, double c44);

  double operator()(int i, int j, int k, int l) const { return c_[t4_index(i, j, k, l)]; }
  const Tensor4Array& components() const { return c_; }

  double frobenius_norm() const;

  friend ElasticTensor4 symmetrize(const Tensor4Array& raw);
  friend ElasticTensor4 operator+(const ElasticTensor4& a, const ElasticTensor4& b);
  friend ElasticTensor4 operator-(const ElasticTensor4& a, const ElasticTensor4& b);
  friend ElasticTensor4 operator*(double s, const ElasticTensor4& a);

  bool operator==(const ElasticTensor4&) const = default;

 private:
  explicit ElasticTensor4(const Tensor4Array& c) : c_(c) {}
  Tensor4Array c_;
};

/// Symmetric 6x6 matrix in the orthonormal Mandel basis.
class MandelMatrix {
 public:
  MandelMatrix() : m_(Mat6::Zero()) {}
  /// Rejects inputs with max |M - M^T| above 1e-10 * max(1, max|M|); the
  /// stored matrix is the exact symmetric part.
  explicit MandelMatrix(const Mat6& m);

  const Mat6& matrix() const { return m_; }
  double operator()(int i, int j) const { return m_(i, j); }

  bool operator==(const MandelMatrix& o) const { return m_ == o.m_; }

 private:
  Mat6 m_;
};

/// Stress-form Voigt stiffness: V_IJ = C_{ij kl} with (ij) = slot I, (kl) = slot J.
struct VoigtMatrix {
  Mat6 entries = Mat6::Zero();
};

/// A proper rotation and its 6x6 action on Mandel vectors.
struct RotationPair {
  Mat3 r;
  Mat6 r_mandel;
};

struct KelvinSpectrum {
  Vec6 eigenvalues;                  ///< descending
  std::array<Mat3, 6> eigentensors;  ///< symmetric, unit Frobenius norm
};

// -- symmetry and bases ------------------------------------------------------

/// Orthogonal projection onto the minor+major symmetric subspace: the mean of
/// the eight index permutations generated by ij<->ji, kl<->lk and ij<->kl.
ElasticTensor4 symmetrize(const Tensor4Array& raw);

MandelMatrix to_mandel(const ElasticTensor4& c);
ElasticTensor4 from_mandel(const MandelMatrix& m);
/// Validating overload; throws std::invalid_argument on asymmetric input.
ElasticTensor4 from_mandel(const Mat6& m);

VoigtMatrix to_voigt(const ElasticTensor4& c);

Vec6 strain_to_mandel(const Mat3& eps);
Mat3 mandel_to_strain(const Vec6& v);

// -- rotations ---------------------------------------------------------------

/// Throws std::invalid_argument when ||R^T R - I||_F or |det R - 1| exceeds 1e-10.
void check_rotation(const Mat3& r);

RotationPair mandel_rotation(const Mat3& r);
ElasticTensor4 rotate(const ElasticTensor4& c, const Mat3& r);
MandelMatrix rotate_mandel(const MandelMatrix& m, const RotationPair& rp);

/// Voigt rotation matrices acting on stress and engineering-strain vectors.
/// Neither is orthonormal; they satisfy R_sigma^{-1} = R_eps^T.
Mat6 voigt_stress_rotation(const Mat3& r);
Mat6 voigt_strain_rotation(const Mat3& r);
/// R_sigma V R_sigma^T, the correct Voigt rotation rule for a stiffness.
Mat6 rotate_voigt(const Mat6& v, const Mat3& r);

// -- scalar contractions -----------------------------------------------------

/// C_ijkl d_i d_j d_k d_l. Throws if |d| deviates from 1 by more than 1e-10.
double directional_modulus(const ElasticTensor4& c, const Vec3& d);

/// 1/2 eps_ij C_ijkl eps_kl. Throws on asymmetric strain.
double strain_energy(const ElasticTensor4& c, const Mat3& eps);

/// C : E for a symmetric second-order tensor E.
Mat3 double_contract(const ElasticTensor4& c, const Mat3& e);

KelvinSpectrum kelvin_spectrum(const ElasticTensor4& c);

/// sum_i lambda_i E_i (x) E_i
ElasticTensor4 kelvin_reconstruct(const KelvinSpectrum& s);

/// Minimum Mandel eigenvalue.
double min_eigenvalue(const ElasticTensor4& c);

}  // namespace latmech
