#include "latmech/tensor4.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "latmech/linalg.hpp"

namespace latmech {

namespace {

constexpr double kSqrt2 = 1.41421356237309504880;
constexpr double kRotationTol = 1e-10;

constexpr int slot_of(int i, int j) { return i == j ? i : 6 - i - j; }

constexpr double mandel_weight(int slot) { return slot < 3 ? 1.0 : kSqrt2; }

/// Sum over the (p,q) orbit of slot J of R_ip R_jq, the shared core of the
/// Mandel and Voigt rotation matrices.
double orbit_product(const Mat3& r, int row_slot, int col_slot) {
  const auto [i, j] = kMandelPairs[row_slot];
  const auto [p, q] = kMandelPairs[col_slot];
  double v = r(i, p) * r(j, q);
  if (p != q) v += r(i, q) * r(j, p);
  return v;
}

}  // namespace

ElasticTensor4 ElasticTensor4::isotropic(double lambda, double mu) {
  Tensor4Array c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          const double dij = i == j, dkl = k == l, dik = i == k, djl = j == l, dil = i == l, djk = j == k;
          c[t4_index(i, j, k, l)] = lambda * dij * dkl + mu * (dik * djl + dil * djk);
        }
  return ElasticTensor4(c);
}

ElasticTensor4 ElasticTensor4::cubic(double c11, double c12, double c44) {
  Mat6 m = Mat6::Zero();
  for (int a = 0; a < 3; ++a) {
    for (int b = 0; b < 3; ++b) m(a, b) = a == b ? c11 : c12;
    m(a + 3, a + 3) = 2.0 * c44;
  }
  return from_mandel(MandelMatrix(m));
}

double ElasticTensor4::frobenius_norm() const {
  double s = 0.0;
  for (double v : c_) s += v * v;
  return std::sqrt(s);
}

ElasticTensor4 operator+(const ElasticTensor4& a, const ElasticTensor4& b) {
  Tensor4Array c;
  for (int n = 0; n < 81; ++n) c[n] = a.c_[n] + b.c_[n];
  return ElasticTensor4(c);
}

ElasticTensor4 operator-(const ElasticTensor4& a, const ElasticTensor4& b) {
  Tensor4Array c;
  for (int n = 0; n < 81; ++n) c[n] = a.c_[n] - b.c_[n];
  return ElasticTensor4(c);
}

ElasticTensor4 operator*(double s, const ElasticTensor4& a) {
  Tensor4Array c;
  for (int n = 0; n < 81; ++n) c[n] = s * a.c_[n];
  return ElasticTensor4(c);
}

ElasticTensor4 symmetrize(const Tensor4Array& raw) {
  for (double v : raw)
    if (!std::isfinite(v)) throw std::invalid_argument("symmetrize: non-finite tensor component");

  // One value per orbit, written to every member so the symmetries hold
  // bit-for-bit. Pairwise summation keeps the projection exactly idempotent.
  Tensor4Array c;
  for (int a = 0; a < 6; ++a)
    for (int b = a; b < 6; ++b) {
      const auto [i, j] = kMandelPairs[a];
      const auto [k, l] = kMandelPairs[b];
      const std::array<int, 8> orbit{t4_index(i, j, k, l), t4_index(j, i, k, l), t4_index(i, j, l, k),
                                     t4_index(j, i, l, k), t4_index(k, l, i, j), t4_index(l, k, i, j),
                                     t4_index(k, l, j, i), t4_index(l, k, j, i)};
      const double s = ((raw[orbit[0]] + raw[orbit[1]]) + (raw[orbit[2]] + raw[orbit[3]])) +
                       ((raw[orbit[4]] + raw[orbit[5]]) + (raw[orbit[6]] + raw[orbit[7]]));
      for (int idx : orbit) c[idx] = 0.125 * s;
    }
  return ElasticTensor4(c);
}

MandelMatrix::MandelMatrix(const Mat6& m) {
  if (!m.allFinite()) throw std::invalid_argument("Mandel matrix has non-finite entries");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double defect = linalg::asymmetry(m);
  if (defect > 1e-10 * scale) {
    std::ostringstream msg;
    msg << "Mandel matrix is not symmetric (max |M - M^T| = " << defect << ")";
    throw std::invalid_argument(msg.str());
  }
  m_ = 0.5 * (m + m.transpose());
}

MandelMatrix to_mandel(const ElasticTensor4& c) {
  Mat6 m;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const auto [i, j] = kMandelPairs[a];
      const auto [k, l] = kMandelPairs[b];
      m(a, b) = mandel_weight(a) * mandel_weight(b) * c(i, j, k, l);
    }
  return MandelMatrix(m);
}

ElasticTensor4 from_mandel(const MandelMatrix& m) {
  Tensor4Array c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          const int a = slot_of(i, j), b = slot_of(k, l);
          c[t4_index(i, j, k, l)] = m(a, b) / (mandel_weight(a) * mandel_weight(b));
        }
  return symmetrize(c);
}

ElasticTensor4 from_mandel(const Mat6& m) { return from_mandel(MandelMatrix(m)); }

VoigtMatrix to_voigt(const ElasticTensor4& c) {
  VoigtMatrix v;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const auto [i, j] = kMandelPairs[a];
      const auto [k, l] = kMandelPairs[b];
      v.entries(a, b) = c(i, j, k, l);
    }
  return v;
}

Vec6 strain_to_mandel(const Mat3& eps) {
  Vec6 v;
  for (int a = 0; a < 6; ++a) {
    const auto [i, j] = kMandelPairs[a];
    v(a) = a < 3 ? eps(i, j) : kSqrt2 * 0.5 * (eps(i, j) + eps(j, i));
  }
  return v;
}

Mat3 mandel_to_strain(const Vec6& v) {
  Mat3 e;
  for (int a = 0; a < 6; ++a) {
    const auto [i, j] = kMandelPairs[a];
    const double x = a < 3 ? v(a) : v(a) / kSqrt2;
    e(i, j) = x;
    e(j, i) = x;
  }
  return e;
}

void check_rotation(const Mat3& r) {
  const double ortho = linalg::orthonormality_defect(r);
  const double det = std::abs(r.determinant() - 1.0);
  if (!(ortho <= kRotationTol) || !(det <= kRotationTol)) {
    std::ostringstream msg;
    msg << "not a proper rotation: ||R^T R - I|| = " << ortho << ", |det R - 1| = " << det;
    throw std::invalid_argument(msg.str());
  }
}

RotationPair mandel_rotation(const Mat3& r) {
  check_rotation(r);
  RotationPair rp{r, Mat6::Zero()};
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b)
      rp.r_mandel(a, b) = mandel_weight(a) / mandel_weight(b) * orbit_product(r, a, b);
  return rp;
}

ElasticTensor4 rotate(const ElasticTensor4& c, const Mat3& r) {
  check_rotation(r);
  // Contract one index at a time: 4 * 3^5 multiplications instead of 3^8.
  Tensor4Array t1{}, t2{};
  const auto& src = c.components();
  for (int i = 0; i < 3; ++i)
    for (int b = 0; b < 3; ++b)
      for (int cc = 0; cc < 3; ++cc)
        for (int d = 0; d < 3; ++d) {
          double s = 0.0;
          for (int a = 0; a < 3; ++a) s += r(i, a) * src[t4_index(a, b, cc, d)];
          t1[t4_index(i, b, cc, d)] = s;
        }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int cc = 0; cc < 3; ++cc)
        for (int d = 0; d < 3; ++d) {
          double s = 0.0;
          for (int b = 0; b < 3; ++b) s += r(j, b) * t1[t4_index(i, b, cc, d)];
          t2[t4_index(i, j, cc, d)] = s;
        }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int d = 0; d < 3; ++d) {
          double s = 0.0;
          for (int cc = 0; cc < 3; ++cc) s += r(k, cc) * t2[t4_index(i, j, cc, d)];
          t1[t4_index(i, j, k, d)] = s;
        }
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          double s = 0.0;
          for (int d = 0; d < 3; ++d) s += r(l, d) * t1[t4_index(i, j, k, d)];
          t2[t4_index(i, j, k, l)] = s;
        }
  return symmetrize(t2);
}

MandelMatrix rotate_mandel(const MandelMatrix& m, const RotationPair& rp) {
  const Mat6 out = rp.r_mandel * m.matrix() * rp.r_mandel.transpose();
  return MandelMatrix(0.5 * (out + out.transpose()));
}

Mat6 voigt_stress_rotation(const Mat3& r) {
  check_rotation(r);
  Mat6 out;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) out(a, b) = orbit_product(r, a, b);
  return out;
}

Mat6 voigt_strain_rotation(const Mat3& r) {
  check_rotation(r);
  Mat6 out;
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      const double ca = a < 3 ? 1.0 : 2.0;
      const double cb = b < 3 ? 1.0 : 2.0;
      out(a, b) = ca / cb * orbit_product(r, a, b);
    }
  return out;
}

Mat6 rotate_voigt(const Mat6& v, const Mat3& r) {
  const Mat6 rs = voigt_stress_rotation(r);
  return rs * v * rs.transpose();
}

double directional_modulus(const ElasticTensor4& c, const Vec3& d) {
  if (!(std::abs(d.norm() - 1.0) <= 1e-10)) {
    std::ostringstream msg;
    msg << "direction is not a unit vector (|d| = " << d.norm() << ")";
    throw std::invalid_argument(msg.str());
  }
  double s = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) s += c(i, j, k, l) * d(i) * d(j) * d(k) * d(l);
  return s;
}

Mat3 double_contract(const ElasticTensor4& c, const Mat3& e) {
  Mat3 out = Mat3::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) out(i, j) += c(i, j, k, l) * e(k, l);
  return out;
}

double strain_energy(const ElasticTensor4& c, const Mat3& eps) {
  const double defect = (eps - eps.transpose()).cwiseAbs().maxCoeff();
  if (!(defect <= 1e-12 * std::max(1.0, eps.cwiseAbs().maxCoeff()))) {
    std::ostringstream msg;
    msg << "strain is not symmetric (max |eps - eps^T| = " << defect << ")";
    throw std::invalid_argument(msg.str());
  }
  return 0.5 * (eps.array() * double_contract(c, eps).array()).sum();
}

KelvinSpectrum kelvin_spectrum(const ElasticTensor4& c) {
  const auto eig = linalg::jacobi_eigen(to_mandel(c).matrix());
  KelvinSpectrum s;
  s.eigenvalues = eig.values;
  for (int k = 0; k < 6; ++k) s.eigentensors[k] = mandel_to_strain(eig.vectors.col(k));
  return s;
}

ElasticTensor4 kelvin_reconstruct(const KelvinSpectrum& s) {
  Tensor4Array c{};
  for (int n = 0; n < 6; ++n) {
    const Mat3& e = s.eigentensors[n];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k)
          for (int l = 0; l < 3; ++l) c[t4_index(i, j, k, l)] += s.eigenvalues(n) * e(i, j) * e(k, l);
  }
  return symmetrize(c);
}

double min_eigenvalue(const ElasticTensor4& c) { return linalg::jacobi_eigen(to_mandel(c).matrix()).values(5); }

}  // namespace latmech
