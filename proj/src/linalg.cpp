#include "latmech/linalg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace latmech::linalg {

namespace {

double off_diagonal_norm(const Mat6& a) {
  double s = 0.0;
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

SymEigen6 jacobi_eigen(const Mat6& m) {
  Mat6 a = m.triangularView<Eigen::Upper>();
  a.triangularView<Eigen::StrictlyLower>() = a.transpose().triangularView<Eigen::StrictlyLower>();
  Mat6 v = Mat6::Identity();

  const double scale = a.norm();
  const double tol = 1e-13 * scale;
  constexpr int kMaxSweeps = 100;

  for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_norm(a) > tol; ++sweep) {
    for (int p = 0; p < 5; ++p) {
      for (int q = p + 1; q < 6; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        // Rutishauser's formulation of the 2x2 symmetric Schur rotation.
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (int k = 0; k < 6; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < 6; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;

        for (int k = 0; k < 6; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::array<int, 6> order{};
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return a(x, x) > a(y, y); });

  SymEigen6 out;
  for (int k = 0; k < 6; ++k) {
    out.values(k) = a(order[k], order[k]);
    out.vectors.col(k) = v.col(order[k]);
  }
  return out;
}

double asymmetry(const Mat6& m) { return (m - m.transpose()).cwiseAbs().maxCoeff(); }

Mat6 symmetric_product(const Mat6& a, const Mat6& b) {
  Mat6 out;
  for (int i = 0; i < 6; ++i) {
    for (int j = i; j < 6; ++j) {
      double s = 0.0;
      for (int k = 0; k < 6; ++k) s += a(i, k) * b(k, j);
      out(i, j) = s;
      out(j, i) = s;
    }
  }
  return out;
}

Mat6 expm(const Mat6& m) {
  const double norm1 = m.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  double scaled = norm1;
  while (scaled >= 0.5) {
    scaled *= 0.5;
    ++squarings;
  }
  const Mat6 x = m / std::ldexp(1.0, squarings);

  // Horner evaluation of sum_{k<=12} x^k / k!
  constexpr int kDegree = 12;
  Mat6 result = Mat6::Identity();
  for (int k = kDegree; k >= 1; --k) {
    result = Mat6::Identity() + symmetric_product(x, result) / static_cast<double>(k);
  }
  for (int s = 0; s < squarings; ++s) result = symmetric_product(result, result);
  return result;
}

double orthonormality_defect(const Mat3& r) { return (r.transpose() * r - Mat3::Identity()).norm(); }

Mat3 axis_angle(const Vec3& axis, double angle) {
  return Eigen::AngleAxisd(angle, axis.normalized()).toRotationMatrix();
}

}  // namespace latmech::linalg
