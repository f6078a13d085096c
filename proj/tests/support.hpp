#pragma once

// Shared generators and reference implementations for the tests.

#include <cmath>
#include <cstdint>

#include "latmech/rng.hpp"
#include "latmech/tensor4.hpp"

namespace testing {

using namespace latmech;

inline Mat6 random_symmetric(const CounterRng& rng, std::uint64_t index, double scale = 1.0) {
  Mat6 m;
  for (int a = 0; a < 6; ++a)
    for (int b = a; b < 6; ++b) {
      const double v = scale * rng.normal(index * 64 + a * 6 + b);
      m(a, b) = v;
      m(b, a) = v;
    }
  return m;
}

inline ElasticTensor4 random_tensor(const CounterRng& rng, std::uint64_t index) {
  return from_mandel(MandelMatrix(random_symmetric(rng, index)));
}

/// Full 3^8 contraction C'_ijkl = R_ip R_jq R_kr R_ls C_pqrs.
inline Tensor4Array brute_rotate(const ElasticTensor4& c, const Mat3& r) {
  Tensor4Array out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) {
          double s = 0.0;
          for (int p = 0; p < 3; ++p)
            for (int q = 0; q < 3; ++q)
              for (int u = 0; u < 3; ++u)
                for (int v = 0; v < 3; ++v) s += r(i, p) * r(j, q) * r(k, u) * r(l, v) * c(p, q, u, v);
          out[t4_index(i, j, k, l)] = s;
        }
  return out;
}

inline double array_distance(const Tensor4Array& a, const Tensor4Array& b) {
  double s = 0.0;
  for (std::size_t n = 0; n < a.size(); ++n) s += (a[n] - b[n]) * (a[n] - b[n]);
  return std::sqrt(s);
}

inline double relative(const Mat6& a, const Mat6& b) { return (a - b).norm() / b.norm(); }

/// Mandel rotation matrix typed out entry by entry (1-based R_ij as in the
/// usual textbook layout).
inline Mat6 literal_mandel_rotation(const Mat3& q) {
  auto R = [&](int i, int j) { return q(i - 1, j - 1); };
  const double s = std::sqrt(2.0);
  Mat6 m;
  m << R(1, 1) * R(1, 1), R(1, 2) * R(1, 2), R(1, 3) * R(1, 3), s * R(1, 2) * R(1, 3), s * R(1, 1) * R(1, 3),
      s * R(1, 1) * R(1, 2),  //
      R(2, 1) * R(2, 1), R(2, 2) * R(2, 2), R(2, 3) * R(2, 3), s * R(2, 2) * R(2, 3), s * R(2, 1) * R(2, 3),
      s * R(2, 1) * R(2, 2),  //
      R(3, 1) * R(3, 1), R(3, 2) * R(3, 2), R(3, 3) * R(3, 3), s * R(3, 2) * R(3, 3), s * R(3, 1) * R(3, 3),
      s * R(3, 1) * R(3, 2),  //
      s * R(2, 1) * R(3, 1), s * R(2, 2) * R(3, 2), s * R(2, 3) * R(3, 3), R(2, 2) * R(3, 3) + R(2, 3) * R(3, 2),
      R(2, 1) * R(3, 3) + R(2, 3) * R(3, 1), R(2, 1) * R(3, 2) + R(2, 2) * R(3, 1),  //
      s * R(1, 1) * R(3, 1), s * R(1, 2) * R(3, 2), s * R(1, 3) * R(3, 3), R(1, 2) * R(3, 3) + R(1, 3) * R(3, 2),
      R(1, 1) * R(3, 3) + R(1, 3) * R(3, 1), R(1, 1) * R(3, 2) + R(1, 2) * R(3, 1),  //
      s * R(1, 1) * R(2, 1), s * R(1, 2) * R(2, 2), s * R(1, 3) * R(2, 3), R(1, 2) * R(2, 3) + R(1, 3) * R(2, 2),
      R(1, 1) * R(2, 3) + R(1, 3) * R(2, 1), R(1, 1) * R(2, 2) + R(1, 2) * R(2, 1);
  return m;
}

}  // namespace testing
