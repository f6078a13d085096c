#include "latmech/rng.hpp"

#include <cmath>
#include <numbers>

namespace latmech {

double CounterRng::normal(std::uint64_t counter) const {
  const double u1 = uniform(2 * counter);
  const double u2 = uniform(2 * counter + 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Vec3 CounterRng::unit_vector(std::uint64_t index) const {
  // Retry on a (practically impossible) near-zero triple; the retry stream
  // is offset far from regular indices so draws stay deterministic.
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t base = 3 * (index + attempt * 0x100000000ULL);
    const Vec3 v(normal(base), normal(base + 1), normal(base + 2));
    const double n = v.norm();
    if (n > 1e-8) return v / n;
  }
}

Mat3 CounterRng::rotation(std::uint64_t index) const {
  for (std::uint64_t attempt = 0;; ++attempt) {
    const std::uint64_t base = 4 * (index + attempt * 0x100000000ULL);
    Eigen::Quaterniond q(normal(base), normal(base + 1), normal(base + 2), normal(base + 3));
    if (q.norm() > 1e-8) {
      q.normalize();
      return q.toRotationMatrix();
    }
  }
}

}  // namespace latmech
