#pragma once

#include <Eigen/Dense>

namespace latmech {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec6 = Eigen::Matrix<double, 6, 1>;
using Mat6 = Eigen::Matrix<double, 6, 6>;
using Vec3i = Eigen::Vector3i;

}  // namespace latmech
