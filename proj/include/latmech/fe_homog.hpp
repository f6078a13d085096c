#pragma once

// Periodic beam-frame homogenization.
//
// Every strut is a two-node Euler-Bernoulli frame element with a solid
// circular section (A = pi r^2, I = pi r^4 / 4, J = pi r^4 / 2). Under a
// macroscopic strain eps the displacement field is u = eps X + w with w and
// the nodal rotations periodic. Working on the fundamental representation,
// the affine part only enters through eps * v for each strut vector v, which
// is applied to the far end of the element as a prescribed offset.
//
// The effective stiffness is read off the energy bilinear form
//   C_ab = (D_a^T K D_b) / V
// over the six unit Mandel strains, so it is symmetric and positive
// semi-definite by construction.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "latmech/lattice.hpp"
#include "latmech/tensor4.hpp"

namespace latmech {

struct BeamMaterial {
  double youngs_modulus = 1.0;
  double poisson_ratio = 0.3;

  /// Throws std::invalid_argument unless E > 0 and -1 < nu < 0.5.
  void validate() const;
  double shear_modulus() const { return youngs_modulus / (2.0 * (1.0 + poisson_ratio)); }
};

/// FE failure: disconnected lattice, singular system, bad geometry.
class HomogenizationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct HomogenizationResult {
  ElasticTensor4 stiffness;
  /// C_ab exactly as assembled, before the symmetric part is taken.
  Mat6 raw_mandel = Mat6::Zero();
  double relative_density = 0.0;
  std::size_t dof_count = 0;
  double residual = 0.0;  ///< max relative residual of the six solves
  double seconds = 0.0;
};

using Mat12 = Eigen::Matrix<double, 12, 12>;

/// Global 12x12 stiffness of a frame element lying along `axis` (unit).
/// DOF order per end: ux uy uz rx ry rz.
Mat12 beam_stiffness(double length, double radius, const Vec3& axis, const BeamMaterial& mat);

/// Local-frame stiffness (axis along x).
Mat12 beam_stiffness_local(double length, double radius, const BeamMaterial& mat);

HomogenizationResult homogenize(const Lattice& lat, const BeamMaterial& mat = {});

/// Same problem solved on the windowed representation with explicit
/// master-slave periodic constraints; agrees with `homogenize`.
HomogenizationResult homogenize_windowed(const Lattice& lat, const BeamMaterial& mat = {});

struct StrainResponse {
  Eigen::VectorXd dofs;  ///< periodic fluctuation and rotations, 6 per node
  double energy = 0.0;   ///< total strain energy in the cell
};

/// Solve the cell problem for one macroscopic strain (symmetric 3x3).
StrainResponse strain_response(const Lattice& lat, const BeamMaterial& mat, const Mat3& strain);

struct BatchItem {
  std::string name;
  double radius = 0.0;
  std::optional<HomogenizationResult> result;
  std::string error;  ///< set when result is empty
};

/// Homogenize every lattice at every radius (lattice-major order). With an
/// empty `radii` each lattice uses its own radius. Failures are recorded per
/// item instead of aborting; `threads` <= 1 runs serially.
std::vector<BatchItem> homogenize_batch(const std::vector<Lattice>& catalogue, const std::vector<double>& radii,
                                        const BeamMaterial& mat = {}, unsigned threads = 1);

}  // namespace latmech
