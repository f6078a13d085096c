#pragma once

// Error metrics between predicted and target stiffness tensors.

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "latmech/lattice.hpp"
#include "latmech/tensor4.hpp"

namespace latmech::metrics {

/// `n` directions drawn uniformly on the unit sphere from `seed`.
struct DirectionSet {
  std::vector<Vec3> directions;
  std::uint64_t seed = 0;

  static DirectionSet random(std::size_t n = 250, std::uint64_t seed = 0);
  std::size_t size() const { return directions.size(); }
};

/// Rotations drawn Haar-uniformly from `seed`.
std::vector<Mat3> random_rotations(std::size_t n, std::uint64_t seed);

struct MetricReport {
  double l_comp = 0.0;      ///< mean over pairs of the per-lattice component loss
  double l_train = 0.0;     ///< normalised training loss
  double l_dir = 0.0;       ///< mean over pairs
  double l_dir_rel = 0.0;   ///< mean over pairs
  std::optional<double> l_equiv;
  double negative_eig_fraction = 0.0;  ///< fraction of predictions, in [0, 1]
  std::size_t count = 0;
};

/// sum_ij (C_ij - C~_ij)^2 over the 36 Mandel entries.
double l_comp(const MandelMatrix& pred, const MandelMatrix& target);

/// (1/36) sum_ij C~_ij^2, the mean-square Mandel entry of the target.
double mean_square(const MandelMatrix& target);

/// (1/B) sum_p l_comp_p / gamma_p. Throws for an empty list or a zero target
/// (naming the pair index).
double aggregate_training_loss(const std::vector<std::pair<MandelMatrix, MandelMatrix>>& pairs);

struct DirectionalLoss {
  double l_dir = 0.0;
  double l_dir_rel = 0.0;
};

/// Mean |(C - C~) d d d d| over the directions, and that value divided by
/// sqrt(gamma) of the target. Throws for an empty direction set or a zero
/// target.
DirectionalLoss l_dir(const ElasticTensor4& pred, const ElasticTensor4& target, const DirectionSet& dirs);

/// Maps a lattice to a stiffness. `concurrency_safe` allows l_equiv to call
/// it from several threads at once.
struct Predictor {
  std::function<ElasticTensor4(const Lattice&)> predict;
  bool concurrency_safe = false;
};

/// Mean over lattices p, directions q and rotations s of
/// |[rotate(P(L_p), R_s) - P(rotate_lattice(L_p, R_s))] d_q d_q d_q d_q|.
/// Predictor failures are rethrown with the lattice name.
double l_equiv(const Predictor& predictor, const std::vector<Lattice>& lattices, const std::vector<Mat3>& rotations,
               const DirectionSet& dirs, unsigned threads = 1);

/// Fraction of tensors whose smallest Kelvin eigenvalue is strictly below 0.
double negative_eig_fraction(const std::vector<ElasticTensor4>& preds);

/// Mean over directions of k * relu(-c_q), c_q the directional modulus.
double directional_penalty(const ElasticTensor4& c, const DirectionSet& dirs, double k);

/// All metrics over paired predictions and targets (l_equiv left empty).
MetricReport evaluate(const std::vector<ElasticTensor4>& preds, const std::vector<ElasticTensor4>& targets,
                      const DirectionSet& dirs);

}  // namespace latmech::metrics
