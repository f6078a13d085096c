#pragma once

// Gradient descent on nodal positions towards a target stiffness, with the
// beam homogenizer in the loop and central finite-difference gradients.

#include <stdexcept>
#include <string>
#include <vector>

#include "latmech/fe_homog.hpp"
#include "latmech/lattice.hpp"
#include "latmech/tensor4.hpp"

namespace latmech::optimize {

/// Default step size. Tuned on the simple-cubic demo, where the objective is
/// of order 1e-6 and its gradient of order 1e-3 per unit of displacement.
inline constexpr double kDefaultStepSize = 50.0;

struct DesignProblem {
  Lattice base;
  ElasticTensor4 target;
  std::vector<int> free_nodes;
  double step_size = kDefaultStepSize;
  int max_steps = 50;
  double fd_step = 1e-5;
  /// Halve the step (up to 20 times) whenever it would raise the objective.
  bool backtracking = true;
  double gradient_tol = 1e-8;
  /// Reject steps that leave any strut shorter than this.
  double min_edge_length = 1e-3;
  /// Worker threads for the finite-difference homogenizations.
  unsigned threads = 1;

  /// Throws std::invalid_argument on a bad node index, non-positive step
  /// sizes or a negative step count.
  void validate() const;
};

struct DesignTrace {
  /// Objective before the first step and after every accepted step.
  std::vector<double> objective_history;
  std::vector<double> gradient_norms;
  /// Step size actually used for every accepted step.
  std::vector<double> accepted_steps;
  Lattice final_lattice;
  ElasticTensor4 final_stiffness;
  std::string stop_reason;
};

/// Raised when homogenization fails mid-run; carries the trace up to the
/// last accepted iterate.
class DesignAborted : public std::runtime_error {
 public:
  DesignAborted(const std::string& what, DesignTrace trace) : std::runtime_error(what), trace_(std::move(trace)) {}
  const DesignTrace& trace() const { return trace_; }

 private:
  DesignTrace trace_;
};

struct NodeGradient {
  int node = 0;
  Vec3 value = Vec3::Zero();
};

/// l_comp between the homogenized stiffness of `lat` and `target`.
double objective(const Lattice& lat, const ElasticTensor4& target, const BeamMaterial& mat = {});

/// Central differences of `objective` with respect to the transformed
/// coordinates of each free node, in the order of `free_nodes`.
std::vector<NodeGradient> fd_gradient(const Lattice& lat, const ElasticTensor4& target,
                                      const std::vector<int>& free_nodes, double fd_step,
                                      const BeamMaterial& mat = {}, unsigned threads = 1);

/// Apply -eta * gradient to the free nodes.
Lattice step(const Lattice& lat, const std::vector<NodeGradient>& gradient, double eta);

double gradient_norm(const std::vector<NodeGradient>& gradient);

DesignTrace solve(const DesignProblem& prob, const BeamMaterial& mat = {});

}  // namespace latmech::optimize
