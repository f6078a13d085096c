#include "latmech/optimize.hpp"

#include <atomic>
#include <cmath>
#include <set>
#include <thread>

#include "latmech/metrics.hpp"

namespace latmech::optimize {

namespace {

constexpr int kMaxHalvings = 20;

double shortest_edge(const Lattice& lat) {
  double out = INFINITY;
  for (const Edge& e : lat.edges()) out = std::min(out, edge_vector(lat, e).norm());
  return out;
}

}  // namespace

void DesignProblem::validate() const {
  std::set<int> seen;
  for (int n : free_nodes) {
    if (n < 0 || n >= static_cast<int>(base.node_count()))
      throw std::invalid_argument("free node " + std::to_string(n) + " is not a node of the lattice");
    if (!seen.insert(n).second) throw std::invalid_argument("free node " + std::to_string(n) + " listed twice");
  }
  if (!(step_size > 0.0)) throw std::invalid_argument("step_size must be positive");
  if (!(fd_step > 0.0)) throw std::invalid_argument("fd_step must be positive");
  if (max_steps < 0) throw std::invalid_argument("max_steps must be non-negative");
  if (!(gradient_tol >= 0.0)) throw std::invalid_argument("gradient_tol must be non-negative");
}

double objective(const Lattice& lat, const ElasticTensor4& target, const BeamMaterial& mat) {
  return metrics::l_comp(to_mandel(homogenize(lat, mat).stiffness), to_mandel(target));
}

std::vector<NodeGradient> fd_gradient(const Lattice& lat, const ElasticTensor4& target,
                                      const std::vector<int>& free_nodes, double fd_step, const BeamMaterial& mat,
                                      unsigned threads) {
  if (!(fd_step > 0.0)) throw std::invalid_argument("fd_step must be positive");
  for (int n : free_nodes)
    if (n < 0 || n >= static_cast<int>(lat.node_count()))
      throw std::invalid_argument("free node " + std::to_string(n) + " is not a node of the lattice");

  const std::size_t jobs = free_nodes.size() * 3;
  std::vector<double> diff(jobs, 0.0);
  std::vector<std::exception_ptr> errors(jobs);

  auto work = [&](std::size_t job) {
    const int node = free_nodes[job / 3];
    Vec3 h = Vec3::Zero();
    h(static_cast<int>(job % 3)) = fd_step;
    try {
      const double plus = objective(displace_node(lat, node, h), target, mat);
      const double minus = objective(displace_node(lat, node, -h), target, mat);
      diff[job] = (plus - minus) / (2.0 * fd_step);
    } catch (...) {
      errors[job] = std::current_exception();
    }
  };

  const unsigned workers = std::min<std::size_t>(std::max(threads, 1u), std::max<std::size_t>(jobs, 1));
  if (workers <= 1) {
    for (std::size_t j = 0; j < jobs; ++j) work(j);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t j = next++; j < jobs; j = next++) work(j);
      });
  }
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);

  std::vector<NodeGradient> out;
  out.reserve(free_nodes.size());
  for (std::size_t k = 0; k < free_nodes.size(); ++k)
    out.push_back({free_nodes[k], Vec3(diff[3 * k], diff[3 * k + 1], diff[3 * k + 2])});
  return out;
}

double gradient_norm(const std::vector<NodeGradient>& gradient) {
  double sq = 0.0;
  for (const auto& g : gradient) sq += g.value.squaredNorm();
  return std::sqrt(sq);
}

Lattice step(const Lattice& lat, const std::vector<NodeGradient>& gradient, double eta) {
  std::vector<Vec3> deltas(lat.node_count(), Vec3::Zero());
  for (const auto& g : gradient) deltas.at(g.node) = -eta * g.value;
  return displace_nodes(lat, deltas);
}

DesignTrace solve(const DesignProblem& prob, const BeamMaterial& mat) {
  prob.validate();
  mat.validate();

  DesignTrace trace;
  Lattice x = prob.base;
  HomogenizationResult current;
  try {
    current = homogenize(x, mat);
  } catch (const std::exception& ex) {
    throw DesignAborted(std::string("initial homogenization failed: ") + ex.what(), trace);
  }
  double f = metrics::l_comp(to_mandel(current.stiffness), to_mandel(prob.target));
  trace.objective_history.push_back(f);

  auto finish = [&](std::string reason) {
    trace.final_lattice = x;
    trace.final_stiffness = homogenize(x, mat).stiffness;
    trace.stop_reason = std::move(reason);
    return trace;
  };
  auto abort = [&](const std::string& what) {
    trace.final_lattice = x;
    trace.final_stiffness = current.stiffness;
    trace.stop_reason = "aborted";
    return DesignAborted(what, trace);
  };

  for (int it = 0; it < prob.max_steps; ++it) {
    if (f == 0.0) return finish("zero objective");

    std::vector<NodeGradient> g;
    try {
      g = fd_gradient(x, prob.target, prob.free_nodes, prob.fd_step, mat, prob.threads);
    } catch (const std::exception& ex) {
      throw abort("step " + std::to_string(it) + ": gradient evaluation failed: " + ex.what());
    }
    const double gnorm = gradient_norm(g);
    trace.gradient_norms.push_back(gnorm);
    if (gnorm < prob.gradient_tol) return finish("gradient below tolerance");

    double eta = prob.step_size;
    bool accepted = false;
    for (int halving = 0; halving <= kMaxHalvings; ++halving, eta *= 0.5) {
      Lattice candidate;
      try {
        candidate = step(x, g, eta);
      } catch (const std::invalid_argument&) {
        continue;  // step produced a degenerate lattice
      }
      if (shortest_edge(candidate) < prob.min_edge_length) continue;

      HomogenizationResult trial;
      try {
        trial = homogenize(candidate, mat);
      } catch (const std::exception& ex) {
        throw abort("step " + std::to_string(it) + ": homogenization failed: " + ex.what());
      }
      const double f_new = metrics::l_comp(to_mandel(trial.stiffness), to_mandel(prob.target));
      if (prob.backtracking && f_new > f) continue;

      x = std::move(candidate);
      current = std::move(trial);
      f = f_new;
      accepted = true;
      break;
    }
    if (!accepted) return finish("line search failed");
    trace.objective_history.push_back(f);
    trace.accepted_steps.push_back(eta);
  }
  return finish("step limit");
}

}  // namespace latmech::optimize
