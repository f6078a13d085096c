#include "latmech/metrics.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>
#include <thread>

#include "latmech/rng.hpp"

namespace latmech::metrics {

namespace {

constexpr std::uint64_t kDirectionStream = 1;
constexpr std::uint64_t kRotationStream = 2;

}  // namespace

DirectionSet DirectionSet::random(std::size_t n, std::uint64_t seed) {
  const CounterRng rng(seed, kDirectionStream);
  DirectionSet out;
  out.seed = seed;
  out.directions.reserve(n);
  for (std::size_t q = 0; q < n; ++q) out.directions.push_back(rng.unit_vector(q));
  return out;
}

std::vector<Mat3> random_rotations(std::size_t n, std::uint64_t seed) {
  const CounterRng rng(seed, kRotationStream);
  std::vector<Mat3> out;
  out.reserve(n);
  for (std::size_t s = 0; s < n; ++s) out.push_back(rng.rotation(s));
  return out;
}

double l_comp(const MandelMatrix& pred, const MandelMatrix& target) {
  return (pred.matrix() - target.matrix()).squaredNorm();
}

double mean_square(const MandelMatrix& target) { return target.matrix().squaredNorm() / 36.0; }

double aggregate_training_loss(const std::vector<std::pair<MandelMatrix, MandelMatrix>>& pairs) {
  if (pairs.empty()) throw std::invalid_argument("aggregate_training_loss: no pairs");
  double total = 0.0;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    const double gamma = mean_square(pairs[p].second);
    if (!(gamma > 0.0)) throw std::invalid_argument("aggregate_training_loss: target " + std::to_string(p) + " is zero");
    total += l_comp(pairs[p].first, pairs[p].second) / gamma;
  }
  return total / static_cast<double>(pairs.size());
}

DirectionalLoss l_dir(const ElasticTensor4& pred, const ElasticTensor4& target, const DirectionSet& dirs) {
  if (dirs.directions.empty()) throw std::invalid_argument("l_dir: empty direction set");
  const ElasticTensor4 diff = pred - target;
  double sum = 0.0;
  for (const Vec3& d : dirs.directions) sum += std::abs(directional_modulus(diff, d));
  DirectionalLoss out;
  out.l_dir = sum / static_cast<double>(dirs.size());
  const double gamma = mean_square(to_mandel(target));
  if (!(gamma > 0.0)) throw std::invalid_argument("l_dir: relative loss undefined for a zero target");
  out.l_dir_rel = out.l_dir / std::sqrt(gamma);
  return out;
}

double l_equiv(const Predictor& predictor, const std::vector<Lattice>& lattices, const std::vector<Mat3>& rotations,
               const DirectionSet& dirs, unsigned threads) {
  if (rotations.empty()) throw std::invalid_argument("l_equiv: need at least one rotation");
  if (lattices.empty()) throw std::invalid_argument("l_equiv: no lattices");
  if (dirs.directions.empty()) throw std::invalid_argument("l_equiv: empty direction set");

  std::vector<double> per_lattice(lattices.size(), 0.0);
  std::vector<std::string> errors(lattices.size());

  auto work = [&](std::size_t p) {
    const Lattice& lat = lattices[p];
    try {
      const ElasticTensor4 base = predictor.predict(lat);
      double sum = 0.0;
      for (const Mat3& r : rotations) {
        const ElasticTensor4 diff = rotate(base, r) - predictor.predict(rotate_lattice(lat, r));
        for (const Vec3& d : dirs.directions) sum += std::abs(directional_modulus(diff, d));
      }
      per_lattice[p] = sum;
    } catch (const std::exception& ex) {
      errors[p] = "l_equiv: predictor failed on lattice '" + lat.name() + "': " + ex.what();
    }
  };

  const unsigned workers = predictor.concurrency_safe ? std::min<unsigned>(threads, lattices.size()) : 1;
  if (workers <= 1) {
    for (std::size_t p = 0; p < lattices.size(); ++p) work(p);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t p = next++; p < lattices.size(); p = next++) work(p);
      });
  }
  for (const auto& e : errors)
    if (!e.empty()) throw std::runtime_error(e);

  double total = 0.0;
  for (double v : per_lattice) total += v;
  return total / static_cast<double>(lattices.size() * rotations.size() * dirs.size());
}

double negative_eig_fraction(const std::vector<ElasticTensor4>& preds) {
  if (preds.empty()) throw std::invalid_argument("negative_eig_fraction: empty list");
  std::size_t negative = 0;
  for (const auto& c : preds)
    if (min_eigenvalue(c) < 0.0) ++negative;
  return static_cast<double>(negative) / static_cast<double>(preds.size());
}

double directional_penalty(const ElasticTensor4& c, const DirectionSet& dirs, double k) {
  if (dirs.directions.empty()) return 0.0;
  double sum = 0.0;
  for (const Vec3& d : dirs.directions) sum += std::max(0.0, -directional_modulus(c, d));
  return k * sum / static_cast<double>(dirs.size());
}

MetricReport evaluate(const std::vector<ElasticTensor4>& preds, const std::vector<ElasticTensor4>& targets,
                      const DirectionSet& dirs) {
  if (preds.size() != targets.size())
    throw std::invalid_argument("evaluate: " + std::to_string(preds.size()) + " predictions vs " +
                                std::to_string(targets.size()) + " targets");
  if (preds.empty()) throw std::invalid_argument("evaluate: no records");

  MetricReport r;
  r.count = preds.size();
  std::vector<std::pair<MandelMatrix, MandelMatrix>> pairs;
  for (std::size_t p = 0; p < preds.size(); ++p) {
    const MandelMatrix pm = to_mandel(preds[p]);
    const MandelMatrix tm = to_mandel(targets[p]);
    r.l_comp += l_comp(pm, tm);
    const auto d = l_dir(preds[p], targets[p], dirs);
    r.l_dir += d.l_dir;
    r.l_dir_rel += d.l_dir_rel;
    pairs.emplace_back(pm, tm);
  }
  const auto n = static_cast<double>(preds.size());
  r.l_comp /= n;
  r.l_dir /= n;
  r.l_dir_rel /= n;
  r.l_train = aggregate_training_loss(pairs);
  r.negative_eig_fraction = negative_eig_fraction(preds);
  return r;
}

}  // namespace latmech::metrics
