#include "latmech/catalogue.hpp"

#include <cmath>

namespace latmech::catalogue {

std::vector<Edge> connect_at_distance(const Mat3& cell, const std::vector<Vec3>& nodes, double length) {
  std::vector<Edge> edges;
  const int n = static_cast<int>(nodes.size());
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int tx = -1; tx <= 1; ++tx)
        for (int ty = -1; ty <= 1; ++ty)
          for (int tz = -1; tz <= 1; ++tz) {
            const Edge e{i, j, Vec3i(tx, ty, tz)};
            if (canonical(e) != e) continue;
            const Vec3 v = cell * (nodes[j] - nodes[i] + e.shift.cast<double>());
            if (std::abs(v.norm() - length) < 1e-9) edges.push_back(e);
          }
  return edges;
}

Lattice simple_cubic(double radius) {
  return Lattice("simple_cubic", Mat3::Identity(), {Vec3(0.5, 0.5, 0.5)},
                 {{0, 0, Vec3i(1, 0, 0)}, {0, 0, Vec3i(0, 1, 0)}, {0, 0, Vec3i(0, 0, 1)}}, radius);
}

Lattice simple_cubic_midpoints(double radius) {
  std::vector<Vec3> nodes{Vec3(0.5, 0.5, 0.5), Vec3(0.0, 0.5, 0.5), Vec3(0.5, 0.0, 0.5), Vec3(0.5, 0.5, 0.0)};
  std::vector<Edge> edges;
  for (int k = 0; k < 3; ++k) {
    Vec3i t = Vec3i::Zero();
    t(k) = 1;
    edges.push_back({0, k + 1, t});
    edges.push_back({k + 1, 0, Vec3i::Zero()});
  }
  return Lattice("simple_cubic_midpoints", Mat3::Identity(), std::move(nodes), std::move(edges), radius);
}

Lattice bcc(double radius) {
  std::vector<Vec3> nodes{Vec3(0.5, 0.5, 0.5), Vec3(0.0, 0.0, 0.0)};
  auto edges = connect_at_distance(Mat3::Identity(), nodes, std::sqrt(3.0) / 2.0);
  return Lattice("bcc", Mat3::Identity(), std::move(nodes), std::move(edges), radius);
}

Lattice octet(double radius) {
  std::vector<Vec3> nodes{Vec3(0, 0, 0), Vec3(0.5, 0.5, 0), Vec3(0.5, 0, 0.5), Vec3(0, 0.5, 0.5)};
  auto edges = connect_at_distance(Mat3::Identity(), nodes, std::sqrt(2.0) / 2.0);
  return Lattice("octet", Mat3::Identity(), std::move(nodes), std::move(edges), radius);
}

Lattice sc_bcc(double radius) {
  std::vector<Vec3> nodes{Vec3(0.0, 0.0, 0.0), Vec3(0.5, 0.5, 0.5)};
  auto edges = connect_at_distance(Mat3::Identity(), nodes, 1.0);
  auto diag = connect_at_distance(Mat3::Identity(), nodes, std::sqrt(3.0) / 2.0);
  edges.insert(edges.end(), diag.begin(), diag.end());
  return Lattice("sc_bcc", Mat3::Identity(), std::move(nodes), std::move(edges), radius);
}

Lattice diamond(double radius) {
  std::vector<Vec3> nodes{Vec3(0, 0, 0),          Vec3(0, 0.5, 0.5),       Vec3(0.5, 0, 0.5),
                          Vec3(0.5, 0.5, 0),      Vec3(0.25, 0.25, 0.25),  Vec3(0.25, 0.75, 0.75),
                          Vec3(0.75, 0.25, 0.75), Vec3(0.75, 0.75, 0.25)};
  auto edges = connect_at_distance(Mat3::Identity(), nodes, std::sqrt(3.0) / 4.0);
  return Lattice("diamond", Mat3::Identity(), std::move(nodes), std::move(edges), radius);
}

Lattice triclinic_bcc(double radius) {
  Mat3 cell;
  cell << 1.0, 0.2, 0.1,
          0.0, 0.9, 0.15,
          0.0, 0.0, 1.1;
  std::vector<Vec3> nodes{Vec3(0.5, 0.5, 0.5), Vec3(0.0, 0.0, 0.0)};
  std::vector<Edge> edges;
  for (int tx = 0; tx <= 1; ++tx)
    for (int ty = 0; ty <= 1; ++ty)
      for (int tz = 0; tz <= 1; ++tz) edges.push_back({0, 1, Vec3i(tx, ty, tz)});
  edges.push_back({1, 1, Vec3i(1, 0, 0)});
  edges.push_back({1, 1, Vec3i(0, 1, 0)});
  edges.push_back({1, 1, Vec3i(0, 0, 1)});
  return Lattice("triclinic_bcc", cell, std::move(nodes), std::move(edges), radius);
}

std::vector<Lattice> reference_set() {
  return {simple_cubic(), simple_cubic_midpoints(), bcc(), octet(), sc_bcc(), diamond(), triclinic_bcc()};
}

}  // namespace latmech::catalogue
