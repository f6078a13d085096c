#pragma once

// Periodic strut lattices in the fundamental representation: only nodes with
// reduced coordinates in [0, 1) are stored and struts that leave the cell
// carry an integer shift saying which neighbouring cell their far end sits in.

#include <cstdint>
#include <string>
#include <vector>

#include "latmech/types.hpp"

namespace latmech {

/// Strut from node `i` to the image of node `j` in cell `shift`.
struct Edge {
  int i = 0;
  int j = 0;
  Vec3i shift = Vec3i::Zero();

  bool operator==(const Edge& o) const { return i == o.i && j == o.j && shift == o.shift; }
};

enum class NodeType { Inner, Face, Edge, Corner };

const char* to_string(NodeType t);

class Lattice {
 public:
  Lattice() = default;

  /// Validates the invariants and throws std::invalid_argument naming the
  /// offending node or edge:
  ///  - reduced coordinates finite and in [0, 1)
  ///  - cell finite with det(A) > 0
  ///  - edge endpoints in range, every strut longer than 1e-9
  ///  - no strut listed twice (including the reversed form j->i, -shift)
  ///  - radius finite and positive
  Lattice(std::string name, Mat3 cell, std::vector<Vec3> nodes, std::vector<Edge> edges, double radius);

  const std::string& name() const { return name_; }
  /// Columns are the lattice vectors.
  const Mat3& cell() const { return cell_; }
  const std::vector<Vec3>& nodes() const { return nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  double radius() const { return radius_; }

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t edge_count() const { return edges_.size(); }

  /// Transformed (Cartesian) position A x of node `n`.
  Vec3 position(int n) const { return cell_ * nodes_.at(n); }

  Lattice with_name(std::string name) const;
  Lattice with_radius(double radius) const;

 private:
  std::string name_;
  Mat3 cell_ = Mat3::Identity();
  std::vector<Vec3> nodes_;
  std::vector<Edge> edges_;
  double radius_ = 0.0;
};

/// Count of reduced coordinates on the cell boundary {0, 1} (tolerance 1e-9).
/// Throws for coordinates outside [0, 1] beyond that tolerance.
NodeType classify_node(const Vec3& x);

/// A (x_j - x_i + t), the strut vector in transformed coordinates.
Vec3 edge_vector(const Lattice& lat, const Edge& e);

/// Strut vector with the reduced-coordinate difference computed first.
Vec3 reduced_edge_vector(const Lattice& lat, const Edge& e);

/// The same strut set viewed with every strut inside the closed unit cell.
///
/// Struts with a nonzero shift are cut where they cross a cell face; each cut
/// point becomes a boundary node. Boundary nodes on an upper face (coordinate
/// 1) are slaves of their image on the lower face; `periodic_pairs` records
/// each such (master, slave, A * (x_slave - x_master)).
struct WindowedLattice {
  struct Element {
    int a = 0;
    int b = 0;
    int source_edge = 0;  ///< fundamental edge this piece belongs to
  };
  struct PeriodicPair {
    int master = 0;
    int slave = 0;
    Vec3 separation = Vec3::Zero();
  };

  Mat3 cell = Mat3::Identity();
  std::vector<Vec3> reduced;  ///< reduced coordinates in [0, 1]
  std::vector<Vec3> nodes;    ///< transformed coordinates A x
  /// Fundamental node index, or -1 for a boundary node created by the cut.
  std::vector<int> base_node;
  std::vector<Element> elements;
  std::vector<PeriodicPair> periodic_pairs;
  double radius = 0.0;
  std::string name;

  /// Node index that carries the independent DOFs of node `n`: itself, or
  /// the master of the periodic pair it is a slave in.
  int master_of(int n) const;
};

WindowedLattice window(const Lattice& lat);

/// Inverse of `window`: rebuild the fundamental edges from the pieces.
Lattice fold(const WindowedLattice& w);

/// n x n x n supercell (cell n A, n^3 copies of every node and edge).
Lattice tessellate(const Lattice& lat, int n);

/// Move every node by exactly `level` (transformed units) along a random
/// unit direction, then wrap back into [0, 1) and repair the shifts.
/// Requires at least two nodes.
Lattice perturb(const Lattice& lat, double level, std::uint64_t seed);

/// Displace every node by its own vector (transformed units), wrapping as in
/// `perturb`.
Lattice displace_nodes(const Lattice& lat, const std::vector<Vec3>& deltas);

/// Displace one node by `delta` (transformed units), wrapping as in `perturb`.
Lattice displace_node(const Lattice& lat, int node, const Vec3& delta);

/// Cell becomes R A; reduced coordinates and shifts are unchanged.
Lattice rotate_lattice(const Lattice& lat, const Mat3& r);

/// sum_e pi r^2 L_e / det A (no correction for overlap at the joints).
double relative_density(const Lattice& lat);

/// Indices of nodes not reachable from node 0 through the struts.
std::vector<int> unreachable_nodes(const Lattice& lat);

/// Order-insensitive comparison of edge sets: each strut is compared in the
/// canonical orientation (i < j, or i == j with the lexicographically
/// positive shift).
bool same_edge_multiset(const std::vector<Edge>& a, const std::vector<Edge>& b);

/// Canonical orientation of a strut as described above.
Edge canonical(const Edge& e);

}  // namespace latmech
