#include "latmech/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "latmech/rng.hpp"
#include "latmech/tensor4.hpp"

namespace latmech {

namespace {

constexpr double kBoundaryTol = 1e-9;

std::string fmt_vec(const Vec3& v) {
  std::ostringstream s;
  s << "(" << v.x() << ", " << v.y() << ", " << v.z() << ")";
  return s.str();
}

int floor_div(int a, int n) { return a >= 0 ? a / n : -((-a + n - 1) / n); }

auto edge_key(const Edge& e) { return std::make_tuple(e.i, e.j, e.shift.x(), e.shift.y(), e.shift.z()); }

/// Wrap reduced coordinates into [0, 1), returning the integer offset removed.
Vec3i wrap_in_place(Vec3& x) {
  Vec3i offset;
  for (int k = 0; k < 3; ++k) {
    const double f = std::floor(x(k));
    offset(k) = static_cast<int>(f);
    x(k) -= f;
    if (x(k) >= 1.0) {
      x(k) = 0.0;
      offset(k) += 1;
    }
  }
  return offset;
}

}  // namespace

const char* to_string(NodeType t) {
  switch (t) {
    case NodeType::Inner: return "inner";
    case NodeType::Face: return "face";
    case NodeType::Edge: return "edge";
    case NodeType::Corner: return "corner";
  }
  return "?";
}

Lattice::Lattice(std::string name, Mat3 cell, std::vector<Vec3> nodes, std::vector<Edge> edges, double radius)
    : name_(std::move(name)), cell_(cell), nodes_(std::move(nodes)), edges_(std::move(edges)), radius_(radius) {
  if (!cell_.allFinite()) throw std::invalid_argument("cell has non-finite entries");
  if (!(cell_.determinant() > 0.0)) {
    std::ostringstream msg;
    msg << "degenerate or left-handed cell (det A = " << cell_.determinant() << ")";
    throw std::invalid_argument(msg.str());
  }
  if (!(std::isfinite(radius_) && radius_ > 0.0)) throw std::invalid_argument("strut radius must be positive");

  for (std::size_t n = 0; n < nodes_.size(); ++n) {
    const Vec3& x = nodes_[n];
    for (int k = 0; k < 3; ++k) {
      if (!(std::isfinite(x(k)) && x(k) >= 0.0 && x(k) < 1.0)) {
        throw std::invalid_argument("node " + std::to_string(n) + " has reduced coordinates " + fmt_vec(x) +
                                    " outside [0, 1)");
      }
    }
  }

  std::map<decltype(edge_key(Edge{})), std::size_t> seen;
  const int count = static_cast<int>(nodes_.size());
  for (std::size_t k = 0; k < edges_.size(); ++k) {
    const Edge& e = edges_[k];
    if (e.i < 0 || e.i >= count || e.j < 0 || e.j >= count) {
      throw std::invalid_argument("edge " + std::to_string(k) + " references a missing node (" + std::to_string(e.i) +
                                  " -> " + std::to_string(e.j) + ", " + std::to_string(count) + " nodes)");
    }
    if (!(edge_vector(*this, e).norm() > 1e-9))
      throw std::invalid_argument("edge " + std::to_string(k) + " has zero length");
    const auto [it, inserted] = seen.emplace(edge_key(canonical(e)), k);
    if (!inserted) {
      throw std::invalid_argument("edge " + std::to_string(k) + " duplicates edge " + std::to_string(it->second));
    }
  }
}

Lattice Lattice::with_name(std::string name) const {
  Lattice out = *this;
  out.name_ = std::move(name);
  return out;
}

Lattice Lattice::with_radius(double radius) const { return Lattice(name_, cell_, nodes_, edges_, radius); }

NodeType classify_node(const Vec3& x) {
  int on_boundary = 0;
  for (int k = 0; k < 3; ++k) {
    if (!(x(k) >= -kBoundaryTol && x(k) <= 1.0 + kBoundaryTol)) {
      throw std::invalid_argument("reduced coordinate " + fmt_vec(x) + " lies outside the unit cell");
    }
    if (std::abs(x(k)) <= kBoundaryTol || std::abs(x(k) - 1.0) <= kBoundaryTol) ++on_boundary;
  }
  static constexpr NodeType kByCount[] = {NodeType::Inner, NodeType::Face, NodeType::Edge, NodeType::Corner};
  return kByCount[on_boundary];
}

Vec3 reduced_edge_vector(const Lattice& lat, const Edge& e) {
  const auto n = static_cast<int>(lat.node_count());
  if (e.i < 0 || e.i >= n || e.j < 0 || e.j >= n) {
    throw std::invalid_argument("edge references missing node (" + std::to_string(e.i) + " -> " +
                                std::to_string(e.j) + ")");
  }
  return lat.nodes()[e.j] - lat.nodes()[e.i] + e.shift.cast<double>();
}

Vec3 edge_vector(const Lattice& lat, const Edge& e) { return lat.cell() * reduced_edge_vector(lat, e); }

Edge canonical(const Edge& e) {
  Edge c = e;
  if (c.i > c.j) {
    std::swap(c.i, c.j);
    c.shift = -c.shift;
  } else if (c.i == c.j) {
    for (int k = 0; k < 3; ++k) {
      if (c.shift(k) != 0) {
        if (c.shift(k) < 0) c.shift = -c.shift;
        break;
      }
    }
  }
  return c;
}

bool same_edge_multiset(const std::vector<Edge>& a, const std::vector<Edge>& b) {
  if (a.size() != b.size()) return false;
  auto keys = [](const std::vector<Edge>& es) {
    std::vector<decltype(edge_key(Edge{}))> out;
    out.reserve(es.size());
    for (const Edge& e : es) out.push_back(edge_key(canonical(e)));
    std::sort(out.begin(), out.end());
    return out;
  };
  return keys(a) == keys(b);
}

// -- windowed representation --------------------------------------------------

int WindowedLattice::master_of(int n) const {
  for (const auto& p : periodic_pairs)
    if (p.slave == n) return p.master;
  return n;
}

namespace {

class WindowBuilder {
 public:
  explicit WindowBuilder(const Lattice& lat) : lat_(lat) {
    w_.cell = lat.cell();
    w_.radius = lat.radius();
    w_.name = lat.name();
    for (std::size_t n = 0; n < lat.node_count(); ++n) add_node(lat.nodes()[n], static_cast<int>(n));
  }

  /// Node at reduced position `y`, creating a boundary node if needed.
  int node_at(const Vec3& y) {
    const auto key = position_key(y);
    if (auto it = index_.find(key); it != index_.end()) return it->second;
    return add_node(y, -1);
  }

  void add_edge(int source, const Edge& e) {
    const Vec3 p = lat_.nodes()[e.i];
    const Vec3 q = lat_.nodes()[e.j] + e.shift.cast<double>();
    if (e.shift.isZero()) {
      w_.elements.push_back({e.i, e.j, source});
      return;
    }

    std::vector<double> cuts{0.0, 1.0};
    for (int k = 0; k < 3; ++k) {
      const double lo = std::min(p(k), q(k));
      const double hi = std::max(p(k), q(k));
      for (double m = std::floor(lo) + 1.0; m < hi; m += 1.0) {
        if (m > lo) cuts.push_back((m - p(k)) / (q(k) - p(k)));
      }
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end(), [](double a, double b) { return std::abs(a - b) < 1e-12; }),
               cuts.end());

    for (std::size_t s = 0; s + 1 < cuts.size(); ++s) {
      const double s0 = cuts[s], s1 = cuts[s + 1];
      const Vec3 mid = p + 0.5 * (s0 + s1) * (q - p);
      const Vec3 offset(std::floor(mid.x()), std::floor(mid.y()), std::floor(mid.z()));
      const Vec3i ioff = offset.cast<int>();

      int a, b;
      if (s == 0 && ioff.isZero()) {
        a = e.i;
      } else {
        a = node_at(snap(p + s0 * (q - p) - offset));
      }
      if (s + 2 == cuts.size() && ioff == e.shift) {
        b = e.j;
      } else {
        b = node_at(snap(p + s1 * (q - p) - offset));
      }
      w_.elements.push_back({a, b, source});
    }
  }

  WindowedLattice finish() {
    const std::size_t n_before = w_.reduced.size();
    for (std::size_t n = 0; n < n_before; ++n) {
      if (w_.base_node[n] >= 0) continue;
      Vec3 wrapped = w_.reduced[n];
      for (int k = 0; k < 3; ++k)
        if (wrapped(k) >= 1.0 - kBoundaryTol) wrapped(k) = 0.0;
      if (wrapped == w_.reduced[n]) continue;
      const int master = node_at(wrapped);
      w_.periodic_pairs.push_back({master, static_cast<int>(n), w_.cell * (w_.reduced[n] - wrapped)});
    }
    return std::move(w_);
  }

 private:
  using Key = std::tuple<long long, long long, long long>;

  static Key position_key(const Vec3& y) {
    return {std::llround(y.x() * 1e9), std::llround(y.y() * 1e9), std::llround(y.z() * 1e9)};
  }

  static Vec3 snap(Vec3 y) {
    for (int k = 0; k < 3; ++k) {
      if (std::abs(y(k)) < 1e-12) y(k) = 0.0;
      if (std::abs(y(k) - 1.0) < 1e-12) y(k) = 1.0;
    }
    return y;
  }

  int add_node(const Vec3& y, int base) {
    const int id = static_cast<int>(w_.reduced.size());
    w_.reduced.push_back(y);
    w_.nodes.push_back(w_.cell * y);
    w_.base_node.push_back(base);
    index_.emplace(position_key(y), id);
    return id;
  }

  const Lattice& lat_;
  WindowedLattice w_;
  std::map<Key, int> index_;
};

}  // namespace

WindowedLattice window(const Lattice& lat) {
  WindowBuilder builder(lat);
  for (std::size_t k = 0; k < lat.edge_count(); ++k) builder.add_edge(static_cast<int>(k), lat.edges()[k]);
  return builder.finish();
}

Lattice fold(const WindowedLattice& w) {
  std::vector<Vec3> nodes;
  std::vector<int> fundamental_id(w.reduced.size(), -1);
  for (std::size_t n = 0; n < w.reduced.size(); ++n) {
    if (w.base_node[n] < 0) continue;
    const auto base = static_cast<std::size_t>(w.base_node[n]);
    if (nodes.size() <= base) nodes.resize(base + 1);
    nodes[base] = w.reduced[n];
    fundamental_id[n] = w.base_node[n];
  }

  std::map<int, std::vector<const WindowedLattice::Element*>> pieces;
  for (const auto& el : w.elements) pieces[el.source_edge].push_back(&el);

  std::vector<Edge> edges;
  edges.reserve(pieces.size());
  for (const auto& [source, chain] : pieces) {
    const int start = fundamental_id[w.master_of(chain.front()->a)];
    const int end = fundamental_id[w.master_of(chain.back()->b)];
    if (start < 0 || end < 0) {
      throw std::invalid_argument("fold: element chain for edge " + std::to_string(source) +
                                  " does not start and end at fundamental nodes");
    }
    Vec3 total = Vec3::Zero();
    for (const auto* el : chain) total += w.reduced[el->b] - w.reduced[el->a];
    const Vec3 t = nodes[start] + total - nodes[end];
    edges.push_back({start, end, Vec3i(static_cast<int>(std::lround(t.x())), static_cast<int>(std::lround(t.y())),
                                       static_cast<int>(std::lround(t.z())))});
  }
  return Lattice(w.name, w.cell, std::move(nodes), std::move(edges), w.radius);
}

// -- generation ---------------------------------------------------------------

Lattice tessellate(const Lattice& lat, int n) {
  if (n < 1) throw std::invalid_argument("tessellation factor must be >= 1, got " + std::to_string(n));
  const int count = static_cast<int>(lat.node_count());
  auto copy_index = [n](const Vec3i& k) { return (k.x() * n + k.y()) * n + k.z(); };

  std::vector<Vec3> nodes;
  std::vector<Edge> edges;
  nodes.reserve(static_cast<std::size_t>(n * n * n * count));
  for (int kx = 0; kx < n; ++kx)
    for (int ky = 0; ky < n; ++ky)
      for (int kz = 0; kz < n; ++kz) {
        const Vec3 k(kx, ky, kz);
        for (const Vec3& x : lat.nodes()) nodes.push_back((x + k) / n);
      }
  for (int kx = 0; kx < n; ++kx)
    for (int ky = 0; ky < n; ++ky)
      for (int kz = 0; kz < n; ++kz) {
        const Vec3i k(kx, ky, kz);
        for (const Edge& e : lat.edges()) {
          const Vec3i target = k + e.shift;
          Vec3i shift, wrapped;
          for (int d = 0; d < 3; ++d) {
            shift(d) = floor_div(target(d), n);
            wrapped(d) = target(d) - shift(d) * n;
          }
          edges.push_back({copy_index(k) * count + e.i, copy_index(wrapped) * count + e.j, shift});
        }
      }
  return Lattice(lat.name(), lat.cell() * n, std::move(nodes), std::move(edges), lat.radius());
}

Lattice displace_nodes(const Lattice& lat, const std::vector<Vec3>& deltas) {
  if (deltas.size() != lat.node_count())
    throw std::invalid_argument("displace_nodes: " + std::to_string(deltas.size()) + " displacements for " +
                                std::to_string(lat.node_count()) + " nodes");
  const Mat3 inv = lat.cell().inverse();
  std::vector<Vec3> nodes = lat.nodes();
  std::vector<Vec3i> offsets(nodes.size(), Vec3i::Zero());
  for (std::size_t n = 0; n < nodes.size(); ++n) {
    if (deltas[n].isZero()) continue;
    nodes[n] += inv * deltas[n];
    offsets[n] = wrap_in_place(nodes[n]);
  }
  std::vector<Edge> edges = lat.edges();
  for (Edge& e : edges) e.shift += offsets[e.j] - offsets[e.i];
  return Lattice(lat.name(), lat.cell(), std::move(nodes), std::move(edges), lat.radius());
}

Lattice perturb(const Lattice& lat, double level, std::uint64_t seed) {
  if (lat.node_count() < 2) {
    throw std::invalid_argument("lattice '" + lat.name() + "' has " + std::to_string(lat.node_count()) +
                                " node(s); perturbation needs at least 2");
  }
  if (!(std::isfinite(level) && level >= 0.0))
    throw std::invalid_argument("perturbation level must be finite and >= 0");
  if (level == 0.0) return lat;

  const CounterRng rng(seed);
  std::vector<Vec3> deltas(lat.node_count());
  for (std::size_t n = 0; n < deltas.size(); ++n) deltas[n] = level * rng.unit_vector(n);
  return displace_nodes(lat, deltas);
}

Lattice displace_node(const Lattice& lat, int node, const Vec3& delta) {
  if (node < 0 || node >= static_cast<int>(lat.node_count()))
    throw std::invalid_argument("node index " + std::to_string(node) + " out of range");
  std::vector<Vec3> deltas(lat.node_count(), Vec3::Zero());
  deltas[node] = delta;
  return displace_nodes(lat, deltas);
}

Lattice rotate_lattice(const Lattice& lat, const Mat3& r) {
  check_rotation(r);
  return Lattice(lat.name(), r * lat.cell(), lat.nodes(), lat.edges(), lat.radius());
}

double relative_density(const Lattice& lat) {
  const double volume = lat.cell().determinant();
  if (!(volume > 0.0)) throw std::invalid_argument("degenerate cell: det A <= 0");
  double length = 0.0;
  for (const Edge& e : lat.edges()) length += edge_vector(lat, e).norm();
  return std::numbers::pi * lat.radius() * lat.radius() * length / volume;
}

std::vector<int> unreachable_nodes(const Lattice& lat) {
  const std::size_t n = lat.node_count();
  if (n == 0) return {};
  std::vector<std::vector<int>> adj(n);
  for (const Edge& e : lat.edges()) {
    adj[e.i].push_back(e.j);
    adj[e.j].push_back(e.i);
  }
  std::vector<char> seen(n, 0);
  std::queue<int> todo;
  todo.push(0);
  seen[0] = 1;
  while (!todo.empty()) {
    const int v = todo.front();
    todo.pop();
    for (int u : adj[v])
      if (!seen[u]) {
        seen[u] = 1;
        todo.push(u);
      }
  }
  std::vector<int> out;
  for (std::size_t v = 0; v < n; ++v)
    if (!seen[v]) out.push_back(static_cast<int>(v));
  return out;
}

}  // namespace latmech
