#include "latmech/fe_homog.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>
#include <thread>

namespace latmech {

namespace {

/// Frame model reduced to what the solver needs: independent nodes and
/// elements with the strut vector from end a to end b.
struct FrameModel {
  int node_count = 0;
  struct Element {
    int a = 0;
    int b = 0;
    Vec3 vector;
    Mat12 k;
  };
  std::vector<Element> elements;
  double volume = 1.0;
  double radius = 0.0;
};

void require_connected(const Lattice& lat) {
  if (lat.node_count() == 0) throw HomogenizationError("lattice '" + lat.name() + "' has no nodes");
  const auto missing = unreachable_nodes(lat);
  if (!missing.empty()) {
    std::ostringstream msg;
    msg << "lattice '" << lat.name() << "' is disconnected: node " << missing.front()
        << " is not reachable from node 0";
    if (missing.size() > 1) msg << " (" << missing.size() << " unreachable nodes)";
    throw HomogenizationError(msg.str());
  }
}

void require_density(const Lattice& lat) {
  const double rho = relative_density(lat);
  if (!(rho < 1.0)) {
    std::ostringstream msg;
    msg << "lattice '" << lat.name() << "' has relative density " << rho << " >= 1 at radius " << lat.radius();
    throw HomogenizationError(msg.str());
  }
}

FrameModel::Element make_element(int a, int b, const Vec3& v, double radius, const BeamMaterial& mat) {
  const double length = v.norm();
  return {a, b, v, beam_stiffness(length, radius, v / length, mat)};
}

FrameModel fundamental_model(const Lattice& lat, const BeamMaterial& mat) {
  FrameModel model;
  model.node_count = static_cast<int>(lat.node_count());
  model.volume = lat.cell().determinant();
  model.radius = lat.radius();
  model.elements.reserve(lat.edge_count());
  for (const Edge& e : lat.edges()) model.elements.push_back(make_element(e.i, e.j, edge_vector(lat, e), lat.radius(), mat));
  return model;
}

FrameModel windowed_model(const Lattice& lat, const BeamMaterial& mat) {
  const WindowedLattice w = window(lat);
  // Independent nodes: every windowed node that is not a slave.
  std::vector<int> independent(w.nodes.size(), -1);
  int count = 0;
  for (std::size_t n = 0; n < w.nodes.size(); ++n)
    if (w.master_of(static_cast<int>(n)) == static_cast<int>(n)) independent[n] = count++;

  // Fundamental node 0 is windowed node 0 and never a slave, so it keeps
  // index 0 and the same translation is pinned as in the fundamental model.
  auto remap = [&](int n) { return independent[w.master_of(n)]; };

  FrameModel model;
  model.node_count = count;
  model.volume = w.cell.determinant();
  model.radius = w.radius;
  for (const auto& el : w.elements) {
    model.elements.push_back(make_element(remap(el.a), remap(el.b), w.nodes[el.b] - w.nodes[el.a], w.radius, mat));
  }
  return model;
}

/// Element displacement offsets for each load case: end b gets eps * v.
Eigen::Matrix<double, 12, Eigen::Dynamic> element_offsets(const Vec3& v, const std::vector<Mat3>& strains) {
  Eigen::Matrix<double, 12, Eigen::Dynamic> g = Eigen::Matrix<double, 12, Eigen::Dynamic>::Zero(12, strains.size());
  for (std::size_t c = 0; c < strains.size(); ++c) g.block<3, 1>(6, c) = strains[c] * v;
  return g;
}

struct Solution {
  /// Per-case full DOF vectors (6 per node, pinned entries zero).
  Eigen::MatrixXd dofs;
  /// Energy bilinear form over the cases, not divided by volume.
  Eigen::MatrixXd energy_form;
  std::size_t dof_count = 0;
  double residual = 0.0;
};

Solution solve_cases(const FrameModel& model, const std::vector<Mat3>& strains) {
  const int full = 6 * model.node_count;
  // Node 0 translations are pinned; everything else is free.
  const int free_count = full - 3;
  auto free_index = [](int dof) { return dof - 3; };  // dofs 0..2 are pinned
  const auto cases = static_cast<Eigen::Index>(strains.size());

  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(free_count, free_count);
  Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(free_count, cases);

  for (const auto& el : model.elements) {
    std::array<int, 12> map{};
    for (int d = 0; d < 6; ++d) {
      map[d] = 6 * el.a + d;
      map[6 + d] = 6 * el.b + d;
    }
    const auto g = element_offsets(el.vector, strains);
    const Eigen::MatrixXd kg = el.k * g;
    for (int r = 0; r < 12; ++r) {
      if (map[r] < 3) continue;
      const int fr = free_index(map[r]);
      rhs.row(fr) -= kg.row(r);
      for (int c = 0; c < 12; ++c) {
        if (map[c] < 3) continue;
        k(fr, free_index(map[c])) += el.k(r, c);
      }
    }
  }

  Solution sol;
  sol.dof_count = static_cast<std::size_t>(free_count);
  Eigen::MatrixXd reduced = Eigen::MatrixXd::Zero(free_count, cases);
  if (free_count > 0) {
    Eigen::LDLT<Eigen::MatrixXd> ldlt(k);
    const double pivot_tol = 1e-12 * k.diagonal().cwiseAbs().maxCoeff();
    int nullity = 0;
    for (Eigen::Index n = 0; n < ldlt.vectorD().size(); ++n)
      if (!(std::abs(ldlt.vectorD()(n)) > pivot_tol)) ++nullity;
    if (ldlt.info() != Eigen::Success || nullity > 0) {
      std::ostringstream msg;
      msg << "singular cell stiffness: null-space dimension " << nullity << " after pinning node 0 (" << free_count
          << " free DOFs); the lattice is a mechanism";
      throw HomogenizationError(msg.str());
    }
    reduced = ldlt.solve(rhs);
    for (Eigen::Index c = 0; c < cases; ++c) {
      const double f = rhs.col(c).norm();
      if (f > 0.0) sol.residual = std::max(sol.residual, (k * reduced.col(c) - rhs.col(c)).norm() / f);
    }
  }

  sol.dofs = Eigen::MatrixXd::Zero(full, cases);
  sol.dofs.bottomRows(free_count) = reduced;

  sol.energy_form = Eigen::MatrixXd::Zero(cases, cases);
  for (const auto& el : model.elements) {
    Eigen::MatrixXd d(12, cases);
    d.topRows<6>() = sol.dofs.middleRows(6 * el.a, 6);
    d.bottomRows<6>() = sol.dofs.middleRows(6 * el.b, 6);
    d += element_offsets(el.vector, strains);
    sol.energy_form.noalias() += d.transpose() * el.k * d;
  }
  return sol;
}

std::vector<Mat3> mandel_unit_strains() {
  std::vector<Mat3> out;
  for (int a = 0; a < 6; ++a) {
    Vec6 e = Vec6::Zero();
    e(a) = 1.0;
    out.push_back(mandel_to_strain(e));
  }
  return out;
}

HomogenizationResult run(const Lattice& lat, const BeamMaterial& mat, bool windowed) {
  const auto start = std::chrono::steady_clock::now();
  mat.validate();
  require_connected(lat);
  require_density(lat);

  const FrameModel model = windowed ? windowed_model(lat, mat) : fundamental_model(lat, mat);
  const Solution sol = solve_cases(model, mandel_unit_strains());

  HomogenizationResult out;
  out.raw_mandel = sol.energy_form / model.volume;
  out.stiffness = from_mandel(MandelMatrix(0.5 * (out.raw_mandel + out.raw_mandel.transpose())));
  out.relative_density = relative_density(lat);
  out.dof_count = sol.dof_count;
  out.residual = sol.residual;
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

}  // namespace

void BeamMaterial::validate() const {
  if (!(std::isfinite(youngs_modulus) && youngs_modulus > 0.0))
    throw std::invalid_argument("Young's modulus must be positive");
  if (!(poisson_ratio > -1.0 && poisson_ratio < 0.5))
    throw std::invalid_argument("Poisson ratio must lie in (-1, 0.5)");
}

Mat12 beam_stiffness_local(double length, double radius, const BeamMaterial& mat) {
  if (!(std::isfinite(length) && length > 0.0)) throw std::invalid_argument("beam length must be positive");
  if (!(std::isfinite(radius) && radius > 0.0)) throw std::invalid_argument("beam radius must be positive");
  mat.validate();

  const double e = mat.youngs_modulus;
  const double g = mat.shear_modulus();
  const double area = std::numbers::pi * radius * radius;
  const double inertia = std::numbers::pi * std::pow(radius, 4) / 4.0;
  const double polar = 2.0 * inertia;
  const double l = length, l2 = l * l, l3 = l2 * l;

  Mat12 k = Mat12::Zero();
  auto set = [&k](int r, int c, double v) {
    k(r, c) = v;
    k(c, r) = v;
  };
  const double axial = e * area / l;
  set(0, 0, axial);
  set(6, 6, axial);
  set(0, 6, -axial);

  const double torsion = g * polar / l;
  set(3, 3, torsion);
  set(9, 9, torsion);
  set(3, 9, -torsion);

  const double b12 = 12.0 * e * inertia / l3;
  const double b6 = 6.0 * e * inertia / l2;
  const double b4 = 4.0 * e * inertia / l;
  const double b2 = 2.0 * e * inertia / l;

  // Bending in the local x-y plane (uy, rz).
  set(1, 1, b12);
  set(7, 7, b12);
  set(1, 7, -b12);
  set(1, 5, b6);
  set(1, 11, b6);
  set(5, 7, -b6);
  set(7, 11, -b6);
  set(5, 5, b4);
  set(11, 11, b4);
  set(5, 11, b2);

  // Bending in the local x-z plane (uz, ry).
  set(2, 2, b12);
  set(8, 8, b12);
  set(2, 8, -b12);
  set(2, 4, -b6);
  set(2, 10, -b6);
  set(4, 8, b6);
  set(8, 10, b6);
  set(4, 4, b4);
  set(10, 10, b4);
  set(4, 10, b2);
  return k;
}

Mat12 beam_stiffness(double length, double radius, const Vec3& axis, const BeamMaterial& mat) {
  if (!(std::abs(axis.norm() - 1.0) <= 1e-8)) {
    std::ostringstream msg;
    msg << "beam axis must be a unit vector (|axis| = " << axis.norm() << ")";
    throw std::invalid_argument(msg.str());
  }
  const Vec3 x = axis.normalized();
  // Circular section: any local y perpendicular to the axis gives the same
  // global matrix.
  const Vec3 helper = std::abs(x.z()) < 0.9 ? Vec3::UnitZ() : Vec3::UnitX();
  const Vec3 y = helper.cross(x).normalized();
  const Vec3 z = x.cross(y);
  Mat3 lambda;
  lambda.row(0) = x;
  lambda.row(1) = y;
  lambda.row(2) = z;

  Mat12 t = Mat12::Zero();
  for (int b = 0; b < 4; ++b) t.block<3, 3>(3 * b, 3 * b) = lambda;
  const Mat12 kg = t.transpose() * beam_stiffness_local(length, radius, mat) * t;
  return 0.5 * (kg + kg.transpose());
}

HomogenizationResult homogenize(const Lattice& lat, const BeamMaterial& mat) { return run(lat, mat, false); }

HomogenizationResult homogenize_windowed(const Lattice& lat, const BeamMaterial& mat) { return run(lat, mat, true); }

StrainResponse strain_response(const Lattice& lat, const BeamMaterial& mat, const Mat3& strain) {
  if (!((strain - strain.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, strain.cwiseAbs().maxCoeff())))
    throw std::invalid_argument("macroscopic strain must be symmetric");
  mat.validate();
  require_connected(lat);
  require_density(lat);
  const Solution sol = solve_cases(fundamental_model(lat, mat), {strain});
  return {sol.dofs.col(0), 0.5 * sol.energy_form(0, 0)};
}

std::vector<BatchItem> homogenize_batch(const std::vector<Lattice>& catalogue, const std::vector<double>& radii,
                                        const BeamMaterial& mat, unsigned threads) {
  std::vector<BatchItem> items;
  std::vector<const Lattice*> sources;
  for (const Lattice& lat : catalogue) {
    if (radii.empty()) {
      items.push_back({lat.name(), lat.radius(), std::nullopt, {}});
      sources.push_back(&lat);
    } else {
      for (double r : radii) {
        items.push_back({lat.name(), r, std::nullopt, {}});
        sources.push_back(&lat);
      }
    }
  }

  auto work = [&](std::size_t n) {
    try {
      items[n].result = homogenize(sources[n]->with_radius(items[n].radius), mat);
    } catch (const std::exception& ex) {
      items[n].error = "lattice '" + items[n].name + "': " + ex.what();
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(items.size())));
  if (workers <= 1) {
    for (std::size_t n = 0; n < items.size(); ++n) work(n);
    return items;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t n = next++; n < items.size(); n = next++) work(n);
    });
  }
  pool.clear();
  return items;
}

}  // namespace latmech
