#pragma once

// A handful of reference lattices in a unit cubic cell. Used by the tests, the
// acceptance suite and the shipped example catalogue.

#include <vector>

#include "latmech/lattice.hpp"

namespace latmech::catalogue {

/// Connect every pair of node images whose distance equals `length` within
/// 1e-9 (searching neighbour cells -1..1), one edge per strut.
std::vector<Edge> connect_at_distance(const Mat3& cell, const std::vector<Vec3>& nodes, double length);

/// One node at the cell centre, three struts along the axes.
Lattice simple_cubic(double radius = 0.05);
/// Simple cubic with an extra node at the midpoint of every strut.
Lattice simple_cubic_midpoints(double radius = 0.05);
/// Body-centred cubic: centre node joined to the eight corners.
Lattice bcc(double radius = 0.05);
/// Face-centred cubic nearest-neighbour network (octet truss).
Lattice octet(double radius = 0.05);
/// Simple cubic edges plus the body-centre diagonals.
Lattice sc_bcc(double radius = 0.05);
/// Diamond cubic nearest-neighbour network.
Lattice diamond(double radius = 0.03);
/// Body-centred lattice in a sheared, stretched triclinic cell.
Lattice triclinic_bcc(double radius = 0.04);

/// The lattices above, in declaration order.
std::vector<Lattice> reference_set();

}  // namespace latmech::catalogue
