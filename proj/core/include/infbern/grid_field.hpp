#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "infbern/geometry.hpp"

namespace infbern {

/// Uniform node lattice x0 + i*h, y0 + j*h covering a bounding box.
struct GridGeometry {
  double h = 0.0;
  double x0 = 0.0;
  double y0 = 0.0;
  std::size_t nx = 0;
  std::size_t ny = 0;

  /// Smallest lattice anchored at the lower-left corner that covers `bbox`.
  static GridGeometry covering(const std::array<double, 4>& bbox, double h);

  std::size_t size() const { return nx * ny; }
  std::size_t index(std::size_t i, std::size_t j) const { return j * nx + i; }
  Vec2 node(std::size_t i, std::size_t j) const {
    return {x0 + h * static_cast<double>(i), y0 + h * static_cast<double>(j)};
  }
  std::array<double, 4> bbox() const {
    return {x0, y0, x0 + h * static_cast<double>(nx - 1), y0 + h * static_cast<double>(ny - 1)};
  }
};

/// Node classes relative to the ring D_r = Omega minus the closed core.
enum class NodeLabel : std::uint8_t { Exterior, OuterBoundary, Core, Interior };

/// Scalar field on a grid. Exterior nodes hold NaN.
struct GridField {
  GridGeometry grid;
  std::vector<double> values;
  std::vector<NodeLabel> labels;

  double value(std::size_t i, std::size_t j) const { return values[grid.index(i, j)]; }
  NodeLabel label(std::size_t i, std::size_t j) const { return labels[grid.index(i, j)]; }
};

struct RegionMask {
  GridGeometry grid;
  std::vector<std::uint8_t> member;

  bool contains(std::size_t i, std::size_t j) const { return member[grid.index(i, j)] != 0; }
  std::size_t count() const;
};

/// Labels every node of `grid` against the closed domain and the closed core
/// of radius r. Boundary detection uses a tolerance of 1e-12 times the grid
/// extent.
std::vector<NodeLabel> label_nodes(const ConvexDomain& domain, double r, const GridGeometry& grid);

/// Largest |u(x) - u(y)| / |x - y| over lattice neighbours (16 directions) of
/// non-exterior nodes.
double discrete_lipschitz(const GridField& field);

/// Area of {u > threshold} counted as h^2 per node.
double positive_area(const GridField& field, double threshold = 0.0);

/// Row-major CSV (one grid row y = const per line, NaN for exterior nodes)
/// and a sidecar `<path>.hdr` holding "h=<spacing> bbox=<x0,y0,x1,y1>".
void write_grid_csv(const GridField& field, const std::filesystem::path& path);

}  // namespace infbern
