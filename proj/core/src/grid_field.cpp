#include "infbern/grid_field.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "infbern/csv.hpp"
#include "infbern/errors.hpp"

namespace infbern {
namespace {

// Half of the symmetric 16-direction lattice stencil; the other half is the negation.
constexpr std::array<std::array<int, 2>, 8> kHalfStencil{
    {{1, 0}, {0, 1}, {1, 1}, {1, -1}, {2, 1}, {1, 2}, {2, -1}, {1, -2}}};

}  // namespace

GridGeometry GridGeometry::covering(const std::array<double, 4>& bbox, double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("grid spacing must be > 0");
  GridGeometry g;
  g.h = h;
  g.x0 = bbox[0];
  g.y0 = bbox[1];
  // A relative slack keeps exact multiples (1/h integral) from gaining a node.
  auto count = [h](double extent) {
    return static_cast<std::size_t>(std::ceil(extent / h - 1e-9)) + 1;
  };
  g.nx = count(bbox[2] - bbox[0]);
  g.ny = count(bbox[3] - bbox[1]);
  if (g.nx * g.ny > 100'000'000) throw DomainError("grid too fine");
  return g;
}

std::size_t RegionMask::count() const {
  return static_cast<std::size_t>(std::count(member.begin(), member.end(), std::uint8_t{1}));
}

std::vector<NodeLabel> label_nodes(const ConvexDomain& domain, double r, const GridGeometry& grid) {
  const auto box = grid.bbox();
  const double tol = 1e-12 * std::max(box[2] - box[0], box[3] - box[1]);
  std::vector<NodeLabel> labels(grid.size(), NodeLabel::Exterior);
  for (std::size_t j = 0; j < grid.ny; ++j) {
    for (std::size_t i = 0; i < grid.nx; ++i) {
      const Vec2 x = grid.node(i, j);
      NodeLabel& l = labels[grid.index(i, j)];
      if (distance_to_closure(domain, x) > tol) {
        l = NodeLabel::Exterior;
        continue;
      }
      const double d = distance_to_boundary(domain, x);
      if (d <= tol) {
        l = NodeLabel::OuterBoundary;
      } else if (d >= r - tol) {
        l = NodeLabel::Core;
      } else {
        l = NodeLabel::Interior;
      }
    }
  }
  return labels;
}

double discrete_lipschitz(const GridField& field) {
  const auto& g = field.grid;
  double best = 0.0;
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      if (field.label(i, j) == NodeLabel::Exterior) continue;
      const double u = field.value(i, j);
      for (const auto& [a, b] : kHalfStencil) {
        const auto ii = static_cast<std::ptrdiff_t>(i) + a;
        const auto jj = static_cast<std::ptrdiff_t>(j) + b;
        if (ii < 0 || jj < 0 || ii >= static_cast<std::ptrdiff_t>(g.nx) ||
            jj >= static_cast<std::ptrdiff_t>(g.ny)) {
          continue;
        }
        const auto iu = static_cast<std::size_t>(ii);
        const auto ju = static_cast<std::size_t>(jj);
        if (field.label(iu, ju) == NodeLabel::Exterior) continue;
        const double len = g.h * std::hypot(a, b);
        best = std::max(best, std::abs(field.value(iu, ju) - u) / len);
      }
    }
  }
  return best;
}

double positive_area(const GridField& field, double threshold) {
  std::size_t n = 0;
  for (std::size_t k = 0; k < field.values.size(); ++k) {
    if (field.labels[k] != NodeLabel::Exterior && field.values[k] > threshold) ++n;
  }
  return static_cast<double>(n) * field.grid.h * field.grid.h;
}

void write_grid_csv(const GridField& field, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  const auto& g = field.grid;
  for (std::size_t j = 0; j < g.ny; ++j) {
    for (std::size_t i = 0; i < g.nx; ++i) {
      if (i != 0) out << ',';
      out << format_number(field.value(i, j));
    }
    out << '\n';
  }
  std::ofstream hdr(path.string() + ".hdr");
  if (!hdr) throw Error("cannot open " + path.string() + ".hdr for writing");
  const auto box = g.bbox();
  hdr << "h=" << format_number(g.h) << " bbox=" << format_number(box[0]) << ','
      << format_number(box[1]) << ',' << format_number(box[2]) << ',' << format_number(box[3])
      << '\n';
}

}  // namespace infbern
