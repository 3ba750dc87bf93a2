#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <string>

#include "infbern/errors.hpp"
#include "infbern/solutions.hpp"

namespace infbern {
namespace {

constexpr int kDirections = 16;
constexpr std::array<std::array<int, 2>, kDirections> kStencil{{{1, 0},
                                                                {0, 1},
                                                                {1, 1},
                                                                {1, -1},
                                                                {2, 1},
                                                                {1, 2},
                                                                {2, -1},
                                                                {1, -2},
                                                                {-1, 0},
                                                                {0, -1},
                                                                {-1, -1},
                                                                {-1, 1},
                                                                {-2, -1},
                                                                {-1, -2},
                                                                {-2, 1},
                                                                {-1, 2}}};

// Flattened stencil of every unknown: slot k*16+q references `values` (grid
// nodes first, then the boundary data at truncated arms) and the arm length.
struct Stencil {
  std::vector<std::uint32_t> unknowns;
  std::vector<std::uint32_t> neighbour;
  std::vector<double> arm;
};

Stencil build_stencil(const ConvexDomain& domain, const ConvexDomain& core, const GridField& f,
                      std::vector<double>& values) {
  const auto& g = f.grid;
  Stencil st;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (f.labels[k] == NodeLabel::Interior) st.unknowns.push_back(static_cast<std::uint32_t>(k));
  }
  st.neighbour.resize(st.unknowns.size() * kDirections);
  st.arm.resize(st.unknowns.size() * kDirections);
  const double min_arm = 1e-9 * g.h;
  for (std::size_t u = 0; u < st.unknowns.size(); ++u) {
    const std::size_t k = st.unknowns[u];
    const std::size_t i = k % g.nx;
    const std::size_t j = k / g.nx;
    const Vec2 x = g.node(i, j);
    for (int q = 0; q < kDirections; ++q) {
      const auto [a, b] = kStencil[static_cast<std::size_t>(q)];
      const double len = std::hypot(a, b);
      const Vec2 dir{a / len, b / len};
      const double full = g.h * len;
      double cross_at = std::numeric_limits<double>::infinity();
      double datum = 1.0;
      if (const auto out = line_chord(domain, x, dir)) cross_at = std::max(0.0, out->exit);
      if (const auto in = line_chord(core, x, dir); in && in->exit >= 0.0) {
        const double t = std::max(0.0, in->enter);
        if (t < cross_at) {
          cross_at = t;
          datum = 0.0;
        }
      }
      const std::size_t slot = u * kDirections + static_cast<std::size_t>(q);
      const auto ii = static_cast<std::ptrdiff_t>(i) + a;
      const auto jj = static_cast<std::ptrdiff_t>(j) + b;
      const bool on_grid = ii >= 0 && jj >= 0 && ii < static_cast<std::ptrdiff_t>(g.nx) &&
                           jj < static_cast<std::ptrdiff_t>(g.ny);
      std::size_t nk = 0;
      bool reached = cross_at >= full * (1.0 - 1e-9) && on_grid;
      if (reached) {
        nk = g.index(static_cast<std::size_t>(ii), static_cast<std::size_t>(jj));
        reached = f.labels[nk] != NodeLabel::Exterior;
      }
      if (reached) {
        st.neighbour[slot] = static_cast<std::uint32_t>(nk);
        st.arm[slot] = full;
      } else {
        st.neighbour[slot] = static_cast<std::uint32_t>(values.size());
        values.push_back(datum);
        st.arm[slot] = std::max(min_arm, std::min(cross_at, full));
      }
    }
  }
  return st;
}

// Maximizes (v[a] - v[b]) / (d[a] + d[b]) over pairs by Dinkelbach iteration
// on the separable parametric problem max_a (v[a] - s d[a]) - min_b (v[b] + s d[b]).
// `pair` carries the optimal pair of the previous sweep as a warm start, so a
// converged node costs one pass. Returns the interpolated value on the pair.
double pair_update(const double* v, const double* d, std::array<std::uint8_t, 2>& pair) {
  int hi = pair[0];
  int lo = pair[1];
  double s = (v[hi] - v[lo]) / (d[hi] + d[lo]);
  for (int it = 0; it < 64; ++it) {
    int h2 = 0;
    int l2 = 0;
    double top = v[0] - s * d[0];
    double bot = v[0] + s * d[0];
    for (int q = 1; q < kDirections; ++q) {
      const double up = v[q] - s * d[q];
      const double dn = v[q] + s * d[q];
      h2 = up > top ? q : h2;
      top = up > top ? up : top;
      l2 = dn < bot ? q : l2;
      bot = dn < bot ? dn : bot;
    }
    const double s2 = (v[h2] - v[l2]) / (d[h2] + d[l2]);
    if (!(s2 > s)) break;
    s = s2;
    hi = h2;
    lo = l2;
  }
  pair = {static_cast<std::uint8_t>(hi), static_cast<std::uint8_t>(lo)};
  return (d[lo] * v[hi] + d[hi] * v[lo]) / (d[hi] + d[lo]);
}

}  // namespace

GridField infinity_potential(const ConvexDomain& domain, double r, double h,
                             PotentialOptions opts, PotentialStats* stats) {
  if (!domain.is_planar()) throw UnsupportedDomain("infinity potential needs a planar domain");
  if (!(r > 0.0) || r >= domain.inradius()) throw DomainError("need 0 < r < inradius");
  if (!(h > 0.0)) throw DomainError("grid spacing must be > 0");
  if (r < 8.0 * h) throw DomainError("grid must resolve the ring with at least 8 cells");
  if (!(opts.tol > 0.0)) throw DomainError("tolerance must be > 0");

  GridField field = cone_solution(domain, r, h);
  const ConvexDomain core = inner_parallel_body(domain, r);
  std::vector<double> values = field.values;
  const Stencil st = build_stencil(domain, core, field, values);
  const std::size_t m = st.unknowns.size();
  // Opposite arms are a valid (if poor) first guess for the steepest pair.
  std::vector<std::array<std::uint8_t, 2>> pairs(m, {0, 8});
  std::array<double, kDirections> buf{};

  // Four raster orientations so that every sweep direction gets its turn.
  std::array<std::vector<std::uint32_t>, 4> orders;
  for (int o = 0; o < 4; ++o) {
    auto& ord = orders[static_cast<std::size_t>(o)];
    ord.resize(m);
    for (std::uint32_t u = 0; u < m; ++u) ord[u] = u;
    const bool flip_x = o == 1 || o == 2;
    const bool flip_y = o == 1 || o == 3;
    const auto nx = field.grid.nx;
    std::sort(ord.begin(), ord.end(), [&](std::uint32_t p, std::uint32_t q) {
      const auto ip = st.unknowns[p] % nx, jp = st.unknowns[p] / nx;
      const auto iq = st.unknowns[q] % nx, jq = st.unknowns[q] / nx;
      if (jp != jq) return flip_y ? jp > jq : jp < jq;
      return flip_x ? ip > iq : ip < iq;
    });
  }

  std::size_t sweep = 0;
  double change = std::numeric_limits<double>::infinity();
  while (change >= opts.tol) {
    if (sweep == opts.max_sweeps) {
      throw SolverDivergence("infinity potential did not converge in " +
                             std::to_string(opts.max_sweeps) + " sweeps (last update " +
                             std::to_string(change) + ")");
    }
    const auto& ord = orders[sweep % 4];
    change = 0.0;
    for (std::size_t n = 0; n < m; ++n) {
      const std::size_t u = ord[n];
      const std::size_t base = u * kDirections;
      for (int q = 0; q < kDirections; ++q) {
        buf[static_cast<std::size_t>(q)] = values[st.neighbour[base + static_cast<std::size_t>(q)]];
      }
      const double t = pair_update(buf.data(), &st.arm[base], pairs[u]);
      double& cur = values[st.unknowns[u]];
      change = std::max(change, std::abs(t - cur));
      cur = t;
    }
    ++sweep;
  }

  for (std::size_t u = 0; u < m; ++u) field.values[st.unknowns[u]] = values[st.unknowns[u]];
  if (stats) *stats = {sweep, change, m};
  return field;
}

}  // namespace infbern
