#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "infbern/errors.hpp"

namespace infbern::numerics {

struct BisectOptions {
  double rel_tol = 1e-12;
  int max_iter = 200;
};

/// Root of f on [lo, hi] given f(lo) and f(hi) of opposite sign (or zero).
/// Throws NoRootError when the bracket carries no sign change.
template <class F>
double bisect(F&& f, double lo, double hi, BisectOptions opts = {}) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo < 0.0) == (fhi < 0.0)) throw NoRootError("bisection bracket has no sign change");
  for (int it = 0; it < opts.max_iter; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
    if (hi - lo <= opts.rel_tol * std::max(std::abs(lo), std::abs(hi))) break;
  }
  return 0.5 * (lo + hi);
}

struct Extremum {
  double arg = 0.0;
  double value = 0.0;
};

/// Maximum of f over a uniform grid on [lo, hi], zoomed `refinements` times
/// onto the bracket around the best node.
template <class F>
Extremum grid_maximize(F&& f, double lo, double hi, std::size_t points, int refinements) {
  Extremum best{lo, f(lo)};
  for (int level = 0; level <= refinements; ++level) {
    const double step = (hi - lo) / static_cast<double>(points - 1);
    std::size_t arg = 0;
    best = {lo, f(lo)};
    for (std::size_t i = 1; i < points; ++i) {
      const double x = i + 1 == points ? hi : lo + step * static_cast<double>(i);
      const double v = f(x);
      if (v > best.value) {
        best = {x, v};
        arg = i;
      }
    }
    const double new_lo = lo + step * static_cast<double>(arg == 0 ? 0 : arg - 1);
    const double new_hi = arg + 1 >= points ? hi : lo + step * static_cast<double>(arg + 1);
    lo = new_lo;
    hi = new_hi;
  }
  return best;
}

/// Golden-section minimum of a unimodal f on [lo, hi].
template <class F>
Extremum golden_minimize(F&& f, double lo, double hi, double abs_tol, int max_iter = 200) {
  constexpr double kInvPhi = 0.6180339887498948482;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iter && (b - a) > abs_tol; ++it) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
    }
  }
  return fc <= fd ? Extremum{c, fc} : Extremum{d, fd};
}

/// Scan on `points` uniform nodes, then golden-section refine around the best node.
template <class F>
Extremum scan_then_golden_minimize(F&& f, double lo, double hi, std::size_t points,
                                   double abs_tol) {
  const double step = (hi - lo) / static_cast<double>(points - 1);
  std::size_t arg = 0;
  double best = f(lo);
  for (std::size_t i = 1; i < points; ++i) {
    const double x = i + 1 == points ? hi : lo + step * static_cast<double>(i);
    const double v = f(x);
    if (v < best) {
      best = v;
      arg = i;
    }
  }
  const double a = arg == 0 ? lo : lo + step * static_cast<double>(arg - 1);
  const double b = arg + 1 >= points ? hi : lo + step * static_cast<double>(arg + 1);
  const double x0 = arg + 1 == points ? hi : lo + step * static_cast<double>(arg);
  auto refined = golden_minimize(f, a, b, abs_tol);
  if (refined.value <= best) return refined;
  return {x0, best};
}

/// Gauss-Legendre nodes and weights on [-1, 1].
struct QuadratureRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

QuadratureRule gauss_legendre(std::size_t order);

/// log(sum exp(terms)), finite for any finite input.
double log_sum_exp(std::span<const double> terms);

}  // namespace infbern::numerics
