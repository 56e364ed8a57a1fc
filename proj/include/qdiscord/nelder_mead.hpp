#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <numeric>

namespace qdiscord {

struct SimplexOptions {
  double initial_step = 0.25;
  /// Converged when max f - min f over the simplex is at most this.
  double f_tolerance = 1e-13;
  int max_iterations = 10000;
};

template <std::size_t D>
struct SimplexResult {
  std::array<double, D> x{};
  double value = 0.0;
  int iterations = 0;
  long evaluations = 0;
  bool converged = false;
};

/// Derivative-free Nelder-Mead minimization with the standard coefficients
/// (reflection 1, expansion 2, contraction 1/2, shrink 1/2). Deterministic.
template <std::size_t D, class F>
SimplexResult<D> nelder_mead(F&& f, const std::array<double, D>& start, const SimplexOptions& opts = {}) {
  using Point = std::array<double, D>;
  std::array<Point, D + 1> pts{};
  std::array<double, D + 1> vals{};
  SimplexResult<D> res;

  auto eval = [&](const Point& p) {
    ++res.evaluations;
    return f(p);
  };

  pts[0] = start;
  for (std::size_t i = 0; i < D; ++i) {
    pts[i + 1] = start;
    pts[i + 1][i] += opts.initial_step;
  }
  for (std::size_t i = 0; i <= D; ++i) vals[i] = eval(pts[i]);

  std::array<std::size_t, D + 1> order{};
  auto sort_simplex = [&] {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return vals[a] < vals[b]; });
    std::array<Point, D + 1> p2;
    std::array<double, D + 1> v2;
    for (std::size_t i = 0; i <= D; ++i) {
      p2[i] = pts[order[i]];
      v2[i] = vals[order[i]];
    }
    pts = p2;
    vals = v2;
  };

  auto combine = [](const Point& a, const Point& b, double t) {
    Point r;
    for (std::size_t i = 0; i < D; ++i) r[i] = a[i] + t * (b[i] - a[i]);
    return r;
  };

  sort_simplex();
  for (res.iterations = 0; res.iterations < opts.max_iterations; ++res.iterations) {
    if (vals[D] - vals[0] <= opts.f_tolerance) {
      res.converged = true;
      break;
    }
    Point centroid{};
    for (std::size_t i = 0; i < D; ++i)
      for (std::size_t k = 0; k < D; ++k) centroid[k] += pts[i][k] / static_cast<double>(D);

    const Point xr = combine(centroid, pts[D], -1.0);
    const double fr = eval(xr);
    if (fr < vals[0]) {
      const Point xe = combine(centroid, pts[D], -2.0);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[D] = xe;
        vals[D] = fe;
      } else {
        pts[D] = xr;
        vals[D] = fr;
      }
    } else if (fr < vals[D - 1]) {
      pts[D] = xr;
      vals[D] = fr;
    } else {
      const bool outside = fr < vals[D];
      const Point xc = outside ? combine(centroid, xr, 0.5) : combine(centroid, pts[D], 0.5);
      const double fc = eval(xc);
      if (fc < (outside ? fr : vals[D])) {
        pts[D] = xc;
        vals[D] = fc;
      } else {
        for (std::size_t i = 1; i <= D; ++i) {
          pts[i] = combine(pts[0], pts[i], 0.5);
          vals[i] = eval(pts[i]);
        }
      }
    }
    sort_simplex();
  }
  res.x = pts[0];
  res.value = vals[0];
  return res;
}

}  // namespace qdiscord
