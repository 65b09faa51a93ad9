#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

namespace qcorr {

struct NelderMeadOptions {
  double initial_step = 0.05;
  double f_tolerance = 1e-12;  // stop when max f - min f over the simplex falls below
  double x_tolerance = 1e-10;  // ...and the simplex diameter falls below
  int max_iterations = 500;
};

template <std::size_t N>
struct NelderMeadResult {
  std::array<double, N> x{};
  double value = 0.0;
  int iterations = 0;
};

// Derivative-free minimization with the standard reflection/expansion/
// contraction/shrink coefficients (1, 2, 1/2, 1/2). Deterministic.
template <std::size_t N, typename F>
NelderMeadResult<N> nelder_mead(F&& f, const std::array<double, N>& start,
                                const NelderMeadOptions& opt = {}) {
  using Point = std::array<double, N>;
  std::array<Point, N + 1> pts;
  std::array<double, N + 1> val;
  pts[0] = start;
  for (std::size_t i = 0; i < N; ++i) {
    pts[i + 1] = start;
    pts[i + 1][i] += opt.initial_step;
  }
  for (std::size_t i = 0; i <= N; ++i) val[i] = f(pts[i]);

  const auto along = [](const Point& from, const Point& to, double t) {
    Point p;
    for (std::size_t k = 0; k < N; ++k) p[k] = from[k] + t * (to[k] - from[k]);
    return p;
  };

  int iter = 0;
  std::array<std::size_t, N + 1> idx;
  for (; iter < opt.max_iterations; ++iter) {
    for (std::size_t i = 0; i <= N; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(), [&](auto a, auto b) { return val[a] < val[b]; });
    const std::size_t best = idx[0], worst = idx[N], second = idx[N - 1];

    double diameter = 0.0;
    for (std::size_t i = 1; i <= N; ++i) {
      double d = 0.0;
      for (std::size_t k = 0; k < N; ++k) d = std::max(d, std::abs(pts[idx[i]][k] - pts[best][k]));
      diameter = std::max(diameter, d);
    }
    if (val[worst] - val[best] <= opt.f_tolerance && diameter <= opt.x_tolerance) break;

    Point centroid{};
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t k = 0; k < N; ++k) centroid[k] += pts[idx[i]][k] / static_cast<double>(N);

    const Point reflected = along(pts[worst], centroid, 2.0);
    const double fr = f(reflected);
    if (fr < val[best]) {
      const Point expanded = along(pts[worst], centroid, 3.0);
      const double fe = f(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        val[worst] = fe;
      } else {
        pts[worst] = reflected;
        val[worst] = fr;
      }
      continue;
    }
    if (fr < val[second]) {
      pts[worst] = reflected;
      val[worst] = fr;
      continue;
    }
    const bool outside = fr < val[worst];
    const Point contracted = outside ? along(pts[worst], centroid, 1.5)
                                     : along(pts[worst], centroid, 0.5);
    const double fc = f(contracted);
    if (fc < std::min(fr, val[worst])) {
      pts[worst] = contracted;
      val[worst] = fc;
      continue;
    }
    for (std::size_t i = 1; i <= N; ++i) {
      pts[idx[i]] = along(pts[best], pts[idx[i]], 0.5);
      val[idx[i]] = f(pts[idx[i]]);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= N; ++i)
    if (val[i] < val[best]) best = i;
  return {pts[best], val[best], iter};
}

}  // namespace qcorr
