#pragma once

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ebdetect/direction.hpp"

namespace ebdetect {

namespace detail {

/// P_n(x) and P_n'(x) via the three-term recurrence.
inline std::pair<double, double> legendre(int n, double x) {
  double p_prev = 1.0, p = x;
  for (int k = 2; k <= n; ++k) {
    const double p_next = ((2 * k - 1) * x * p - (k - 1) * p_prev) / k;
    p_prev = p;
    p = p_next;
  }
  const double dp = n * (x * p - p_prev) / (x * x - 1.0);
  return {p, dp};
}

}  // namespace detail

struct GaussNode {
  double x;
  double weight;
};

/// n-point Gauss-Legendre rule on (-1, 1); nodes ascending, weights sum to 2.
inline std::vector<GaussNode> gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
  std::vector<GaussNode> nodes(n);
  for (int i = 0; i < n; ++i) {
    // Newton from the Chebyshev-like initial guess; converges in a few steps.
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      const auto [p, d] = detail::legendre(n, x);
      dp = d;
      const double dx = p / d;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    const auto [p_final, d_final] = detail::legendre(n, x);
    dp = d_final;
    nodes[i] = {x, 2.0 / ((1.0 - x * x) * dp * dp)};
  }
  std::sort(nodes.begin(), nodes.end(), [](const GaussNode& a, const GaussNode& b) { return a.x < b.x; });
  return nodes;
}

/// Quadrature over the unit sphere: Gauss-Legendre in cos(theta), uniform in phi.
/// Weights are in steradians and sum to 4pi.
struct SphereGrid {
  enum class Scheme { product_gauss };

  struct Node {
    Direction dir;
    double weight;
  };

  Scheme scheme = Scheme::product_gauss;
  int n_theta = 0;
  int n_phi = 0;
  std::vector<Node> nodes;

  static const char* scheme_name(Scheme s) {
    switch (s) {
      case Scheme::product_gauss: return "product-gauss";
    }
    return "unknown";
  }
};

inline SphereGrid build_sphere_grid(int n_theta, int n_phi) {
  if (n_theta < 2) throw std::invalid_argument("build_sphere_grid: n_theta must be >= 2");
  if (n_phi < 4) throw std::invalid_argument("build_sphere_grid: n_phi must be >= 4");

  SphereGrid grid;
  grid.n_theta = n_theta;
  grid.n_phi = n_phi;
  grid.nodes.reserve(static_cast<std::size_t>(n_theta) * n_phi);

  const auto gl = gauss_legendre(n_theta);
  const double phi_weight = two_pi / n_phi;
  // Nodes ascending in x = cos(theta) give theta descending; emit theta ascending.
  for (int i = n_theta - 1; i >= 0; --i) {
    const double theta = std::acos(gl[i].x);
    for (int j = 0; j < n_phi; ++j) {
      grid.nodes.push_back({{theta, two_pi * j / n_phi}, gl[i].weight * phi_weight});
    }
  }
  return grid;
}

/// Integral of f(direction) over the sphere.
template <typename F>
double integrate_sphere(const SphereGrid& grid, F&& f) {
  double total = 0.0;
  for (const auto& node : grid.nodes) total += node.weight * f(node.dir);
  return total;
}

}  // namespace ebdetect
