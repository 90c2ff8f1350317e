#ifndef FRACSOLVE_QUADRATURE_HPP
#define FRACSOLVE_QUADRATURE_HPP

// Gauss-Legendre rules plus a bisection-based adaptive integrator.
// A panel is accepted when its Gauss value agrees with the sum over the two
// half-panels within the local budget; otherwise it is split.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace fracsolve {

struct GaussRule {
  std::vector<double> nodes;    // on [-1, 1], ascending
  std::vector<double> weights;
};

inline GaussRule make_gauss_rule(int order) {
  GaussRule r;
  r.nodes.resize(order);
  r.weights.resize(order);
  const int m = (order + 1) / 2;
  for (int i = 1; i <= m; ++i) {
    double z = std::cos(M_PI * (i - 0.25) / (order + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p1 = 1.0, p2 = 0.0;
      for (int j = 0; j < order; ++j) {
        double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j + 1.0) * z * p2 - j * p3) / (j + 1.0);
      }
      pp = order * (z * p1 - p2) / (z * z - 1.0);
      double dz = p1 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    r.nodes[i - 1] = -z;
    r.nodes[order - i] = z;
    r.weights[i - 1] = 2.0 / ((1.0 - z * z) * pp * pp);
    r.weights[order - i] = r.weights[i - 1];
  }
  return r;
}

inline const GaussRule& gauss_rule(int order) {
  constexpr int kMaxOrder = 64;
  if (order < 1 || order > kMaxOrder)
    throw std::invalid_argument("gauss_rule: order out of range");
  static const std::array<GaussRule, kMaxOrder + 1> cache = [] {
    std::array<GaussRule, kMaxOrder + 1> t;
    for (int n = 1; n <= kMaxOrder; ++n) t[n] = make_gauss_rule(n);
    return t;
  }();
  return cache[order];
}

template <class F>
double integrate_gauss(F&& f, double a, double b, int order) {
  const GaussRule& r = gauss_rule(order);
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double s = 0.0;
  for (int i = 0; i < order; ++i) s += r.weights[i] * f(c + h * r.nodes[i]);
  return h * s;
}

namespace detail {

template <class F>
double adapt_panel(F& f, double a, double b, double whole, double tol,
                   int depth, int order) {
  const double mid = 0.5 * (a + b);
  const double left = integrate_gauss(f, a, mid, order);
  const double right = integrate_gauss(f, mid, b, order);
  const double sum = left + right;
  if (std::abs(sum - whole) <= tol) return sum;
  if (depth <= 0)
    throw std::runtime_error("adaptive quadrature did not converge");
  return adapt_panel(f, a, mid, left, 0.5 * tol, depth - 1, order) +
         adapt_panel(f, mid, b, right, 0.5 * tol, depth - 1, order);
}

}  // namespace detail

// Absolute-tolerance adaptive integration of a bounded integrand.
template <class F>
double adaptive_integrate(F&& f, double a, double b, double tol,
                          int max_depth = 48, int order = 7) {
  if (!(b > a)) return 0.0;
  return detail::adapt_panel(f, a, b, integrate_gauss(f, a, b, order), tol,
                             max_depth, order);
}

// Same, with interior breakpoints (peaks, mild kinks) made explicit.
template <class F>
double adaptive_integrate_split(F&& f, std::vector<double> pts, double tol) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 2) throw std::invalid_argument("adaptive_integrate_split: need an interval");
  double total = 0.0;
  const double local = tol / static_cast<double>(pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    total += adaptive_integrate(f, pts[i], pts[i + 1], local);
  return total;
}

}  // namespace fracsolve

#endif  // FRACSOLVE_QUADRATURE_HPP
