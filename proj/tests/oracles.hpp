#ifndef FRACSOLVE_TEST_ORACLES_HPP
#define FRACSOLVE_TEST_ORACLES_HPP

// Independent reference routines for the test suite. Nothing here shares code
// with the library implementation: gamma values come from libm (lgammal,
// tgamma, erfc), integrals from adaptive Simpson rather than the library's
// adaptive Gauss, and CQ weights from the reflection formula instead of the
// product recursion.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace oracle {

// Adaptive Simpson with a flat (non-halved) per-panel tolerance. The flat
// tolerance trades a guaranteed global bound for termination on integrands
// with integrable endpoint cusps, which is what the stiffness oracle needs.
inline double simpson_rec(const std::function<double(double)>& f, double a,
                          double b, double fa, double fm, double fb,
                          double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double s2 = left + right;
  if (depth <= 0 || std::abs(s2 - whole) <= 15.0 * tol)
    return s2 + (s2 - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, tol, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol, depth - 1);
}

inline double adaptive_simpson(const std::function<double(double)>& f,
                               double a, double b, double tol,
                               int max_depth = 44) {
  if (a == b) return 0.0;
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, max_depth);
}

// CQ weight reference: omega_j = tau^(-alpha) * (-1)^j * binom(alpha, j),
// evaluated through Gamma reflection,
//   (-1)^j binom(alpha,j) = Gamma(j-alpha) * (-sin(pi alpha) Gamma(1+alpha)/pi)
//                           / Gamma(j+1),
// in long double via lgammal. Integer alpha has terminating weights.
inline double cq_weight_oracle(double alpha, double tau, int j) {
  const long double PI = 3.141592653589793238462643383279502884L;
  const long double a = alpha;
  const long double t_pow = powl(static_cast<long double>(tau), -a);
  if (j == 0) return static_cast<double>(t_pow);
  if (j == 1) return static_cast<double>(-a * t_pow);
  if (alpha == 1.0 || alpha == 2.0) {
    if (alpha == 2.0 && j == 2) return static_cast<double>(t_pow);
    return 0.0;
  }
  const long double lg = lgammal(static_cast<long double>(j) - a) +
                         lgammal(1.0L + a) -
                         lgammal(static_cast<long double>(j) + 1.0L);
  const long double mag = expl(lg) * fabsl(sinl(PI * a)) / PI;
  const long double sign = (alpha < 1.0) ? -1.0L : 1.0L;
  return static_cast<double>(sign * mag * t_pow);
}

// Double-quadrature reference for the fractional stiffness entries,
//   K_pq = C(1,s)/2 * [ II + 2*T ],
//   II   = int_O int_O (phi_p(x)-phi_p(y))(phi_q(x)-phi_q(y)) |x-y|^(-1-2s),
//   T    = int_O phi_p phi_q * ((b-x)^(-2s) + (x-a)^(-2s))/(2s),
// where the tail T collects the exterior strips (basis functions vanish on
// the complement). p, q are node indices in 1..m-1 on the uniform mesh.
// The inner y-integral is done element by element; on the element containing
// x both hat differences are exactly linear, so that piece has the closed
// form  slope_p*slope_q * [ (x-xl)^(2-2s) + (xr-x)^(2-2s) ] / (2-2s),
// which removes the |x-y| singularity from the numerical part entirely.
struct StiffnessOracle {
  int m;
  double s;
  double a = -1.0, b = 1.0;
  double h;

  StiffnessOracle(int m_, double s_) : m(m_), s(s_), h((b - a) / m_) {}

  double node(int i) const { return a + h * i; }
  double hat(int p, double x) const {
    const double d = std::abs(x - node(p));
    return d >= h ? 0.0 : 1.0 - d / h;
  }
  double slope(int p, int e) const {
    if (e == p - 1) return 1.0 / h;
    if (e == p) return -1.0 / h;
    return 0.0;
  }

  double inner(double x, int p, int q, double tol) const {
    double sum = 0.0;
    for (int e = 0; e < m; ++e) {
      const double xl = node(e), xr = node(e + 1);
      if (x >= xl && x <= xr) {
        const double dp = slope(p, e), dq = slope(q, e);
        if (dp != 0.0 && dq != 0.0)
          sum += dp * dq *
                 (std::pow(x - xl, 2.0 - 2.0 * s) +
                  std::pow(xr - x, 2.0 - 2.0 * s)) /
                 (2.0 - 2.0 * s);
      } else {
        auto f = [&](double y) {
          return (hat(p, x) - hat(p, y)) * (hat(q, x) - hat(q, y)) *
                 std::pow(std::abs(x - y), -1.0 - 2.0 * s);
        };
        sum += adaptive_simpson(f, xl, xr, tol);
      }
    }
    return sum;
  }

  double entry(int p, int q) const {
    const double tol_in = 1e-12, tol_out = 1e-11;
    double plane = 0.0;
    for (int e = 0; e < m; ++e) {
      auto g = [&](double x) { return inner(x, p, q, tol_in); };
      plane += adaptive_simpson(g, node(e), node(e + 1), tol_out);
    }
    double tail = 0.0;
    for (int e = 0; e < m; ++e) {
      const bool in_p = (e == p - 1 || e == p);
      const bool in_q = (e == q - 1 || e == q);
      if (!in_p || !in_q) continue;
      auto f = [&](double x) {
        if (x <= a || x >= b) return 0.0;
        const double w =
            (std::pow(b - x, -2.0 * s) + std::pow(x - a, -2.0 * s)) /
            (2.0 * s);
        return hat(p, x) * hat(q, x) * w;
      };
      tail += adaptive_simpson(f, node(e), node(e + 1), 1e-13);
    }
    const double c = std::pow(2.0, 2.0 * s) * s * std::tgamma(s + 0.5) /
                     (std::sqrt(M_PI) * std::tgamma(1.0 - s));
    return 0.5 * c * (plane + 2.0 * tail);
  }
};

// Caputo derivative of sin via the defining integral, desingularized by the
// substitution u = (t-r)^(ceil(alpha)-alpha); libm gamma, Simpson quadrature.
inline double caputo_sin_oracle(double alpha, double t) {
  if (alpha == 1.0) return std::cos(t);
  if (alpha < 1.0) {
    const double q = 1.0 - alpha;
    auto f = [=](double u) { return std::cos(t - std::pow(u, 1.0 / q)); };
    return adaptive_simpson(f, 0.0, std::pow(t, q), 1e-12) /
           (std::tgamma(1.0 - alpha) * q);
  }
  const double q = 2.0 - alpha;
  auto f = [=](double u) { return -std::sin(t - std::pow(u, 1.0 / q)); };
  return adaptive_simpson(f, 0.0, std::pow(t, q), 1e-12) /
         (std::tgamma(2.0 - alpha) * q);
}

}  // namespace oracle

#endif
