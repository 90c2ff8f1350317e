#ifndef FRACSOLVE_SPECFUN_HPP
#define FRACSOLVE_SPECFUN_HPP

// Special functions used by the representation formulas and the manufactured
// solutions: Gamma, two-parameter Mittag-Leffler, Gegenbauer and Jacobi
// polynomials, and Caputo derivatives of power/sine time profiles.

#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

#include "fracsolve/quadrature.hpp"

namespace fracsolve {

// sin(pi x) / cos(pi x) with exact reduction of the integer part.
inline double sinpi(double x) {
  double r = std::fmod(x, 2.0);
  if (r > 1.0) r -= 2.0;
  else if (r < -1.0) r += 2.0;
  if (r > 0.5) r = 1.0 - r;
  else if (r < -0.5) r = -1.0 - r;
  return std::sin(M_PI * r);
}

inline double cospi(double x) {
  double r = std::fmod(std::abs(x), 2.0);
  if (r > 1.0) r = 2.0 - r;
  // cos(pi r) on [0,1]; reflect to [0,1/2] where the argument is small
  return r > 0.5 ? -std::sin(M_PI * (r - 0.5)) : std::cos(M_PI * r);
}

namespace detail {

// Lanczos approximation, g = 607/128, 15 terms (Godfrey coefficients).
inline double lanczos_sum(double x) {
  static const double c[15] = {
      0.99999999999999709182,     57.156235665862923517,
      -59.597960355475491248,     14.136097974741747174,
      -0.49191381609762019978,    0.33994649984811888699e-4,
      0.46523628927048575665e-4,  -0.98374475304879564677e-4,
      0.15808870322491248884e-3,  -0.21026444172410488319e-3,
      0.21743961811521264320e-3,  -0.16431810653676389022e-3,
      0.84418223983852743293e-4,  -0.26190838401581408670e-4,
      0.36899182659531622704e-5};
  double s = c[0];
  for (int i = 1; i < 15; ++i) s += c[i] / (x - 1.0 + i);
  return s;
}

constexpr double kLanczosG = 4.7421875;  // 607/128

}  // namespace detail

// Euler Gamma. Throws on the poles at non-positive integers.
inline double gamma_fn(double x) {
  if (x <= 0.0 && x == std::floor(x))
    throw std::domain_error("gamma_fn: pole at non-positive integer");
  if (x < 0.5) return M_PI / (sinpi(x) * gamma_fn(1.0 - x));
  const double t = x + detail::kLanczosG - 0.5;
  return std::sqrt(2.0 * M_PI) * std::pow(t, x - 0.5) * std::exp(-t) *
         detail::lanczos_sum(x);
}

// log Gamma for x > 0 (same Lanczos data, no overflow for large x).
inline double log_gamma(double x) {
  if (x <= 0.0) throw std::domain_error("log_gamma: requires x > 0");
  if (x < 0.5)
    return std::log(M_PI / sinpi(x)) - log_gamma(1.0 - x);
  const double t = x + detail::kLanczosG - 0.5;
  return (x - 0.5) * std::log(t) - t +
         std::log(std::sqrt(2.0 * M_PI) * detail::lanczos_sum(x));
}

// 1/Gamma as an entire function: zero at the poles of Gamma.
inline double rgamma(double x) {
  if (x > 0.5) {
    if (x > 170.0) return std::exp(-log_gamma(x));
    return 1.0 / gamma_fn(x);
  }
  if (x <= 0.0 && x == std::floor(x)) return 0.0;
  return sinpi(x) * gamma_fn(1.0 - x) / M_PI;
}

struct MLParams {
  double alpha;  // order, in (0, 2]
  double mu;     // second parameter
};

namespace detail {

// Power series sum_k z^k / Gamma(alpha k + mu). Only called where the largest
// term cannot swamp the result (see series cap in mittag_leffler).
inline double ml_series(double alpha, double mu, double z) {
  double sum = rgamma(mu);
  double zk = 1.0;
  double prev = std::numeric_limits<double>::max();
  for (int k = 1; k <= 100000; ++k) {
    zk *= z;
    const double term = zk * rgamma(alpha * k + mu);
    sum += term;
    if (!std::isfinite(sum)) return sum;  // genuine overflow for large z > 0
    const double mag = std::abs(term);
    if (mag < 1e-17 * std::abs(sum) + 1e-300 && prev < 1e-16 * std::abs(sum) + 1e-300)
      return sum;
    prev = mag;
  }
  throw std::runtime_error("mittag_leffler: series did not converge");
}

// Residue pair of the inversion contour for alpha > 1 (decaying oscillation).
inline double ml_osc(double alpha, double mu, double x) {
  const double r = std::pow(x, 1.0 / alpha);
  const double ang = M_PI / alpha;
  return (2.0 / alpha) * std::pow(x, (1.0 - mu) / alpha) *
         std::exp(r * std::cos(ang)) *
         std::cos(r * std::sin(ang) + M_PI * (1.0 - mu) / alpha);
}

// Branch-cut integral of E_{alpha,mu}(-x) for x > 0, mu <= 1:
//   (1/pi) Int_0^inf e^{-r} r^{alpha-mu} (r^alpha sin(pi mu) - x sin(pi(alpha-mu)))
//                    / (r^{2 alpha} + 2 x r^alpha cos(pi alpha) + x^2) dr,
// evaluated after the substitution r = v^{1/alpha}, which turns the weight
// into v^{(1-mu)/alpha} dv / alpha and the denominator into a quadratic in v.
inline double ml_branchcut(double alpha, double mu, double x) {
  const double spm = sinpi(mu);
  const double spam = sinpi(alpha - mu);
  const double cpa = cospi(alpha);
  const double q = (1.0 - mu) / alpha;
  auto g = [=](double v) {
    const double num = (q == 0.0 ? 1.0 : std::pow(v, q)) * (v * spm - x * spam);
    const double den = v * v + 2.0 * x * v * cpa + x * x;
    return std::exp(-std::pow(v, 1.0 / alpha)) * num / den;
  };
  const double V = std::pow(45.0, alpha);
  std::vector<double> pts{V};
  for (double p : {0.25 * x, 0.5 * x, x, 2.0 * x, 4.0 * x, 1.0})
    if (p > 0.0 && p < V) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  // The v^q and v^{1/alpha} kinks at v = 0 decay too slowly under panel
  // halving for the tolerance-halving recursion, so the head panel gets a
  // power substitution v = w^m making the integrand C^3 at the endpoint.
  const int m =
      static_cast<int>(std::ceil(std::max(4.0 / (1.0 + q), 3.0 * alpha)));
  auto gh = [=](double w) {
    return g(std::pow(w, m)) * m * std::pow(w, m - 1);
  };
  const double tol = 1e-13 / pts.size();
  double I = adaptive_integrate(gh, 0.0, std::pow(pts.front(), 1.0 / m), tol);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    I += adaptive_integrate(g, pts[i], pts[i + 1], tol);
  return I / (alpha * M_PI);
}

inline double ml_alpha1(double mu, double z);

inline double ml_general(double alpha, double mu, double z);

// alpha = 1 closed/integral forms (the branch-cut denominator degenerates).
inline double ml_alpha1(double mu, double z) {
  if (mu == 1.0) return std::exp(z);
  if (mu == 2.0) return z == 0.0 ? 1.0 : std::expm1(z) / z;
  if (mu < 1.0) return z * ml_alpha1(mu + 1.0, z) + rgamma(mu);
  if (mu == std::floor(mu)) {
    // descend to E_{1,2}: E_{1,m}(z) = (E_{1,m-1}(z) - 1/(m-2)!) / z
    return (ml_alpha1(mu - 1.0, z) - rgamma(mu - 1.0)) / z;
  }
  if (mu > 2.0) return (ml_alpha1(mu - 1.0, z) - rgamma(mu - 1.0)) / z;
  // mu in (1,2): E_{1,mu}(z) = (1/Gamma(mu)) Int_0^1 exp(z (1 - w^{1/(mu-1)})) dw
  const double e = 1.0 / (mu - 1.0);
  auto g = [=](double w) { return std::exp(z * (1.0 - std::pow(w, e))); };
  std::vector<double> pts{0.0, 1.0};
  if (std::abs(z) > 2.0) pts.push_back(1.0 - 1.0 / std::abs(z));
  return rgamma(mu) * adaptive_integrate_split(g, pts, 1e-13);
}

inline double ml_general(double alpha, double mu, double z) {
  if (z == 0.0) return rgamma(mu);
  if (alpha == 1.0) return ml_alpha1(mu, z);
  if (alpha == 2.0 && (mu == 1.0 || mu == 2.0)) {
    if (mu == 1.0) return z < 0.0 ? std::cos(std::sqrt(-z)) : std::cosh(std::sqrt(z));
    const double r = std::sqrt(std::abs(z));
    if (z < 0.0) return std::sin(r) / r;
    return std::sinh(r) / r;
  }
  if (z > 0.0) return ml_series(alpha, mu, z);
  if (mu > 1.0) return (ml_general(alpha, mu - alpha, z) - rgamma(mu - alpha)) / z;
  // series is safe while the largest term stays within ~9 of the result scale
  // and the tail needs a manageable number of terms; both caps shrink with alpha
  const double cap =
      std::min({5.0, std::pow(9.0, alpha),
                0.5 * std::pow(1500.0 * alpha, alpha)});
  const double x = -z;
  if (x <= cap) return ml_series(alpha, mu, z);
  double val = ml_branchcut(alpha, mu, x);
  if (alpha > 1.0) val += ml_osc(alpha, mu, x);
  return val;
}

}  // namespace detail

// E_{alpha,mu}(z) for alpha in (0,2], real z <= 10.
inline double mittag_leffler(MLParams p, double z) {
  if (!(p.alpha > 0.0) || p.alpha > 2.0)
    throw std::invalid_argument("mittag_leffler: alpha must lie in (0,2]");
  if (z > 10.0)
    throw std::domain_error("mittag_leffler: z above supported cap 10");
  return detail::ml_general(p.alpha, p.mu, z);
}

// (E_{2,1}(z), E_{2,2}(z)); equals (cos t, sin t / t) at z = -t^2.
inline std::pair<double, double> ml_cosh_sinh_checks(double z) {
  return {detail::ml_general(2.0, 1.0, z), detail::ml_general(2.0, 2.0, z)};
}

// Gegenbauer C_k^(lambda) by the three-term recurrence.
inline double gegenbauer(int k, double lambda, double x) {
  if (k < 0) throw std::invalid_argument("gegenbauer: k must be nonnegative");
  if (k == 0) return 1.0;
  double cm = 1.0;
  double c = 2.0 * lambda * x;
  for (int j = 2; j <= k; ++j) {
    const double cn =
        (2.0 * x * (j + lambda - 1.0) * c - (j + 2.0 * lambda - 2.0) * cm) / j;
    cm = c;
    c = cn;
  }
  return c;
}

// Jacobi P_k^(a,b) by the standard recurrence.
inline double jacobi(int k, double a, double b, double x) {
  if (k < 0) throw std::invalid_argument("jacobi: k must be nonnegative");
  if (k == 0) return 1.0;
  double pm = 1.0;
  double p = (a + 1.0) + 0.5 * (a + b + 2.0) * (x - 1.0);
  for (int j = 2; j <= k; ++j) {
    const double c1 = 2.0 * j * (j + a + b) * (2.0 * j + a + b - 2.0);
    const double c2 = (2.0 * j + a + b - 1.0) *
                      ((2.0 * j + a + b) * (2.0 * j + a + b - 2.0) * x + a * a - b * b);
    const double c3 = 2.0 * (j + a - 1.0) * (j + b - 1.0) * (2.0 * j + a + b);
    const double pn = (c2 * p - c3 * pm) / c1;
    pm = p;
    p = pn;
  }
  return p;
}

// Caputo derivative of t^p of order alpha in (0,2). Degrees below ceil(alpha)
// are annihilated; fractional p below ceil(alpha) is outside supported use.
inline double caputo_power(double alpha, double p, double t) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument("caputo_power: alpha must lie in (0,2)");
  if (p == 0.0) return 0.0;
  if (p == 1.0 && alpha > 1.0) return 0.0;
  const double ceil_a = alpha > 1.0 ? 2.0 : 1.0;
  if (p < ceil_a && p != std::floor(p))
    throw std::domain_error("caputo_power: fractional p below ceil(alpha)");
  return gamma_fn(p + 1.0) * rgamma(p + 1.0 - alpha) * std::pow(t, p - alpha);
}

// Caputo derivative of sin applied termwise to the Taylor series:
//   sum_j (-1)^j t^{2j+1-alpha} / Gamma(2j+2-alpha),
// starting at j = 1 for alpha > 1 (the degree-one term is annihilated).
inline double caputo_sin(double alpha, double t, double tol) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument("caputo_sin: alpha must lie in (0,2)");
  const int j0 = alpha > 1.0 ? 1 : 0;
  double sum = 0.0;
  for (int j = j0; j < j0 + 200; ++j) {
    const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
    const double term = sgn * std::pow(t, 2 * j + 1 - alpha) * rgamma(2 * j + 2 - alpha);
    sum += term;
    if (std::abs(term) < tol) return sum;
  }
  throw std::runtime_error("caputo_sin: series did not reach tolerance");
}

// Termwise antiderivative Int_0^t caputo_sin(alpha, r) dr.
inline double caputo_sin_integral(double alpha, double t, double tol) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::invalid_argument("caputo_sin_integral: alpha must lie in (0,2)");
  const int j0 = alpha > 1.0 ? 1 : 0;
  double sum = 0.0;
  for (int j = j0; j < j0 + 200; ++j) {
    const double sgn = (j % 2 == 0) ? 1.0 : -1.0;
    const double term = sgn * std::pow(t, 2 * j + 2 - alpha) * rgamma(2 * j + 3 - alpha);
    sum += term;
    if (std::abs(term) < tol) return sum;
  }
  throw std::runtime_error("caputo_sin_integral: series did not reach tolerance");
}

}  // namespace fracsolve

#endif  // FRACSOLVE_SPECFUN_HPP
