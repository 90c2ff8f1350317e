#ifndef FRACSOLVE_CQTIME_HPP
#define FRACSOLVE_CQTIME_HPP

// Convolution-quadrature weights for K(z) = z^alpha with the backward-Euler
// generating function ((1-xi)/tau)^alpha, the discrete Riemann-Liouville
// operator, and the corrected source term used by the diffusion-wave scheme.

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

namespace fracsolve {

struct CQWeightTable {
  double alpha = 0.0;
  double tau = 0.0;
  std::vector<double> weights;  // omega_0 .. omega_N
};

struct UniformTimeGrid {
  double tau;
  int n_steps;
  double t_end;
  UniformTimeGrid(double tau_, int n_steps_)
      : tau(tau_), n_steps(n_steps_), t_end(tau_ * n_steps_) {
    if (!(tau > 0.0)) throw std::invalid_argument("UniformTimeGrid: tau must be positive");
    if (n_steps < 1) throw std::invalid_argument("UniformTimeGrid: n_steps must be positive");
  }
  double t(int n) const { return tau * n; }
};

// omega_0 = tau^-alpha, omega_j = omega_{j-1} (1 - (alpha+1)/j).
inline CQWeightTable cq_weights(double alpha, double tau, int n) {
  if (!(alpha > 0.0) || alpha > 2.0)
    throw std::invalid_argument("cq_weights: alpha must lie in (0,2]");
  if (!(tau > 0.0)) throw std::invalid_argument("cq_weights: tau must be positive");
  if (n < 0) throw std::invalid_argument("cq_weights: n must be nonnegative");
  CQWeightTable t;
  t.alpha = alpha;
  t.tau = tau;
  t.weights.resize(static_cast<std::size_t>(n) + 1);
  t.weights[0] = std::pow(tau, -alpha);
  for (int j = 1; j <= n; ++j)
    t.weights[j] = t.weights[j - 1] * (1.0 - (alpha + 1.0) / j);
  return t;
}

// sum_j omega_j g(t - j tau); samples[j] = g(t - j tau).
inline double discrete_rl(const CQWeightTable& w, const std::vector<double>& samples) {
  if (samples.size() != w.weights.size())
    throw std::invalid_argument("discrete_rl: sample count does not match the weight table");
  double acc = 0.0;
  for (std::size_t j = 0; j < samples.size(); ++j) acc += w.weights[j] * samples[j];
  return acc;
}

// Discrete RL derivative of t -> t at t_n: sum_{j<=n} omega_j tau (n-j).
inline double ramp_term(const CQWeightTable& w, int n) {
  if (n < 0 || static_cast<std::size_t>(n) >= w.weights.size())
    throw std::invalid_argument("ramp_term: n outside the weight table");
  double acc = 0.0;
  for (int j = 0; j <= n; ++j) acc += w.weights[j] * w.tau * (n - j);
  return acc;
}

// G^n = (If(t_n) - If(t_{n-1})) / tau, with If(t) the nodal vector of the
// projected antiderivative Int_0^t f_h. Backward-Euler CQ of K(z) = z has
// weights (1/tau, -1/tau, 0, ...), so this is the cell average over
// (t_{n-1}, t_n].
inline Eigen::VectorXd corrected_source(
    const std::function<Eigen::VectorXd(double)>& f_integral, double tau, int n) {
  if (n < 1) throw std::invalid_argument("corrected_source: n must be >= 1");
  return (f_integral(tau * n) - f_integral(tau * (n - 1))) / tau;
}

}  // namespace fracsolve

#endif  // FRACSOLVE_CQTIME_HPP
