#ifndef FRACSOLVE_STEPPER_HPP
#define FRACSOLVE_STEPPER_HPP

// Fully discrete schemes: backward-Euler convolution quadrature in time with
// P1 Galerkin in space, for the diffusion (alpha <= 1) and diffusion-wave
// (alpha > 1) regimes, plus the semi-discrete eigenmode oracle.

#include <Eigen/Dense>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <vector>

#include "fracsolve/cqtime.hpp"
#include "fracsolve/femcore.hpp"
#include "fracsolve/specfun.hpp"

namespace fracsolve {

struct SolverConfig {
  double alpha = 0.5;
  double s = 0.75;
  UniformTimeGrid grid;
  UniformMesh1D mesh;
  // Corrected source G^n is the default for the diffusion-wave scheme; the
  // flag exists for A/B comparison and is ignored by solve_diffusion.
  bool use_corrected_source = true;
};

struct Trajectory {
  std::vector<Eigen::VectorXd> states;  // U^0 .. U^N
  UniformTimeGrid grid;
};

using NodalFn = std::function<Eigen::VectorXd(double)>;

namespace detail {

// Shared CQ history update. At step n the scheme reads
//   (w0 M + K) U^n = M [ (sum_{j<=n} w_j) U^0 + extra^n
//                        - sum_{j=1}^n w_j U^{n-j} + load^n ].
template <class ExtraFn, class LoadFn>
Trajectory cq_march(const SolverConfig& cfg, const StiffnessMatrix& K,
                    const MassMatrix& M, const Eigen::VectorXd& v_h,
                    ExtraFn&& extra, LoadFn&& load) {
  const int n_dof = cfg.mesh.dof();
  if (v_h.size() != n_dof)
    throw std::invalid_argument("cq_march: initial datum has wrong dimension");
  if (K.mat.rows() != n_dof || M.n != n_dof)
    throw std::invalid_argument("cq_march: matrix dimensions inconsistent");
  const int N = cfg.grid.n_steps;
  const CQWeightTable w = cq_weights(cfg.alpha, cfg.grid.tau, N);

  Eigen::LLT<Eigen::MatrixXd> llt(w.weights[0] * M.dense() + K.mat);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("cq_march: system matrix is not positive definite");

  Trajectory traj{std::vector<Eigen::VectorXd>(), cfg.grid};
  traj.states.reserve(N + 1);
  traj.states.push_back(v_h);

  double wsum = w.weights[0];
  for (int n = 1; n <= N; ++n) {
    wsum += w.weights[n];
    Eigen::VectorXd bracket = wsum * v_h + extra(w, n) + load(n);
    for (int j = 1; j <= n; ++j)
      bracket.noalias() -= w.weights[j] * traj.states[n - j];
    traj.states.push_back(llt.solve(M.apply(bracket)));
  }
  return traj;
}

}  // namespace detail

// Diffusion regime, alpha in (0,1]: load is F^n = P_h f(t_n) (f_at must
// return projected coefficients).
inline Trajectory solve_diffusion(const SolverConfig& cfg, const StiffnessMatrix& K,
                                  const MassMatrix& M, const Eigen::VectorXd& v_h,
                                  const NodalFn& f_at) {
  if (!(cfg.alpha > 0.0) || cfg.alpha > 1.0)
    throw std::out_of_range("solve_diffusion: alpha must lie in (0,1]");
  const int n_dof = cfg.mesh.dof();
  auto zero = [&](double) { return Eigen::VectorXd::Zero(n_dof).eval(); };
  const NodalFn& f = f_at ? f_at : static_cast<NodalFn>(zero);
  return detail::cq_march(
      cfg, K, M, v_h,
      [&](const CQWeightTable&, int) { return Eigen::VectorXd::Zero(n_dof).eval(); },
      [&](int n) { return f(cfg.grid.t(n)); });
}

// Diffusion-wave regime, alpha in (1,2]: ramp term (discrete RL of t) applied
// to b_h, and corrected source G^n from the projected antiderivative
// f_integral. When cfg.use_corrected_source is false the raw F^n = P_h f(t_n)
// supplied through f_at is used instead (A/B comparison hook).
inline Trajectory solve_wave(const SolverConfig& cfg, const StiffnessMatrix& K,
                             const MassMatrix& M, const Eigen::VectorXd& v_h,
                             const Eigen::VectorXd& b_h, const NodalFn& f_integral,
                             const NodalFn& f_at = nullptr) {
  if (!(cfg.alpha > 1.0) || cfg.alpha > 2.0)
    throw std::out_of_range("solve_wave: alpha must lie in (1,2]");
  const int n_dof = cfg.mesh.dof();
  if (b_h.size() != n_dof)
    throw std::invalid_argument("solve_wave: b_h has wrong dimension");
  if (!cfg.use_corrected_source && !f_at)
    throw std::invalid_argument("solve_wave: uncorrected mode needs f_at");
  auto zero = [&](double) { return Eigen::VectorXd::Zero(n_dof).eval(); };
  const NodalFn& fi = f_integral ? f_integral : static_cast<NodalFn>(zero);
  return detail::cq_march(
      cfg, K, M, v_h,
      [&](const CQWeightTable& w, int n) { return (ramp_term(w, n) * b_h).eval(); },
      [&](int n) -> Eigen::VectorXd {
        if (cfg.use_corrected_source) return corrected_source(fi, cfg.grid.tau, n);
        return f_at(cfg.grid.t(n));
      });
}

// Eigenmode oracle for the homogeneous semi-discrete problem: solves
// K phi = lambda M phi once (M-orthonormal eigenvectors), then
//   u_h(t) = sum_k [ (v,phi_k)_M E_{alpha,1}(-lambda_k t^alpha)
//                    + t (b,phi_k)_M E_{alpha,2}(-lambda_k t^alpha) ] phi_k,
// the second term only for alpha > 1.
struct SemidiscreteOracle {
  Eigen::VectorXd lambda;
  Eigen::MatrixXd phi;  // columns, Phi^T M Phi = I
  Eigen::MatrixXd m_dense;

  SemidiscreteOracle(const StiffnessMatrix& K, const MassMatrix& M)
      : m_dense(M.dense()) {
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(K.mat, m_dense);
    if (es.info() != Eigen::Success)
      throw std::runtime_error("SemidiscreteOracle: eigensolver failed");
    lambda = es.eigenvalues();
    phi = es.eigenvectors();
  }

  Eigen::VectorXd eval(const Eigen::VectorXd& v_h, const Eigen::VectorXd& b_h,
                       double alpha, double t) const {
    if (t == 0.0) return v_h;
    const Eigen::VectorXd vhat = phi.transpose() * (m_dense * v_h);
    Eigen::VectorXd coef(lambda.size());
    const double ta = std::pow(t, alpha);
    for (int k = 0; k < lambda.size(); ++k)
      coef[k] = vhat[k] * mittag_leffler({alpha, 1.0}, -lambda[k] * ta);
    if (alpha > 1.0 && b_h.size() == v_h.size()) {
      const Eigen::VectorXd bhat = phi.transpose() * (m_dense * b_h);
      for (int k = 0; k < lambda.size(); ++k)
        coef[k] += t * bhat[k] * mittag_leffler({alpha, 2.0}, -lambda[k] * ta);
    }
    return phi * coef;
  }
};

inline Eigen::VectorXd semidiscrete_exact(const StiffnessMatrix& K, const MassMatrix& M,
                                          const Eigen::VectorXd& v_h,
                                          const Eigen::VectorXd& b_h, double alpha,
                                          double t) {
  if (t < 0.0) throw std::invalid_argument("semidiscrete_exact: t must be >= 0");
  return SemidiscreteOracle(K, M).eval(v_h, b_h, alpha, t);
}

// P1 point value of states[n]; zero at and beyond the endpoints.
inline double evaluate_trajectory(const Trajectory& traj, const UniformMesh1D& mesh,
                                  double x, int n) {
  if (n < 0 || static_cast<std::size_t>(n) >= traj.states.size())
    throw std::out_of_range("evaluate_trajectory: step index out of range");
  if (x <= mesh.a || x >= mesh.b) return 0.0;
  int e = static_cast<int>((x - mesh.a) / mesh.h);
  if (e >= mesh.m) e = mesh.m - 1;
  const int ndof = mesh.dof();
  const Eigen::VectorXd& c = traj.states[n];
  const double cl = e >= 1 ? c[e - 1] : 0.0;
  const double cr = e + 1 <= ndof ? c[e] : 0.0;
  return (cl * (mesh.node(e + 1) - x) + cr * (x - mesh.node(e))) / mesh.h;
}

}  // namespace fracsolve

#endif  // FRACSOLVE_STEPPER_HPP
