#ifndef FRACSOLVE_MANUFACTURED_HPP
#define FRACSOLVE_MANUFACTURED_HPP

// Closed-form exact solutions u(x,t) = h(t) omega^s(x) g_k(x) on (-1,1) with
// g_k the Gegenbauer polynomial C_k^{(s+1/2)}, for which
// (-Delta)^s (omega^s g_k) = mu_s^k g_k. Case (a) uses the Mittag-Leffler
// decay profile h = E_{alpha,1}(-t^alpha); case (b) uses h = sin t.

#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "fracsolve/specfun.hpp"

namespace fracsolve {

enum class CaseId { a, b };

struct ManufacturedCase {
  CaseId id = CaseId::a;
  double alpha = 0.5;
  double s = 0.75;
  int k = 3;
};

inline ManufacturedCase make_case(char id, double alpha, double s, int k = 3) {
  if (id != 'a' && id != 'b') throw std::invalid_argument("make_case: id must be 'a' or 'b'");
  if (!(alpha > 0.0) || alpha > 2.0)
    throw std::invalid_argument("make_case: alpha must lie in (0,2]");
  if (!(s > 0.0 && s < 1.0)) throw std::invalid_argument("make_case: s must lie in (0,1)");
  if (k < 0) throw std::invalid_argument("make_case: k must be nonnegative");
  return ManufacturedCase{id == 'a' ? CaseId::a : CaseId::b, alpha, s, k};
}

inline char case_letter(const ManufacturedCase& mc) { return mc.id == CaseId::a ? 'a' : 'b'; }

inline std::string time_profile(const ManufacturedCase& mc) {
  return mc.id == CaseId::a ? "mittag_leffler_decay" : "sine";
}

// mu_s^k = Gamma(2s + k + 1) / k!.
inline double mu_coefficient(double s, int k) {
  double kfact = 1.0;
  for (int j = 2; j <= k; ++j) kfact *= j;
  return gamma_fn(2.0 * s + k + 1.0) / kfact;
}

inline double omega_weight(double s, double x) {
  const double w = 1.0 - x * x;
  return w > 0.0 ? std::pow(w, s) : 0.0;
}

inline double spatial_factor(const ManufacturedCase& mc, double x) {
  return omega_weight(mc.s, x) * gegenbauer(mc.k, mc.s + 0.5, x);
}

// h(t): E_{alpha,1}(-t^alpha) for case (a), sin t for case (b).
inline double time_factor(const ManufacturedCase& mc, double t) {
  if (mc.id == CaseId::b) return std::sin(t);
  return t == 0.0 ? 1.0 : mittag_leffler({mc.alpha, 1.0}, -std::pow(t, mc.alpha));
}

// Int_0^t h: t E_{alpha,2}(-t^alpha) for case (a), 1 - cos t for case (b).
inline double time_factor_integral(const ManufacturedCase& mc, double t) {
  if (mc.id == CaseId::b) return 1.0 - std::cos(t);
  return t == 0.0 ? 0.0 : t * mittag_leffler({mc.alpha, 2.0}, -std::pow(t, mc.alpha));
}

inline double exact_solution(const ManufacturedCase& mc, double x, double t) {
  return time_factor(mc, t) * spatial_factor(mc, x);
}

// f = (Caputo_t^alpha h) omega^s g_k + h mu_s^k g_k. For case (a),
// Caputo of E_{alpha,1}(-t^alpha) is -E_{alpha,1}(-t^alpha), so
// f = h g_k (mu - omega^s); case (b) needs the caputo_sin series.
inline double source_term(const ManufacturedCase& mc, double x, double t) {
  const double g = gegenbauer(mc.k, mc.s + 0.5, x);
  const double mu = mu_coefficient(mc.s, mc.k);
  if (mc.id == CaseId::a)
    return time_factor(mc, t) * g * (mu - omega_weight(mc.s, x));
  return caputo_sin(mc.alpha, t, 1e-14) * omega_weight(mc.s, x) * g +
         std::sin(t) * mu * g;
}

// Int_0^t f(x, r) dr in closed form (termwise-integrated series).
inline double source_antiderivative(const ManufacturedCase& mc, double x, double t) {
  const double g = gegenbauer(mc.k, mc.s + 0.5, x);
  const double mu = mu_coefficient(mc.s, mc.k);
  if (mc.id == CaseId::a)
    return time_factor_integral(mc, t) * g * (mu - omega_weight(mc.s, x));
  return caputo_sin_integral(mc.alpha, t, 1e-14) * omega_weight(mc.s, x) * g +
         (1.0 - std::cos(t)) * mu * g;
}

struct InitialData {
  std::function<double(double)> v;
  std::function<double(double)> b;  // meaningful only when has_b
  bool has_b = false;
};

// v = u(.,0); for alpha > 1 also b = du/dt(.,0): zero for case (a)
// (d/dt E_{alpha,1}(-t^alpha) = -t^{alpha-1} E_{alpha,alpha}(-t^alpha) -> 0),
// omega^s g_k for case (b) (cos 0 = 1).
inline InitialData initial_data(const ManufacturedCase& mc) {
  InitialData d;
  d.has_b = mc.alpha > 1.0;
  if (mc.id == CaseId::a) {
    d.v = [mc](double x) { return spatial_factor(mc, x); };
    d.b = [](double) { return 0.0; };
  } else {
    d.v = [](double) { return 0.0; };
    d.b = [mc](double x) { return spatial_factor(mc, x); };
  }
  return d;
}

// Separable view of the source: f(x,t) = sum_i coeffs(t)[i] spatial[i](x).
// Lets a caller project each spatial factor once and synthesize nodal loads
// per step; by linearity of P_h this equals projecting f(., t) directly.
struct SourceSplit {
  std::vector<std::function<double(double)>> spatial;
  std::function<std::vector<double>(double)> coeffs;
  std::function<std::vector<double>(double)> coeffs_integral;
};

inline SourceSplit source_split(const ManufacturedCase& mc) {
  SourceSplit sp;
  const double mu = mu_coefficient(mc.s, mc.k);
  if (mc.id == CaseId::a) {
    sp.spatial = {[mc, mu](double x) {
      return gegenbauer(mc.k, mc.s + 0.5, x) * (mu - omega_weight(mc.s, x));
    }};
    sp.coeffs = [mc](double t) { return std::vector<double>{time_factor(mc, t)}; };
    sp.coeffs_integral = [mc](double t) {
      return std::vector<double>{time_factor_integral(mc, t)};
    };
  } else {
    sp.spatial = {[mc](double x) { return spatial_factor(mc, x); },
                  [mc, mu](double x) { return mu * gegenbauer(mc.k, mc.s + 0.5, x); }};
    sp.coeffs = [mc](double t) {
      return std::vector<double>{caputo_sin(mc.alpha, t, 1e-14), std::sin(t)};
    };
    sp.coeffs_integral = [mc](double t) {
      return std::vector<double>{caputo_sin_integral(mc.alpha, t, 1e-14),
                                 1.0 - std::cos(t)};
    };
  }
  return sp;
}

}  // namespace fracsolve

#endif  // FRACSOLVE_MANUFACTURED_HPP
