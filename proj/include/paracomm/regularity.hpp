#pragma once

// Shell-pair machinery for the composed single-scale operator: the map
// Phi_omega(s,t) = omega + gamma(s) - gamma(t) and its closed-form inverse,
// the shifted pair (s_h, t_h), the admissible region
// E_lambda = { 1/2 <= t < s <= 2, s - t >= 15 lambda^{1/3} }, the explicit
// kernel of the composed operator restricted to E_lambda, the L1 modulus of
// continuity of that kernel, and the measure of the boundary mismatch set.

#include <optional>
#include <vector>

#include "paracomm/symbols.hpp"

namespace paracomm {

struct ShellPair {
  double s = 0.0;
  double t = 0.0;
};

ParaPoint shell_map(const ParaPoint& omega, double s, double t);

/// Solves omega + gamma(s) - gamma(t) = y in closed form. Returns nothing for
/// y1 = omega1 (degenerate direction) or when the pair leaves [1/4,4]^2.
std::optional<ShellPair> shell_map_inverse(const ParaPoint& omega, const ParaPoint& y);

/// The pair (s_h, t_h) with gamma(s_h) - gamma(t_h) = h + gamma(s) - gamma(t);
/// independent of the base point. Throws when h1 + s - t = 0.
ShellPair shifted_pair(double s, double t, const ParaPoint& h);

/// Largest lambda for which the admissible region is nonempty (15 lambda^{1/3} <= 3/2).
inline constexpr double kMaxLambda = 1e-3;

bool in_shell_domain(double s, double t, double lambda);

struct ShiftBoundReport {
  double lambda = 0.0;
  double max_ratio = 0.0;  // max of |t-t_h|, |s-s_h| against lambda^{2/3}
  long violations = 0;
  long n_samples = 0;
};

/// Samples pairs in the admissible region and shifts |h1| <= lambda,
/// |h2| <= lambda^2; checks |t-t_h| and |s-s_h| against lambda^{2/3}.
ShiftBoundReport shift_bound_check(double lambda, long n_samples, unsigned long long seed);

/// B(x,s,t) = [A(x)-A(x-gamma(t))] [A(x-gamma(t)) - A(x+gamma(s)-gamma(t))]
double double_bracket(const SymbolA& A, const ParaPoint& x, double s, double t);

/// Kernel of the composed single-scale operator on the far-from-diagonal part:
/// -B(w,s,t) phi(s) phi(t) / (2(s-t)) at (s,t) = inverse shell pair of (w,y),
/// zero off the admissible region; phi(t) = eta(t)/t^2.
double k0_eval(const SymbolA& A, const ParaPoint& w, const ParaPoint& y, double lambda);

/// int |K0(x+h, y) - K0(x, y)| dy, computed in shell coordinates with the
/// Jacobian weight and panels split at the indicator breakpoints. `level`
/// scales both the panel count and the Gauss order.
double reg_integral(const SymbolA& A, const ParaPoint& x, const ParaPoint& h, double lambda,
                    int level = 1);

struct RegSweepRow {
  double lambda = 0.0;
  ParaPoint h;
  double integral = 0.0;
  double ratio = 0.0;  // integral / lambda^{1/3}
};

/// Default shift h = (lambda, lambda^2); when randomize is set, h is drawn
/// uniformly from the admissible box instead.
std::vector<RegSweepRow> reg_integral_sweep(const SymbolA& A, const ParaPoint& x,
                                            const std::vector<double>& lambda_list,
                                            int level = 1, bool randomize = false,
                                            unsigned long long seed = 1);

struct MeasureEstimate {
  double estimate = 0.0;
  double std_error = 0.0;
  long hits = 0;
  long n_samples = 0;
};

/// Monte Carlo measure of the pairs in the admissible region whose shifted
/// pair leaves it; sampled uniformly over [1/2,2]^2.
MeasureEstimate boundary_mismatch_measure(const ParaPoint& h, double lambda, long n_mc,
                                          unsigned long long seed);

}  // namespace paracomm
