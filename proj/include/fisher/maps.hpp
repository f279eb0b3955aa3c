#pragma once

#include <complex>
#include <span>

namespace fisher {

using cd = std::complex<double>;

/// Parameter bundle for one recurrence step: k free inputs, a net pin count s,
/// and the degree cap the step lives under (d = delta_cap - 1).
struct MapParams {
  cd beta;
  int k = 0;
  int s = 0;
  int delta_cap = 0;
  int d() const { return delta_cap - 1; }
  bool valid_step() const {
    const int arity = k + (s < 0 ? -s : s);
    return 1 <= arity && arity <= delta_cap;
  }
};

/// Moebius step (beta + x)/(beta x + 1) and its inverse (y - beta)/(1 - beta y).
cd h_map(cd beta, cd x);
cd h_inverse(cd beta, cd y);

/// Univariate recurrence beta^s h(x)^k and its multivariate form
/// beta^s prod_i h(x_i). F_multi with all-equal inputs equals f_uni.
cd f_uni(cd beta, int k, int s, cd x);
cd F_multi(cd beta, int k, int s, std::span<const cd> xs);

/// Log-coordinates version s log(beta) + k log(h(e^x)) (principal branches;
/// raises BranchError if h(e^x) leaves the right half-plane) and its analytic
/// derivative k (1 - beta^2) e^x / ((beta + e^x)(beta e^x + 1)).
cd f_phi(cd beta, int k, int s, cd x);
cd f_phi_deriv(cd beta, int k, cd x);

/// |d/dx| of the log-coordinates map for real beta and real x,
/// k |1 - beta^2| / (beta^2 + 1 + beta (e^x + e^-x)); kept as a separate
/// real-axis route for cross-checks against the analytic derivative.
double f_phi_deriv_abs_real(double beta, int k, double x);

/// Open interval ((cap-2)/cap, cap/(cap-2)) where the tree recurrence
/// contracts; degenerates to all positive beta when cap <= 2.
struct UniquenessInterval {
  double lo = 0.0;
  double hi = 0.0;
  bool all_positive = false;
  bool contains(double beta) const;
};

UniquenessInterval uniqueness_interval(int delta_cap);

/// d |1 - beta| / (1 + beta); < 1 exactly on the uniqueness interval.
double contraction_ratio(double beta, int d);

/// p = log o h_beta^{-1} o exp (principal branches).
cd p_map(cd beta, cd z);

/// p'(a) = (1 - beta^2) / (2 beta (cosh log beta - cosh a)) for real a with
/// |a| < |log beta|; raises SingularityError at or beyond that bound.
double p_prime_real(double beta, double a);

/// Axis-split approximation q(a + bi) = p(a) + p'(a) b i (real beta != 1).
cd q_map(double beta, cd z);

/// Height profile k delta (cosh log beta - cosh x) 2 beta / |1 - beta^2|.
double i_func(double beta, int k, double delta, double x);

/// Interaction parameter from inverse temperature: beta = exp(-2J).
double beta_of_J(double J);

}  // namespace fisher
