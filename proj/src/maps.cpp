#include "fisher/maps.hpp"

#include <cmath>
#include <limits>

#include "fisher/errors.hpp"

namespace fisher {

namespace {

void reject_degenerate_beta(cd beta) {
  if (beta == cd(0.0, 0.0) || beta == cd(-1.0, 0.0))
    throw Error("beta = 0 and beta = -1 are outside every supported regime");
}

cd ipow(cd base, int e) {
  if (e < 0) {
    if (base == cd(0.0, 0.0)) throw Error("zero raised to a negative power");
    return 1.0 / ipow(base, -e);
  }
  cd r = 1.0;
  while (e-- > 0) r *= base;
  return r;
}

cd checked_log(cd w) {
  if (!(w.real() > 0.0)) throw BranchError(w);
  return std::log(w);
}

}  // namespace

cd h_map(cd beta, cd x) {
  reject_degenerate_beta(beta);
  const cd den = beta * x + 1.0;
  if (den == cd(0.0, 0.0)) throw PoleError(x);
  return (beta + x) / den;
}

cd h_inverse(cd beta, cd y) {
  reject_degenerate_beta(beta);
  const cd den = 1.0 - beta * y;
  if (den == cd(0.0, 0.0)) throw PoleError(y);
  return (y - beta) / den;
}

cd f_uni(cd beta, int k, int s, cd x) {
  reject_degenerate_beta(beta);
  return ipow(beta, s) * ipow(h_map(beta, x), k);
}

cd F_multi(cd beta, int k, int s, std::span<const cd> xs) {
  reject_degenerate_beta(beta);
  if (static_cast<int>(xs.size()) != k) throw Error("F_multi: expected k inputs");
  cd prod = 1.0;
  for (const cd& x : xs) prod *= h_map(beta, x);
  return ipow(beta, s) * prod;
}

cd f_phi(cd beta, int k, int s, cd x) {
  reject_degenerate_beta(beta);
  cd acc = 0.0;
  if (s != 0) acc += static_cast<double>(s) * checked_log(beta);
  if (k != 0) acc += static_cast<double>(k) * checked_log(h_map(beta, std::exp(x)));
  return acc;
}

cd f_phi_deriv(cd beta, int k, cd x) {
  reject_degenerate_beta(beta);
  const cd u = std::exp(x);
  const cd den = (beta + u) * (beta * u + 1.0);
  if (den == cd(0.0, 0.0)) throw PoleError(x);
  return static_cast<double>(k) * (1.0 - beta * beta) * u / den;
}

double f_phi_deriv_abs_real(double beta, int k, double x) {
  if (beta <= 0.0) throw Error("real derivative path needs beta > 0");
  return k * std::abs(1.0 - beta * beta) /
         (beta * beta + 1.0 + beta * (std::exp(x) + std::exp(-x)));
}

bool UniquenessInterval::contains(double beta) const {
  if (beta <= 0.0) return false;
  return all_positive || (lo < beta && beta < hi);
}

UniquenessInterval uniqueness_interval(int delta_cap) {
  UniquenessInterval b;
  if (delta_cap <= 2) {
    b.all_positive = true;
    b.lo = 0.0;
    b.hi = std::numeric_limits<double>::infinity();
    return b;
  }
  b.lo = static_cast<double>(delta_cap - 2) / delta_cap;
  b.hi = static_cast<double>(delta_cap) / (delta_cap - 2);
  return b;
}

double contraction_ratio(double beta, int d) {
  if (beta <= 0.0) throw Error("contraction_ratio needs beta > 0");
  return d * std::abs(1.0 - beta) / (1.0 + beta);
}

cd p_map(cd beta, cd z) {
  reject_degenerate_beta(beta);
  return checked_log(h_inverse(beta, std::exp(z)));
}

double p_prime_real(double beta, double a) {
  if (beta <= 0.0 || beta == 1.0) throw Error("p_prime_real needs positive beta != 1");
  const double lb = std::log(beta);
  if (!(std::abs(a) < std::abs(lb)))
    throw SingularityError("p' singular at |a| >= |log beta|");
  return (1.0 - beta * beta) / (2.0 * beta * (std::cosh(lb) - std::cosh(a)));
}

cd q_map(double beta, cd z) {
  const double a = z.real();
  const double slope = p_prime_real(beta, a);  // also rejects |a| >= |log beta|
  const double p_at_a = p_map(cd(beta, 0.0), cd(a, 0.0)).real();
  return cd(p_at_a, slope * z.imag());
}

double i_func(double beta, int k, double delta, double x) {
  if (beta <= 0.0 || beta == 1.0) throw Error("i_func needs positive beta != 1");
  return k * delta * (std::cosh(std::log(beta)) - std::cosh(x)) * 2.0 * beta /
         std::abs(1.0 - beta * beta);
}

double beta_of_J(double J) { return std::exp(-2.0 * J); }

}  // namespace fisher
