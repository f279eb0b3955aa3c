#pragma once

#include <complex>
#include <string>
#include <vector>

#include "fisher/exact.hpp"
#include "fisher/graph.hpp"

namespace fisher {

/// Truncated series for log p(t) about t = 0, along the segment from 1 to the
/// target interaction value (t parametrizes beta = 1 + t (beta_end - 1)).
struct TaylorLogSeries {
  std::complex<double> base_value{};         // log p(0)
  std::vector<std::complex<double>> coeffs;  // c_1 .. c_m
  int m = 0;
  std::complex<double> segment_end{};
};

/// Coefficients c_1..c_m of log(p(t)) from the coefficients of p, via the
/// convolution recursion j c_j = j a_j - sum_{i<j} i c_i a_{j-i}, a_j = p_j/p_0.
/// Requires p_0 != 0.
std::vector<std::complex<double>> log_taylor_coeffs(
    const std::vector<std::complex<double>>& p_coeffs, int m);

struct BarvinokResult {
  std::complex<double> z_hat{};
  int m_used = 0;
  double rho = 0.0;         // min |root| of the substituted polynomial in t
  double tail_bound = 0.0;  // guaranteed |log error| at the chosen truncation
  bool certified = false;
  std::string status;  // "ok" | "rho<=1" | "tail-cap"
};

/// Truncated-Taylor estimate of Z at complex beta. The substituted polynomial
/// p(t) = Z(1 + t (beta - 1)) is re-expanded with exact integer binomial sums
/// before a single conversion to floating point; its smallest root modulus
/// rho is the per-instance certificate. When rho > 1 the truncation order m
/// is chosen so that deg * rho^-(m+1) / ((m+1)(1 - 1/rho)) <= log(1 + eps),
/// which makes |Z_hat - Z| <= eps |Z| unconditional.
BarvinokResult barvinok_try(const PinnedGraph& g, std::complex<double> beta, double eps,
                            int cap = kDefaultEnumerationCap);

/// Same, but certificate failure raises CertificateError instead of returning
/// an uncertified result.
BarvinokResult barvinok_estimate(const PinnedGraph& g, std::complex<double> beta, double eps,
                                 int cap = kDefaultEnumerationCap);

struct ErrorRow {
  std::complex<double> beta{};
  double eps = 0.0;
  int m_used = 0;
  double rho = 0.0;
  double rel_error = 0.0;  // NaN when no estimate was produced
  bool certified = false;
  bool ok = false;  // certified and within the promised bound
};

/// Estimator-vs-exact comparison over a grid of beta values.
std::vector<ErrorRow> error_report(const PinnedGraph& g,
                                   const std::vector<std::complex<double>>& betas,
                                   const std::vector<double>& eps_list, int threads = 0);

std::string error_report_csv(const std::vector<ErrorRow>& rows);

}  // namespace fisher
