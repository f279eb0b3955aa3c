#pragma once

#include <gmpxx.h>

#include <complex>
#include <string>
#include <vector>

#include "fisher/graph.hpp"

namespace fisher {

inline constexpr int kDefaultEnumerationCap = 30;

/// Exact interaction polynomial of a pinned graph: gammas[k] counts the spin
/// configurations (extending the pins) with exactly k bichromatic edges, so
/// Z(beta) = sum_k gammas[k] beta^k. Coefficients are exact big integers.
struct CutPolynomial {
  std::vector<mpz_class> gammas;  // gamma_0 .. gamma_|E|
  int n_free = 0;

  /// Index of the highest nonzero coefficient (-1 if identically zero).
  int degree() const;
  mpz_class coefficient_sum() const;

  std::string to_json() const;  // {"n_free": n, "gammas": ["2","2",...]}
  static CutPolynomial from_json(const std::string& text);
};

/// Full enumeration over the 2^(n_free) configurations, walking them in
/// Gray-code order so each step flips one vertex and updates the cut size in
/// O(degree) time. Throws EnumerationCapError when n_free exceeds the cap.
CutPolynomial cut_polynomial(const PinnedGraph& g, int cap = kDefaultEnumerationCap);

/// Horner evaluation of the polynomial at complex beta.
std::complex<double> evaluate_Z(const CutPolynomial& poly, std::complex<double> beta);

/// Independent evaluation route: sums beta^(cut size) directly over all
/// configurations, never touching the polynomial coefficients.
std::complex<double> evaluate_Z_enum(const PinnedGraph& g, std::complex<double> beta,
                                     int cap = kDefaultEnumerationCap);

/// One full spin assignment (must agree with the pins of the graph it is for).
struct SpinConfig {
  std::vector<Spin> assignment;
};

int cut_size(const PinnedGraph& g, const SpinConfig& config);

/// Z+/Z- at vertex v (the two one-vertex pinnings) together with their ratio;
/// the ratio is the explicit infinity marker when Z- = 0 rather than an IEEE
/// Inf leaking into arithmetic.
struct RatioValue {
  std::complex<double> z_plus{};
  std::complex<double> z_minus{};
  bool infinite = false;
  std::complex<double> value{};  // meaningful only when !infinite
};

RatioValue pinned_ratio(const PinnedGraph& g, int v, std::complex<double> beta,
                        int cap = kDefaultEnumerationCap);

}  // namespace fisher
