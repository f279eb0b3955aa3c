#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "fisher/exact.hpp"
#include "fisher/graph.hpp"

namespace fisher {

struct RootCluster {
  std::complex<double> value;
  int multiplicity = 1;
};

/// All complex roots of an interaction polynomial, with a quality measure.
struct ZeroSet {
  std::vector<std::complex<double>> roots;  // degree-many, multiplicity listed
  std::vector<RootCluster> clusters;        // roots merged within 1e-7
  double max_residual = 0.0;                // max |p(r)| / sum_k |c_k| |r|^k
  bool degenerate = false;                  // constant polynomial, no zeros
};

/// Roots via balanced companion-matrix eigenvalues plus one Newton polish
/// step. The real-coefficient route uses the real Schur form, so conjugate
/// pairs come out exactly conjugate.
std::vector<std::complex<double>> roots_real_coeffs(std::vector<double> coeffs);
std::vector<std::complex<double>> roots_complex_coeffs(std::vector<std::complex<double>> coeffs);

/// Zeros of Z as a polynomial in the interaction parameter. Common integer
/// factors are removed before conversion to floating point, and zero constant
/// terms are peeled off as exact roots at the origin.
ZeroSet fisher_zeros(const CutPolynomial& poly);

/// Distance from the nearest root to the shrunken closed uniqueness interval
/// [(cap-2)/cap + shrink, cap/(cap-2) - shrink] (the half-line [shrink, inf)
/// when cap <= 2). Returns +infinity for an empty zero set.
double zero_free_margin(const ZeroSet& zs, int delta_cap, double shrink);

struct ScanSpec {
  Family family = Family::cycle;
  int size_lo = 3;
  int size_hi = 3;
  int degree = 3;           // random_regular only
  int count = 0;            // random_regular: how many graphs (sizes cycle)
  std::uint64_t seed = 1;
};

struct ScanRow {
  std::string family;
  int n = 0;
  int delta = 0;      // degree cap the margin was measured against
  int degree = 0;     // polynomial degree after trimming
  int num_zeros = 0;
  double margin = 0.0;
  std::complex<double> min_root{};  // root attaining the margin
  std::vector<std::complex<double>> roots;
};

/// Runs the zero scan over whole families. delta_cap_override = 0 measures
/// each graph against its own declared cap.
std::vector<ScanRow> scan_family(const std::vector<ScanSpec>& specs, int delta_cap_override,
                                 double shrink, int threads = 0);

std::string scan_to_csv(const std::vector<ScanRow>& rows);
std::string scan_to_json(const std::vector<ScanRow>& rows, double shrink);

}  // namespace fisher
