#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fisher/maps.hpp"

namespace fisher {

/// Points within this distance of a region boundary still count as members;
/// see the sampling notes in regions.cpp.
inline constexpr double kMembershipTol = 1e-9;

/// Axis-aligned rectangle centered at the origin: |Re z| <= a, |Im z| <= b.
struct Rectangle {
  double a = 0.0;
  double b = 0.0;
  bool contains(cd z, double tol = 0.0) const;
};

/// Exact Minkowski erosion of the rectangle by a closed disk of radius eps;
/// empty marker (nullopt) when eps exceeds a half-extent.
std::optional<Rectangle> erode(const Rectangle& r, double eps);

/// Bounding rectangle of the disk dilation: R(a + eps, b + eps).
Rectangle dilate_bound(const Rectangle& r, double eps);

/// Lens-shaped convex region around the origin: |Re z| <= re_halfwidth(),
/// |Im z| <= i_func(beta, k, delta, Re z). Reduces to {0} when k = 0.
struct RegionC2 {
  double beta = 0.5;  // positive, != 1 when k >= 1
  double delta = 0.0;
  int k = 0;

  double re_halfwidth() const;
  double im_bound(double x) const;
  /// Signed membership defect: <= 0 inside, > 0 outside.
  double excess(cd z) const;
  bool contains(cd z, double tol = kMembershipTol) const { return excess(z) <= tol; }
};

bool c2_contains(const RegionC2& r, cd z, double tol = kMembershipTol);

/// The recurrence-closed region: z is a member when h_{beta'}(z) stays in the
/// right half-plane and log h_{beta'}(z) lands in C2(beta, delta, d). Always
/// contains 1; never contains -1 (that point maps to the branch cut).
struct RegionD {
  double beta = 0.5;
  cd beta_prime;
  double delta = 0.0;
  int d = 2;

  RegionC2 c2() const { return RegionC2{beta, delta, d}; }
  bool contains(cd z, double tol = kMembershipTol) const;
};

bool d_contains(const RegionD& r, cd z, double tol = kMembershipTol);

struct Witness {
  cd z;
  int k = 0;
  int s = 0;
  std::string what;
};

/// Outcome of one sampled verification run. `metrics` carries the measured
/// quantities a check is about (suprema, margins, cover distances, ...);
/// `params` echoes the numeric inputs so reports are self-describing.
struct VerificationReport {
  bool passed = false;
  double max_violation = 0.0;
  std::optional<Witness> witness;
  long samples_used = 0;
  std::uint64_t seed = 0;
  std::map<std::string, double> metrics;
  std::map<std::string, double> params;
};

std::string report_to_json(const VerificationReport& r);

/// Seeded stratified samples of C2: interior points plus the center and the
/// extreme boundary anchors.
std::vector<cd> sample_c2_interior(const RegionC2& r, long n, std::uint64_t seed);

/// Deterministic boundary walk of C2 (top/bottom height curves and the two
/// vertical end segments), spaced so the q-images are uniform per image side.
std::vector<cd> sample_c2_boundary(const RegionC2& r, long n);

/// Checks that q maps C2(beta, delta, k) exactly onto the rectangle
/// k * R(2|log beta|, delta): interior samples land inside (slack
/// kMembershipTol), boundary samples land on the rectangle boundary, and the
/// boundary images cover it with gap at most cover_tol.
VerificationReport verify_image_q(double beta, double delta, int k, long n_samples,
                                  std::uint64_t seed, double cover_tol = 1e-3);

/// Measured suprema over sampled C2(beta, delta, k):
/// first = sup |p_beta - q_beta|, second = sup |p_beta - p_beta_prime|.
std::pair<double, double> approx_gap(double beta, cd beta_prime, double delta, int k,
                                     long n_samples, std::uint64_t seed);

/// Grid supremum of |f_phi'| for the k-fold map over the rectangle C
/// (odd grid counts, so 0 is always a grid point).
double measured_deriv_sup(cd beta_prime, int k, const Rectangle& C, long n_grid);

/// Samples sub-rectangles R(a,b) of C and checks the two per-axis shrink
/// inequalities |Re f(z)| <= chi max(a, tau), |Im f(z)| <= chi max(b, xi)
/// for the k-fold log-coordinates map at beta_prime.
VerificationReport check_rect_contraction(cd beta_prime, int k, const Rectangle& C, double chi,
                                          double tau, double xi, long n_samples,
                                          std::uint64_t seed);

/// Samples D and checks closure of the recurrence maps over it:
/// f_{beta',k,s}(D) stays in D for 1 <= k+|s| <= delta_cap - 1, outputs keep
/// a positive distance from -1 for 1 <= k+|s| <= delta_cap, 1 is in D and -1
/// is not, and 1000 multivariate tuples confirm the univariate reduction.
/// For beta == 1 the region is exp(R(delta, delta)) instead of a RegionD.
VerificationReport verify_region_closure(double beta, cd beta_prime, double delta, int delta_cap,
                                         long n_samples, std::uint64_t seed,
                                         bool fail_fast = false);

struct DeltaGrid {
  double delta_max = 0.04;
  double delta_beta_max = 0.02;
  double factor = 0.5;
  double delta_min = 2e-4;
  double delta_beta_min = 5e-7;
};

struct DeltaSearchResult {
  bool found = false;
  double delta = 0.0;
  double delta_beta = 0.0;
  double margin = 0.0;  // min distance of recurrence outputs from -1
};

/// Largest (delta, delta_beta) on the geometric grid such that closure holds
/// for 8 probe values of beta' on the circle |beta' - beta| = delta_beta.
DeltaSearchResult search_delta(double beta, int delta_cap, const DeltaGrid& grid, long n_samples,
                               std::uint64_t seed);

}  // namespace fisher
