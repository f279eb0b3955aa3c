#include "fisher/regions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <json.hpp>

#include "fisher/errors.hpp"
#include "fisher/rng.hpp"

namespace fisher {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double rect_excess(const Rectangle& r, cd z) {
  return std::max(std::abs(z.real()) - r.a, std::abs(z.imag()) - r.b);
}

}  // namespace

bool Rectangle::contains(cd z, double tol) const { return rect_excess(*this, z) <= tol; }

std::optional<Rectangle> erode(const Rectangle& r, double eps) {
  if (eps < 0.0) throw Error("erode: negative radius");
  if (eps > std::min(r.a, r.b)) return std::nullopt;
  return Rectangle{r.a - eps, r.b - eps};
}

Rectangle dilate_bound(const Rectangle& r, double eps) {
  if (eps < 0.0) throw Error("dilate_bound: negative radius");
  return Rectangle{r.a + eps, r.b + eps};
}

double RegionC2::re_halfwidth() const {
  if (k == 0) return 0.0;
  if (beta <= 0.0 || beta == 1.0) throw Error("RegionC2 needs positive beta != 1 when k >= 1");
  const double b2k = std::pow(beta, 2 * k);
  return std::abs(std::log(beta + b2k) - std::log(1.0 + beta * b2k));
}

double RegionC2::im_bound(double x) const {
  if (k == 0) return 0.0;
  return i_func(beta, k, delta, x);
}

double RegionC2::excess(cd z) const {
  if (k == 0) return std::max(std::abs(z.real()), std::abs(z.imag()));
  return std::max(std::abs(z.real()) - re_halfwidth(),
                  std::abs(z.imag()) - im_bound(z.real()));
}

bool c2_contains(const RegionC2& r, cd z, double tol) { return r.contains(z, tol); }

bool RegionD::contains(cd z, double tol) const {
  const cd den = beta_prime * z + 1.0;
  if (den == cd(0.0, 0.0)) return false;
  const cd w = (beta_prime + z) / den;
  if (!(w.real() > 0.0)) return false;  // branch violation is non-membership
  return c2().contains(std::log(w), tol);
}

bool d_contains(const RegionD& r, cd z, double tol) { return r.contains(z, tol); }

std::string report_to_json(const VerificationReport& r) {
  nlohmann::json j;
  j["passed"] = r.passed;
  j["max_violation"] = r.max_violation;
  if (r.witness) {
    j["witness"] = {{"re", r.witness->z.real()},
                    {"im", r.witness->z.imag()},
                    {"k", r.witness->k},
                    {"s", r.witness->s},
                    {"what", r.witness->what}};
  } else {
    j["witness"] = nullptr;
  }
  j["samples_used"] = r.samples_used;
  j["seed"] = r.seed;
  j["metrics"] = r.metrics;
  j["params"] = r.params;
  return j.dump(2);
}

namespace {

// Real-axis inverse of p: p^{-1}(w) = log h_beta(e^w).
double p_inverse_real(double beta, double w) {
  const double ew = std::exp(w);
  return std::log((beta + ew) / (beta * ew + 1.0));
}

}  // namespace

std::vector<cd> sample_c2_interior(const RegionC2& r, long n, std::uint64_t seed) {
  std::vector<cd> out;
  if (r.k == 0) {
    out.emplace_back(0.0, 0.0);
    return out;
  }
  const double A = r.re_halfwidth();
  out.reserve(n + 7);
  // Anchors: the center and the extreme points of the two axes.
  out.emplace_back(0.0, 0.0);
  out.emplace_back(A, 0.0);
  out.emplace_back(-A, 0.0);
  out.emplace_back(0.0, r.im_bound(0.0));
  out.emplace_back(0.0, -r.im_bound(0.0));
  out.emplace_back(A, r.im_bound(A));
  out.emplace_back(-A, -r.im_bound(A));
  Rng rng(seed);
  for (long i = 0; i < n; ++i) {
    // Stratified along the real axis, uniform in the height slice.
    const double u = (static_cast<double>(i) + rng.uniform()) / static_cast<double>(n);
    const double a = A * (2.0 * u - 1.0);
    const double h = r.im_bound(a);
    out.emplace_back(a, h * (2.0 * rng.uniform() - 1.0));
  }
  return out;
}

std::vector<cd> sample_c2_boundary(const RegionC2& r, long n) {
  std::vector<cd> out;
  if (r.k == 0) {
    out.emplace_back(0.0, 0.0);
    return out;
  }
  const double A = r.re_halfwidth();
  const double W = 2.0 * r.k * std::abs(std::log(r.beta));
  const double H = r.k * r.delta;
  // Budget n points over the boundary in proportion to the q-image side
  // lengths, so the image coverage gap is uniform across all four sides.
  const double perimeter = 4.0 * W + 4.0 * H;
  const long n_flat = std::max<long>(2, std::lround(static_cast<double>(n) * 2.0 * W / perimeter));
  const long n_side = std::max<long>(2, std::lround(static_cast<double>(n) * 2.0 * H / perimeter));
  out.reserve(2 * (n_flat + n_side));
  // Height curves, spaced uniformly in the q-image coordinate p(a).
  for (long j = 0; j < n_flat; ++j) {
    const double w = -W + 2.0 * W * static_cast<double>(j) / static_cast<double>(n_flat - 1);
    const double a = p_inverse_real(r.beta, w);
    const double h = r.im_bound(a);
    out.emplace_back(a, h);
    out.emplace_back(a, -h);
  }
  // Vertical end segments at Re = +-A.
  const double hA = r.im_bound(A);
  for (long j = 0; j < n_side; ++j) {
    const double b = hA * (-1.0 + 2.0 * static_cast<double>(j) / static_cast<double>(n_side - 1));
    out.emplace_back(A, b);
    out.emplace_back(-A, b);
  }
  return out;
}

namespace {

// Distance from a point to the boundary of R(a, b) (0 on the boundary).
double dist_to_rect_boundary(const Rectangle& r, cd z) {
  const double ex = std::abs(z.real()) - r.a;
  const double ey = std::abs(z.imag()) - r.b;
  if (ex <= 0.0 && ey <= 0.0) return -std::max(ex, ey);  // inside
  return std::hypot(std::max(ex, 0.0), std::max(ey, 0.0));
}

// Worst uncovered stretch along one side, given sorted sample positions.
double side_cover_gap(std::vector<double>& pos, double lo, double hi) {
  if (pos.empty()) return (hi - lo) / 2.0;
  std::sort(pos.begin(), pos.end());
  double gap = std::max(pos.front() - lo, hi - pos.back());
  for (std::size_t i = 1; i < pos.size(); ++i)
    gap = std::max(gap, (pos[i] - pos[i - 1]) / 2.0);
  return gap;
}

}  // namespace

VerificationReport verify_image_q(double beta, double delta, int k, long n_samples,
                                  std::uint64_t seed, double cover_tol) {
  if (beta <= 0.0 || beta == 1.0) throw Error("verify_image_q needs positive beta != 1");
  if (k < 1) throw Error("verify_image_q needs k >= 1");
  const double delta1 = std::abs(std::log(beta)) / 10.0;  // keeps the image well inside C0
  if (delta > delta1)
    throw Error("verify_image_q: delta above the supported surrogate bound " +
                std::to_string(delta1));

  const RegionC2 region{beta, delta, k};
  const Rectangle target{2.0 * k * std::abs(std::log(beta)), k * delta};

  VerificationReport rep;
  rep.seed = seed;
  rep.params = {{"beta", beta}, {"delta", delta}, {"k", static_cast<double>(k)}};

  double containment = -kInf;
  std::optional<Witness> worst;
  const auto interior = sample_c2_interior(region, n_samples, seed);
  for (const cd& z : interior) {
    const double e = rect_excess(target, q_map(beta, z));
    if (e > containment) {
      containment = e;
      worst = Witness{z, k, 0, "interior image left the rectangle"};
    }
  }

  // Boundary images must sit on the rectangle boundary and cover it.
  const auto boundary = sample_c2_boundary(region, n_samples);
  double offset = 0.0;
  std::vector<double> top, bottom, left, right;
  const double side_tol = 1e-9 * std::max(1.0, target.a);
  for (const cd& z : boundary) {
    const cd w = q_map(beta, z);
    offset = std::max(offset, dist_to_rect_boundary(target, w));
    const double dh = target.b - std::abs(w.imag());  // distance to a flat side
    const double dv = target.a - std::abs(w.real());  // distance to an end side
    bool classified = false;
    if (dh <= side_tol) {  // corners land on both lists
      (w.imag() > 0.0 ? top : bottom).push_back(w.real());
      classified = true;
    }
    if (dv <= side_tol) {
      (w.real() > 0.0 ? right : left).push_back(w.imag());
      classified = true;
    }
    if (!classified) {  // off-boundary stray; attribute to the nearest side
      if (dh <= dv)
        (w.imag() > 0.0 ? top : bottom).push_back(w.real());
      else
        (w.real() > 0.0 ? right : left).push_back(w.imag());
    }
  }
  double cover = 0.0;
  cover = std::max(cover, side_cover_gap(top, -target.a, target.a));
  cover = std::max(cover, side_cover_gap(bottom, -target.a, target.a));
  cover = std::max(cover, side_cover_gap(left, -target.b, target.b));
  cover = std::max(cover, side_cover_gap(right, -target.b, target.b));

  rep.samples_used = static_cast<long>(interior.size() + boundary.size());
  rep.metrics = {{"containment_violation", containment},
                 {"boundary_offset", offset},
                 {"cover_distance", cover},
                 {"rect_halfwidth", target.a},
                 {"rect_halfheight", target.b}};
  rep.max_violation = std::max({containment, offset - kMembershipTol, cover - cover_tol});
  rep.passed = containment <= kMembershipTol && offset <= kMembershipTol && cover <= cover_tol;
  if (!rep.passed) rep.witness = worst;
  return rep;
}

std::pair<double, double> approx_gap(double beta, cd beta_prime, double delta, int k,
                                     long n_samples, std::uint64_t seed) {
  const RegionC2 region{beta, delta, k};
  auto samples = sample_c2_interior(region, (3 * n_samples) / 4, seed);
  const auto boundary = sample_c2_boundary(region, n_samples / 4);
  samples.insert(samples.end(), boundary.begin(), boundary.end());
  double sup_pq = 0.0, sup_pp = 0.0;
  const cd beta_c(beta, 0.0);
  for (const cd& z : samples) {
    const cd p_here = p_map(beta_c, z);
    sup_pq = std::max(sup_pq, std::abs(p_here - q_map(beta, z)));
    sup_pp = std::max(sup_pp, std::abs(p_here - p_map(beta_prime, z)));
  }
  return {sup_pq, sup_pp};
}

double measured_deriv_sup(cd beta_prime, int k, const Rectangle& C, long n_grid) {
  long side = std::lround(std::ceil(std::sqrt(static_cast<double>(std::max<long>(n_grid, 9)))));
  if (side % 2 == 0) ++side;  // odd count puts 0 on the grid
  double sup = 0.0;
  for (long i = 0; i < side; ++i) {
    const double x = C.a * (2.0 * static_cast<double>(i) / static_cast<double>(side - 1) - 1.0);
    for (long j = 0; j < side; ++j) {
      const double y = C.b * (2.0 * static_cast<double>(j) / static_cast<double>(side - 1) - 1.0);
      sup = std::max(sup, std::abs(f_phi_deriv(beta_prime, k, cd(x, y))));
    }
  }
  return sup;
}

VerificationReport check_rect_contraction(cd beta_prime, int k, const Rectangle& C, double chi,
                                          double tau, double xi, long n_samples,
                                          std::uint64_t seed) {
  static constexpr double kFractions[] = {1.0, 0.7, 0.5, 0.3, 0.15, 0.07, 0.03, 0.01};
  constexpr int kNumFractions = 8;
  const int n_rects = kNumFractions * kNumFractions;
  const long per_rect = std::max<long>(4, n_samples / (2 * n_rects));

  VerificationReport rep;
  rep.seed = seed;
  rep.params = {{"beta_prime_re", beta_prime.real()}, {"beta_prime_im", beta_prime.imag()},
                {"k", static_cast<double>(k)},        {"C_a", C.a},
                {"C_b", C.b},                         {"chi", chi},
                {"tau", tau},                         {"xi", xi}};
  rep.max_violation = -kInf;

  Rng rng(seed);
  long used = 0;
  double worst_ratio = 0.0;
  for (double fa : kFractions) {
    for (double fb : kFractions) {
      const double a = fa * C.a, b = fb * C.b;
      std::vector<cd> pts = {{a, 0.0}, {-a, 0.0}, {0.0, b}, {0.0, -b},
                             {a, b},   {a, -b},   {-a, b},  {-a, -b}};
      for (long i = 0; i < per_rect; ++i) {
        // Half the extra points on the rectangle boundary, half inside.
        const double u = 2.0 * rng.uniform() - 1.0;
        const double v = 2.0 * rng.uniform() - 1.0;
        if (i % 2 == 0) {
          const bool vertical = rng.uniform() < 0.5;
          pts.emplace_back(vertical ? (u < 0 ? -a : a) : u * a,
                           vertical ? v * b : (v < 0 ? -b : b));
        } else {
          pts.emplace_back(u * a, v * b);
        }
      }
      for (const cd& z : pts) {
        ++used;
        cd image;
        try {
          image = f_phi(beta_prime, k, 0, z);
        } catch (const Error&) {
          rep.passed = false;
          rep.max_violation = kInf;
          rep.witness = Witness{z, k, 0, "map undefined at sample"};
          rep.samples_used = used;
          return rep;
        }
        const double bound_re = chi * std::max(a, tau);
        const double bound_im = chi * std::max(b, xi);
        const double viol =
            std::max(std::abs(image.real()) - bound_re, std::abs(image.imag()) - bound_im);
        rep.max_violation = std::max(rep.max_violation, viol);
        // The witness is the proportionally worst sample, which puts it at
        // the location where the shrink factor itself is violated.
        const double ratio =
            std::max(std::abs(image.real()) / bound_re, std::abs(image.imag()) / bound_im);
        if (viol > 1e-12 && ratio > worst_ratio) {
          worst_ratio = ratio;
          rep.witness = Witness{z, k, 0, "worst sample (sub-rectangle " + std::to_string(a) +
                                             " x " + std::to_string(b) + ")"};
        }
      }
    }
  }
  rep.samples_used = used;
  rep.passed = rep.max_violation <= 1e-12;
  if (rep.passed) rep.witness.reset();
  rep.metrics = {{"max_violation", rep.max_violation}};
  return rep;
}

namespace {

// Signed membership defect of the recurrence-closed region, usable for both
// the generic region (log h_{beta'} into C2) and the beta = 1 construction
// (log into a small square). Positive values mean "outside".
struct RegionProbe {
  bool exp_square = false;  // beta == 1 construction: D = exp(R(eps, eps))
  cd beta_prime;
  RegionC2 c2;
  double eps = 0.0;

  double excess(cd z) const {
    if (exp_square) {
      if (!(z.real() > 0.0)) return 1.0;
      const cd x = std::log(z);
      return std::max(std::abs(x.real()) - eps, std::abs(x.imag()) - eps);
    }
    const cd den = beta_prime * z + 1.0;
    if (den == cd(0.0, 0.0)) return 1.0;
    const cd w = (beta_prime + z) / den;
    if (!(w.real() > 0.0)) return 1.0;
    return c2.excess(std::log(w));
  }

  bool contains(cd z, double tol = kMembershipTol) const { return excess(z) <= tol; }
};

}  // namespace

VerificationReport verify_region_closure(double beta, cd beta_prime, double delta, int delta_cap,
                                         long n_samples, std::uint64_t seed, bool fail_fast) {
  if (delta_cap < 2) throw Error("verify_region_closure needs delta_cap >= 2");
  const int d = delta_cap - 1;
  if (!uniqueness_interval(delta_cap).contains(beta))
    throw Error("verify_region_closure: beta outside the uniqueness interval");

  VerificationReport rep;
  rep.seed = seed;
  rep.params = {{"beta", beta},
                {"beta_prime_re", beta_prime.real()},
                {"beta_prime_im", beta_prime.imag()},
                {"delta", delta},
                {"delta_cap", static_cast<double>(delta_cap)}};

  // Build the membership probe and a sample pool covering D.
  RegionProbe probe;
  std::vector<cd> pool;
  const long n_interior = (7 * n_samples) / 10;
  const long n_boundary = n_samples - n_interior;
  if (beta == 1.0) {
    probe.exp_square = true;
    probe.eps = delta;
    Rng rng(seed);
    pool.emplace_back(1.0, 0.0);
    for (long i = 0; i < n_interior; ++i) {
      const double u = (static_cast<double>(i) + rng.uniform()) / n_interior;
      const cd x(delta * (2.0 * u - 1.0), delta * (2.0 * rng.uniform() - 1.0));
      pool.push_back(std::exp(x));
    }
    const long per_side = std::max<long>(2, n_boundary / 4);
    for (long j = 0; j < per_side; ++j) {
      const double t = delta * (-1.0 + 2.0 * static_cast<double>(j) / (per_side - 1));
      pool.push_back(std::exp(cd(t, delta)));
      pool.push_back(std::exp(cd(t, -delta)));
      pool.push_back(std::exp(cd(delta, t)));
      pool.push_back(std::exp(cd(-delta, t)));
    }
  } else {
    probe.beta_prime = beta_prime;
    probe.c2 = RegionC2{beta, delta, d};
    auto xs = sample_c2_interior(probe.c2, n_interior, seed);
    const auto xb = sample_c2_boundary(probe.c2, n_boundary);
    xs.insert(xs.end(), xb.begin(), xb.end());
    pool.reserve(xs.size());
    for (const cd& x : xs) pool.push_back(h_inverse(beta_prime, std::exp(x)));
  }
  rep.samples_used = static_cast<long>(pool.size());

  auto fail = [&](cd z, int k, int s, const std::string& what, double violation) {
    rep.passed = false;
    rep.max_violation = std::max(rep.max_violation, violation);
    if (!rep.witness) rep.witness = Witness{z, k, s, what};
  };

  // Fixed points of the construction.
  if (!probe.contains(cd(1.0, 0.0))) fail(cd(1.0, 0.0), 0, 0, "1 not in D", 1.0);
  if (probe.contains(cd(-1.0, 0.0))) fail(cd(-1.0, 0.0), 0, 0, "-1 in D", 1.0);
  rep.metrics["one_in_d"] = probe.contains(cd(1.0, 0.0)) ? 1.0 : 0.0;

  double max_excess = -kInf;
  double margin = kInf;
  bool aborted = false;
  for (int k = 0; k <= delta_cap && !aborted; ++k) {
    const int s_span = delta_cap - k;
    for (int s = -s_span; s <= s_span && !aborted; ++s) {
      const int arity = k + std::abs(s);
      if (arity < 1 || arity > delta_cap) continue;
      const bool closure_pair = arity <= d && k <= d;
      for (const cd& z : pool) {
        cd w;
        try {
          w = f_uni(beta_prime, k, s, z);
        } catch (const Error&) {
          fail(z, k, s, "recurrence map undefined on D sample", kInf);
          aborted = true;
          break;
        }
        margin = std::min(margin, std::abs(w + 1.0));
        if (closure_pair) {
          const double e = probe.excess(w);
          max_excess = std::max(max_excess, e);
          if (e > kMembershipTol) {
            fail(z, k, s, "image left D", e);
            if (fail_fast) {
              aborted = true;
              break;
            }
          }
        }
      }
    }
  }

  // Multivariate spot-check: independent inputs, then the same membership,
  // plus recovery of a univariate preimage inside D (skipped for beta = 1,
  // where no convexity reduction is claimed).
  long tuples_checked = 0;
  if (!aborted && d >= 2 && !pool.empty()) {
    Rng rng = Rng::fork(seed, 0x70011e5ULL);
    const long n_tuples = 1000;
    std::vector<cd> xs;
    for (long t = 0; t < n_tuples && !aborted; ++t) {
      const int k = 2 + static_cast<int>(rng.below(static_cast<std::uint64_t>(d - 1)));
      const int s_span2 = d - k;
      const int s = s_span2 == 0
                        ? 0
                        : -s_span2 + static_cast<int>(rng.below(
                              static_cast<std::uint64_t>(2 * s_span2 + 1)));
      xs.clear();
      for (int i = 0; i < k; ++i) xs.push_back(pool[rng.below(pool.size())]);
      cd w;
      try {
        w = F_multi(beta_prime, k, s, xs);
      } catch (const Error&) {
        fail(xs[0], k, s, "multivariate map undefined", kInf);
        break;
      }
      ++tuples_checked;
      const double e = probe.excess(w);
      if (e > kMembershipTol) {
        fail(xs[0], k, s, "multivariate image left D", e);
        if (fail_fast) break;
        continue;
      }
      if (!probe.exp_square) {
        // Invert through the univariate map: some k-th root branch must give
        // a preimage that lies in D and reproduces w.
        bool recovered = false;
        const cd base = (std::log(w) - static_cast<double>(s) * std::log(beta_prime)) /
                        static_cast<double>(k);
        for (int j = 0; j < k && !recovered; ++j) {
          const cd xr = base + cd(0.0, 2.0 * M_PI * j / k);
          try {
            const cd z_pre = h_inverse(beta_prime, std::exp(xr));
            recovered = std::abs(f_uni(beta_prime, k, s, z_pre) - w) <= 1e-6 &&
                        probe.contains(z_pre);
          } catch (const Error&) {
          }
        }
        if (!recovered) {
          fail(xs[0], k, s, "multivariate image lacks a univariate preimage in D", 1.0);
          if (fail_fast) break;
        }
      }
    }
  }

  rep.metrics["margin"] = margin;
  rep.metrics["max_excess"] = max_excess;
  rep.metrics["tuples_checked"] = static_cast<double>(tuples_checked);
  if (!rep.witness) {
    rep.passed = margin > 0.0;
    rep.max_violation = max_excess;
    if (!rep.passed) rep.witness = Witness{cd(0, 0), 0, 0, "zero margin at -1"};
  }
  return rep;
}

DeltaSearchResult search_delta(double beta, int delta_cap, const DeltaGrid& grid, long n_samples,
                               std::uint64_t seed) {
  if (!uniqueness_interval(delta_cap).contains(beta))
    throw Error("search_delta: beta outside the uniqueness interval");
  DeltaSearchResult result;
  for (double db = grid.delta_beta_max; db >= grid.delta_beta_min; db *= grid.factor) {
    for (double dl = grid.delta_max; dl >= grid.delta_min; dl *= grid.factor) {
      bool all_passed = true;
      double margin = kInf;
      for (int probe = 0; probe < 8 && all_passed; ++probe) {
        const double angle = 2.0 * M_PI * probe / 8.0;
        const cd beta_prime = cd(beta, 0.0) + db * cd(std::cos(angle), std::sin(angle));
        const auto rep = verify_region_closure(beta, beta_prime, dl, delta_cap, n_samples,
                                               seed + probe, /*fail_fast=*/true);
        all_passed = rep.passed;
        if (rep.passed) margin = std::min(margin, rep.metrics.at("margin"));
      }
      if (all_passed) {
        result.found = true;
        result.delta = dl;
        result.delta_beta = db;
        result.margin = margin;
        return result;
      }
    }
  }
  return result;
}

}  // namespace fisher
