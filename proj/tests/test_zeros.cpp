#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include <json.hpp>

#include "fisher/exact.hpp"
#include "fisher/graph.hpp"
#include "fisher/zeros.hpp"

using namespace fisher;
using cd = std::complex<double>;

namespace {

bool has_root_near(const ZeroSet& zs, cd target, double tol) {
  return std::any_of(zs.roots.begin(), zs.roots.end(),
                     [&](const cd& r) { return std::abs(r - target) <= tol; });
}

ZeroSet zeros_of(const PinnedGraph& g) { return fisher_zeros(cut_polynomial(g)); }

}  // namespace

TEST_CASE("reference zero sets") {
  const auto k2 = zeros_of(load_graph("e 0 1"));
  REQUIRE(k2.roots.size() == 1);
  CHECK(std::abs(k2.roots[0] - cd(-1.0, 0.0)) < 1e-12);

  const auto tri = zeros_of(generate_family(Family::cycle, 3));
  REQUIRE(tri.roots.size() == 2);
  const double r3 = 1.0 / std::sqrt(3.0);
  CHECK(has_root_near(tri, cd(0.0, r3), 1e-10));
  CHECK(has_root_near(tri, cd(0.0, -r3), 1e-10));

  const auto c4 = zeros_of(generate_family(Family::cycle, 4));
  REQUIRE(c4.roots.size() == 4);
  const double lo = std::sqrt(2.0) - 1.0, hi = std::sqrt(2.0) + 1.0;
  for (double sign : {1.0, -1.0}) {
    CHECK(has_root_near(c4, cd(0.0, sign * lo), 1e-8));
    CHECK(has_root_near(c4, cd(0.0, sign * hi), 1e-8));
  }
}

TEST_CASE("residuals, conjugate symmetry, and Vieta across families") {
  std::vector<CutPolynomial> polys;
  // Degree-40 case built in closed form: a 41-vertex chain has
  // gamma_k = 2 binom(40, k), too many vertices to enumerate directly.
  {
    CutPolynomial chain;
    chain.n_free = 41;
    for (int k = 0; k <= 40; ++k) {
      mpz_class b;
      mpz_bin_uiui(b.get_mpz_t(), 40, static_cast<unsigned long>(k));
      chain.gammas.push_back(2 * b);
    }
    polys.push_back(std::move(chain));
  }
  polys.push_back(cut_polynomial(generate_family(Family::path, 12)));
  polys.push_back(cut_polynomial(generate_family(Family::cycle, 12)));
  polys.push_back(cut_polynomial(generate_family(Family::cycle, 20)));
  polys.push_back(cut_polynomial(generate_family(Family::complete, 6)));
  for (std::uint64_t s = 1; s <= 4; ++s)
    polys.push_back(cut_polynomial(generate_family(Family::random_regular, 10, 3, s)));

  for (const auto& poly : polys) {
    const auto zs = fisher_zeros(poly);
    const int deg = poly.degree();
    int origin = 0;
    while (poly.gammas[origin] == 0) ++origin;
    CHECK(static_cast<int>(zs.roots.size()) == deg);  // count with multiplicity
    CHECK(zs.max_residual <= 1e-8);

    // Real coefficients: the root multiset is closed under conjugation.
    for (const auto& r : zs.roots) {
      double best = 1e18;
      for (const auto& other : zs.roots) best = std::min(best, std::abs(std::conj(r) - other));
      CHECK(best <= 1e-9);
    }

    // Product of roots times leading coefficient recovers the low coefficient.
    cd prod = 1.0;
    for (const auto& r : zs.roots) prod *= r;
    const double lead = poly.gammas[deg].get_d();
    const double low = poly.gammas[origin].get_d();
    CHECK(std::abs(std::abs(prod) * lead - low) <= 1e-8 * low);
  }
}

TEST_CASE("multiplicity clustering merges the K4 double root") {
  const auto zs = zeros_of(generate_family(Family::complete, 4));
  REQUIRE(zs.roots.size() == 4);
  bool found_double = false;
  for (const auto& c : zs.clusters)
    if (std::abs(c.value - cd(-1.0, 0.0)) < 1e-6 && c.multiplicity == 2) found_double = true;
  CHECK(found_double);
  CHECK(has_root_near(zs, cd(1.0 / 3.0, std::sqrt(2.0) / 3.0), 1e-9));
}

TEST_CASE("origin roots are peeled exactly and constants are degenerate") {
  const auto opposite = zeros_of(load_graph("e 0 1\npin 0 +\npin 1 -"));  // Z = beta
  REQUIRE(opposite.roots.size() == 1);
  CHECK(opposite.roots[0] == cd(0.0, 0.0));
  CHECK(!opposite.degenerate);

  const auto same = zeros_of(load_graph("e 0 1\npin 0 +\npin 1 +"));  // Z = 1
  CHECK(same.degenerate);
  CHECK(same.roots.empty());
  CHECK(zero_free_margin(same, 3, 0.05) == std::numeric_limits<double>::infinity());
}

TEST_CASE("zero-free margins") {
  const auto k2 = zeros_of(load_graph("e 0 1"));
  CHECK(zero_free_margin(k2, 3, 0.0) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));

  const auto c4 = zeros_of(generate_family(Family::cycle, 4));
  const double margin = zero_free_margin(c4, 3, 0.0);
  CHECK(margin >= std::sqrt(2.0) - 1.0);
  CHECK(margin == doctest::Approx(std::hypot(1.0 / 3.0, std::sqrt(2.0) - 1.0)).epsilon(1e-9));

  // Degenerate interval for caps <= 2: distance to [shrink, infinity).
  CHECK(zero_free_margin(k2, 2, 0.05) == doctest::Approx(1.05).epsilon(1e-12));

  CHECK_THROWS(zero_free_margin(k2, 3, 4.0 / 3.0));  // shrink swallows interval
  CHECK_THROWS(zero_free_margin(k2, 3, -0.1));
}

TEST_CASE("family scan") {
  std::vector<ScanSpec> specs;
  specs.push_back({Family::cycle, 3, 6, 0, 0, 1});
  specs.push_back({Family::path, 2, 2, 0, 0, 1});
  const auto rows = scan_family(specs, 3, 0.0, 1);
  REQUIRE(rows.size() == 5);
  for (const auto& r : rows) CHECK(r.margin > 0.0);

  // Single edge: margin 4/3 against the cap-3 interval.
  CHECK(rows.back().family == "path");
  CHECK(rows.back().margin == doctest::Approx(4.0 / 3.0).epsilon(1e-12));

  // Per-graph caps when no override is given.
  const auto own = scan_family({{Family::cycle, 4, 4, 0, 0, 1}}, 0, 0.05, 1);
  CHECK(own[0].delta == 2);

  const auto csv = scan_to_csv(rows);
  CHECK(csv.rfind("family,n,delta,degree,num_zeros,margin,min_root_re,min_root_im\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 6);
  CHECK(csv == scan_to_csv(scan_family(specs, 3, 0.0, 1)));  // deterministic

  const auto j = nlohmann::json::parse(scan_to_json(rows, 0.0));
  CHECK(j.at("rows").size() == 5);
  CHECK(j.at("min_margin").get<double>() > 0.0);
}

TEST_CASE("random-regular scan rows stay clear of the interval") {
  const auto rows = scan_family({{Family::random_regular, 6, 10, 3, 6, 7}}, 0, 0.05, 1);
  REQUIRE(rows.size() == 6);
  for (const auto& r : rows) {
    CHECK(r.delta == 3);
    CHECK(r.margin > 0.0);
  }
}
