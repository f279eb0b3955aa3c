#include "fisher/zeros.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <sstream>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <json.hpp>

#include "fisher/errors.hpp"
#include "fisher/maps.hpp"
#include "fisher/parallel.hpp"

namespace fisher {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Parlett-Reinsch balancing: similarity-scale by powers of 2 until row and
// column norms are comparable. Exact in floating point, improves companion
// eigenvalue conditioning considerably for uneven coefficient scales.
template <typename Matrix>
void balance_in_place(Matrix& m) {
  const int n = static_cast<int>(m.rows());
  const double radix = 2.0;
  bool converged = false;
  while (!converged) {
    converged = true;
    for (int i = 0; i < n; ++i) {
      double c = 0.0, r = 0.0;
      for (int j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(m(j, i));
        r += std::abs(m(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      while (c < r / radix) {
        c *= radix;
        r /= radix;
        f *= radix;
      }
      while (c >= r * radix) {
        c /= radix;
        r *= radix;
        f /= radix;
      }
      if (f != 1.0 && c + r < 0.95 * s) {
        converged = false;
        m.row(i) /= f;
        m.col(i) *= f;
      }
    }
  }
}

template <typename Scalar>
std::complex<double> horner(const std::vector<Scalar>& coeffs, std::complex<double> x) {
  std::complex<double> acc = 0.0;
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 0; --k) acc = acc * x + coeffs[k];
  return acc;
}

template <typename Scalar>
std::complex<double> horner_deriv(const std::vector<Scalar>& coeffs, std::complex<double> x) {
  std::complex<double> acc = 0.0;
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 1; --k)
    acc = acc * x + static_cast<double>(k) * coeffs[k];
  return acc;
}

// One guarded Newton step; keeps the original point unless the residual drops.
template <typename Scalar>
std::complex<double> polish_root(const std::vector<Scalar>& coeffs, std::complex<double> r) {
  const std::complex<double> p = horner(coeffs, r);
  const std::complex<double> dp = horner_deriv(coeffs, r);
  if (std::abs(dp) == 0.0) return r;
  const std::complex<double> r2 = r - p / dp;
  return std::abs(horner(coeffs, r2)) <= std::abs(p) ? r2 : r;
}

template <typename Scalar>
int trimmed_degree(const std::vector<Scalar>& coeffs) {
  int deg = static_cast<int>(coeffs.size()) - 1;
  while (deg >= 0 && coeffs[deg] == Scalar(0)) --deg;
  return deg;
}

}  // namespace

std::vector<std::complex<double>> roots_real_coeffs(std::vector<double> coeffs) {
  const int deg = trimmed_degree(coeffs);
  if (deg < 1) return {};
  coeffs.resize(deg + 1);
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(deg, deg);
  for (int i = 0; i + 1 < deg; ++i) companion(i + 1, i) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -coeffs[i] / coeffs[deg];
  balance_in_place(companion);
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  std::vector<std::complex<double>> roots;
  roots.reserve(deg);
  for (int i = 0; i < deg; ++i) roots.push_back(polish_root(coeffs, solver.eigenvalues()[i]));
  return roots;
}

std::vector<std::complex<double>> roots_complex_coeffs(
    std::vector<std::complex<double>> coeffs) {
  const int deg = trimmed_degree(coeffs);
  if (deg < 1) return {};
  coeffs.resize(deg + 1);
  Eigen::MatrixXcd companion = Eigen::MatrixXcd::Zero(deg, deg);
  for (int i = 0; i + 1 < deg; ++i) companion(i + 1, i) = 1.0;
  for (int i = 0; i < deg; ++i) companion(i, deg - 1) = -coeffs[i] / coeffs[deg];
  balance_in_place(companion);
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(companion, false);
  std::vector<std::complex<double>> roots;
  roots.reserve(deg);
  for (int i = 0; i < deg; ++i) roots.push_back(polish_root(coeffs, solver.eigenvalues()[i]));
  return roots;
}

ZeroSet fisher_zeros(const CutPolynomial& poly) {
  ZeroSet zs;
  const int deg = poly.degree();
  if (deg < 1) {
    zs.degenerate = true;
    return zs;
  }

  // Common-factor removal keeps the double conversion exact much longer.
  mpz_class g = 0;
  for (const auto& c : poly.gammas)
    if (c != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  std::vector<double> coeffs(deg + 1);
  for (int k = 0; k <= deg; ++k) coeffs[k] = mpz_class(poly.gammas[k] / g).get_d();

  // Roots at the origin are exact: peel zero constant terms before solving.
  int origin = 0;
  while (origin <= deg && coeffs[origin] == 0.0) ++origin;
  for (int i = 0; i < origin; ++i) zs.roots.emplace_back(0.0, 0.0);
  zs.roots.reserve(deg);
  const std::vector<double> reduced(coeffs.begin() + origin, coeffs.end());
  for (const auto& r : roots_real_coeffs(reduced)) zs.roots.push_back(r);

  for (const auto& r : zs.roots) {
    double scale = 0.0;
    double pw = 1.0;
    const double ar = std::abs(r);
    for (int k = 0; k <= deg; ++k) {
      scale += std::abs(coeffs[k]) * pw;
      pw *= ar;
    }
    if (scale > 0.0)
      zs.max_residual = std::max(zs.max_residual, std::abs(horner(coeffs, r)) / scale);
  }

  // Union-find clustering with a 1e-7 merge radius.
  const double radius = 1e-7;
  const int m = static_cast<int>(zs.roots.size());
  std::vector<int> parent(m);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (std::abs(zs.roots[i] - zs.roots[j]) <= radius) parent[find(i)] = find(j);
  std::vector<std::complex<double>> sums(m, 0.0);
  std::vector<int> counts(m, 0);
  for (int i = 0; i < m; ++i) {
    sums[find(i)] += zs.roots[i];
    ++counts[find(i)];
  }
  for (int i = 0; i < m; ++i)
    if (find(i) == i) zs.clusters.push_back({sums[i] / static_cast<double>(counts[i]), counts[i]});
  return zs;
}

double zero_free_margin(const ZeroSet& zs, int delta_cap, double shrink) {
  if (shrink < 0.0) throw Error("zero_free_margin: negative shrink");
  double lo, hi;
  const auto b = uniqueness_interval(delta_cap);
  if (b.all_positive) {
    lo = shrink;
    hi = kInf;
  } else {
    if (shrink >= (b.hi - b.lo) / 2.0) throw Error("zero_free_margin: shrink swallows the interval");
    lo = b.lo + shrink;
    hi = b.hi - shrink;
  }
  double margin = kInf;
  for (const auto& r : zs.roots) {
    double d;
    if (r.real() < lo)
      d = std::abs(r - std::complex<double>(lo, 0.0));
    else if (r.real() > hi)
      d = std::abs(r - std::complex<double>(hi, 0.0));
    else
      d = std::abs(r.imag());
    margin = std::min(margin, d);
  }
  return margin;
}

namespace {

std::vector<PinnedGraph> expand_spec(const ScanSpec& spec) {
  std::vector<PinnedGraph> graphs;
  if (spec.family == Family::random_regular) {
    // Sizes cycle over the admissible values in [size_lo, size_hi].
    std::vector<int> sizes;
    for (int n = spec.size_lo; n <= spec.size_hi; ++n)
      if ((static_cast<long>(n) * spec.degree) % 2 == 0 && n > spec.degree) sizes.push_back(n);
    if (sizes.empty()) throw Error("random_regular scan: no admissible sizes");
    for (int i = 0; i < spec.count; ++i)
      graphs.push_back(generate_family(Family::random_regular, sizes[i % sizes.size()],
                                       spec.degree, spec.seed + static_cast<std::uint64_t>(i)));
  } else {
    for (int n = spec.size_lo; n <= spec.size_hi; ++n)
      graphs.push_back(generate_family(spec.family, n));
  }
  return graphs;
}

}  // namespace

std::vector<ScanRow> scan_family(const std::vector<ScanSpec>& specs, int delta_cap_override,
                                 double shrink, int threads) {
  std::vector<PinnedGraph> graphs;
  std::vector<std::string> names;
  for (const auto& spec : specs) {
    for (auto& g : expand_spec(spec)) {
      graphs.push_back(std::move(g));
      names.push_back(family_name(spec.family));
    }
  }
  std::vector<ScanRow> rows(graphs.size());
  parallel_for(static_cast<long>(graphs.size()), threads, [&](long i) {
    const PinnedGraph& g = graphs[i];
    const auto poly = cut_polynomial(g);
    const auto zs = fisher_zeros(poly);
    ScanRow row;
    row.family = names[i];
    row.n = g.n_vertices;
    row.delta = delta_cap_override > 0 ? delta_cap_override : g.delta_cap;
    row.degree = poly.degree();
    row.num_zeros = static_cast<int>(zs.roots.size());
    row.margin = zero_free_margin(zs, row.delta, shrink);
    row.roots = zs.roots;
    if (!zs.roots.empty()) {
      // Witness: the root realizing the margin.
      double best = kInf;
      ZeroSet one;
      for (const auto& r : zs.roots) {
        one.roots = {r};
        const double d = zero_free_margin(one, row.delta, shrink);
        if (d < best) {
          best = d;
          row.min_root = r;
        }
      }
    }
    rows[i] = std::move(row);
  });
  return rows;
}

namespace {

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

}  // namespace

std::string scan_to_csv(const std::vector<ScanRow>& rows) {
  std::ostringstream out;
  out << "family,n,delta,degree,num_zeros,margin,min_root_re,min_root_im\n";
  for (const auto& r : rows) {
    out << r.family << "," << r.n << "," << r.delta << "," << r.degree << "," << r.num_zeros
        << "," << fmt_double(r.margin) << "," << fmt_double(r.min_root.real()) << ","
        << fmt_double(r.min_root.imag()) << "\n";
  }
  return out.str();
}

std::string scan_to_json(const std::vector<ScanRow>& rows, double shrink) {
  nlohmann::json j;
  j["shrink"] = shrink;
  double global_min = kInf;
  auto& arr = j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row;
    row["family"] = r.family;
    row["n"] = r.n;
    row["delta"] = r.delta;
    row["degree"] = r.degree;
    row["num_zeros"] = r.num_zeros;
    row["margin"] = r.margin;
    row["min_root"] = {{"re", r.min_root.real()}, {"im", r.min_root.imag()}};
    auto& roots = row["roots"] = nlohmann::json::array();
    for (const auto& z : r.roots) roots.push_back({{"re", z.real()}, {"im", z.imag()}});
    arr.push_back(std::move(row));
    global_min = std::min(global_min, r.margin);
  }
  j["min_margin"] = global_min;
  return j.dump(2);
}

}  // namespace fisher
