#include "fisher/approx.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "fisher/errors.hpp"
#include "fisher/parallel.hpp"
#include "fisher/zeros.hpp"

namespace fisher {

using cd = std::complex<double>;

std::vector<cd> log_taylor_coeffs(const std::vector<cd>& p_coeffs, int m) {
  if (p_coeffs.empty() || p_coeffs[0] == cd(0.0, 0.0))
    throw Error("log_taylor_coeffs: constant term must be nonzero");
  const int deg = static_cast<int>(p_coeffs.size()) - 1;
  std::vector<cd> a(deg + 1);
  for (int j = 0; j <= deg; ++j) a[j] = p_coeffs[j] / p_coeffs[0];
  std::vector<cd> c(m + 1, cd(0.0, 0.0));
  for (int j = 1; j <= m; ++j) {
    cd acc = j <= deg ? static_cast<double>(j) * a[j] : cd(0.0, 0.0);
    const int lo = std::max(1, j - deg);
    for (int i = lo; i < j; ++i) acc -= static_cast<double>(i) * c[i] * a[j - i];
    c[j] = acc / static_cast<double>(j);
  }
  return {c.begin() + 1, c.end()};
}

namespace {

constexpr int kTailCap = 2000;

double tail_bound(int deg, double inv_rho, int m) {
  return deg * std::pow(inv_rho, m + 1) / ((m + 1) * (1.0 - inv_rho));
}

}  // namespace

BarvinokResult barvinok_try(const PinnedGraph& g, cd beta, double eps, int cap) {
  if (!(eps > 0.0)) throw Error("barvinok: eps must be positive");
  const CutPolynomial poly = cut_polynomial(g, cap);
  const mpz_class p0_int = poly.coefficient_sum();  // Z(1) = 2^n_free
  BarvinokResult res;

  const cd u = beta - 1.0;
  if (u == cd(0.0, 0.0)) {
    res.z_hat = p0_int.get_d();
    res.rho = std::numeric_limits<double>::infinity();
    res.certified = true;
    res.status = "ok";
    return res;
  }

  // Exact binomial re-expansion: p_j = (sum_{k>=j} gamma_k C(k,j)) (beta-1)^j,
  // with the inner sum done in integers so conversion loses nothing.
  const int gdeg = poly.degree();
  std::vector<cd> p;
  cd upow = 1.0;
  for (int j = 0; j <= std::max(gdeg, 0); ++j) {
    mpz_class s = 0, binom;
    for (int k = j; k <= gdeg; ++k) {
      mpz_bin_uiui(binom.get_mpz_t(), static_cast<unsigned long>(k),
                   static_cast<unsigned long>(j));
      s += poly.gammas[k] * binom;
    }
    p.push_back(s.get_d() * upow);
    upow *= u;
  }
  while (p.size() > 1 && p.back() == cd(0.0, 0.0)) p.pop_back();
  const int deg = static_cast<int>(p.size()) - 1;

  if (deg == 0) {
    res.z_hat = p[0];
    res.rho = std::numeric_limits<double>::infinity();
    res.certified = true;
    res.status = "ok";
    return res;
  }

  double rho = std::numeric_limits<double>::infinity();
  for (const cd& t : roots_complex_coeffs(p)) rho = std::min(rho, std::abs(t));
  res.rho = rho;
  if (!(rho > 1.0)) {
    res.status = "rho<=1";
    return res;
  }

  const double inv_rho = 1.0 / rho;
  const double budget = std::log1p(eps);
  int m = -1;
  for (int cand = 0; cand <= kTailCap; ++cand) {
    if (tail_bound(deg, inv_rho, cand) <= budget) {
      m = cand;
      break;
    }
  }
  if (m < 0) {
    res.status = "tail-cap";
    return res;
  }

  const auto c = log_taylor_coeffs(p, m);
  cd log_z = std::log(p[0]);
  for (const cd& cj : c) log_z += cj;  // series evaluated at t = 1
  res.z_hat = std::exp(log_z);
  res.m_used = m;
  res.tail_bound = tail_bound(deg, inv_rho, m);
  res.certified = true;
  res.status = "ok";
  return res;
}

BarvinokResult barvinok_estimate(const PinnedGraph& g, cd beta, double eps, int cap) {
  BarvinokResult res = barvinok_try(g, beta, eps, cap);
  if (!res.certified) throw CertificateError(res.rho);
  return res;
}

std::vector<ErrorRow> error_report(const PinnedGraph& g, const std::vector<cd>& betas,
                                   const std::vector<double>& eps_list, int threads) {
  const CutPolynomial poly = cut_polynomial(g);
  std::vector<std::pair<cd, double>> cells;
  for (const cd& b : betas)
    for (double e : eps_list) cells.emplace_back(b, e);
  std::vector<ErrorRow> rows(cells.size());
  parallel_for(static_cast<long>(cells.size()), threads, [&](long i) {
    const auto [beta, eps] = cells[i];
    ErrorRow row;
    row.beta = beta;
    row.eps = eps;
    const BarvinokResult res = barvinok_try(g, beta, eps);
    row.m_used = res.m_used;
    row.rho = res.rho;
    row.certified = res.certified;
    if (res.certified) {
      const cd exact = evaluate_Z(poly, beta);
      row.rel_error = std::abs(res.z_hat - exact) / std::abs(exact);
      row.ok = row.rel_error <= eps;
    } else {
      row.rel_error = std::numeric_limits<double>::quiet_NaN();
      row.ok = false;
    }
    rows[i] = row;
  });
  return rows;
}

std::string error_report_csv(const std::vector<ErrorRow>& rows) {
  std::ostringstream out;
  out << "beta_re,beta_im,eps,m_used,rho,rel_error,ok\n";
  char buf[200];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof(buf), "%.12g,%.12g,%.3g,%d,%.12g,%.12g,%d\n", r.beta.real(),
                  r.beta.imag(), r.eps, r.m_used, r.rho, r.rel_error, r.ok ? 1 : 0);
    out << buf;
  }
  return out.str();
}

}  // namespace fisher
