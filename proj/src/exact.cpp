#include "fisher/exact.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include <json.hpp>

#include "fisher/errors.hpp"

namespace fisher {

int CutPolynomial::degree() const {
  for (int k = static_cast<int>(gammas.size()) - 1; k >= 0; --k)
    if (gammas[k] != 0) return k;
  return -1;
}

mpz_class CutPolynomial::coefficient_sum() const {
  mpz_class s = 0;
  for (const auto& g : gammas) s += g;
  return s;
}

std::string CutPolynomial::to_json() const {
  nlohmann::json j;
  j["n_free"] = n_free;
  auto& arr = j["gammas"] = nlohmann::json::array();
  for (const auto& g : gammas) arr.push_back(g.get_str());
  return j.dump();
}

CutPolynomial CutPolynomial::from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  CutPolynomial p;
  p.n_free = j.at("n_free").get<int>();
  for (const auto& s : j.at("gammas")) p.gammas.emplace_back(s.get<std::string>());
  return p;
}

namespace {

struct EnumerationSetup {
  std::vector<int> free_vertices;       // enumeration order
  std::vector<signed char> spin_minus;  // 1 if current spin is '-', indexed by vertex
  std::vector<std::vector<int>> adj;
  int initial_cut = 0;
};

EnumerationSetup setup_enumeration(const PinnedGraph& g, int cap) {
  if (g.n_free() > cap) throw EnumerationCapError(g.n_free(), cap);
  EnumerationSetup s;
  s.adj = g.adjacency();
  s.spin_minus.assign(g.n_vertices, 1);  // free vertices start at '-'
  for (const auto& [v, spin] : g.pins) s.spin_minus[v] = (spin == Spin::minus) ? 1 : 0;
  for (int v = 0; v < g.n_vertices; ++v)
    if (!g.is_pinned(v)) s.free_vertices.push_back(v);
  for (const auto& [u, v] : g.edges)
    if (s.spin_minus[u] != s.spin_minus[v]) ++s.initial_cut;
  return s;
}

// Visits every configuration once; fn(cut_size) is called per configuration.
// Gray-code order: step i flips the free vertex indexed by countr_zero(i).
template <typename Fn>
void for_each_configuration(const PinnedGraph& g, int cap, Fn&& fn) {
  EnumerationSetup s = setup_enumeration(g, cap);
  const int nf = static_cast<int>(s.free_vertices.size());
  int cut = s.initial_cut;
  fn(cut);
  const std::uint64_t total = std::uint64_t{1} << nf;
  for (std::uint64_t i = 1; i < total; ++i) {
    const int v = s.free_vertices[std::countr_zero(i)];
    // Flipping v: each edge at v toggles between cut and uncut.
    for (int u : s.adj[v]) cut += (s.spin_minus[u] == s.spin_minus[v]) ? 1 : -1;
    s.spin_minus[v] ^= 1;
    fn(cut);
  }
}

}  // namespace

CutPolynomial cut_polynomial(const PinnedGraph& g, int cap) {
  std::vector<std::uint64_t> counts(g.edges.size() + 1, 0);
  for_each_configuration(g, cap, [&counts](int cut) { ++counts[cut]; });
  CutPolynomial p;
  p.n_free = g.n_free();
  p.gammas.reserve(counts.size());
  for (std::uint64_t c : counts) p.gammas.emplace_back(static_cast<unsigned long>(c));
  return p;
}

std::complex<double> evaluate_Z(const CutPolynomial& poly, std::complex<double> beta) {
  std::complex<double> acc = 0.0;
  for (int k = static_cast<int>(poly.gammas.size()) - 1; k >= 0; --k)
    acc = acc * beta + poly.gammas[k].get_d();
  return acc;
}

std::complex<double> evaluate_Z_enum(const PinnedGraph& g, std::complex<double> beta, int cap) {
  // Powers table keeps this O(1) per configuration without Horner or gammas.
  std::vector<std::complex<double>> pow_beta(g.edges.size() + 1);
  pow_beta[0] = 1.0;
  for (std::size_t k = 1; k < pow_beta.size(); ++k) pow_beta[k] = pow_beta[k - 1] * beta;
  std::complex<double> acc = 0.0;
  for_each_configuration(g, cap, [&](int cut) { acc += pow_beta[cut]; });
  return acc;
}

int cut_size(const PinnedGraph& g, const SpinConfig& config) {
  if (static_cast<int>(config.assignment.size()) != g.n_vertices)
    throw Error("spin config size mismatch");
  for (const auto& [v, s] : g.pins)
    if (config.assignment[v] != s) throw Error("spin config contradicts pin");
  int cut = 0;
  for (const auto& [u, v] : g.edges)
    if (config.assignment[u] != config.assignment[v]) ++cut;
  return cut;
}

RatioValue pinned_ratio(const PinnedGraph& g, int v, std::complex<double> beta, int cap) {
  if (v < 0 || v >= g.n_vertices) throw Error("pinned_ratio: vertex out of range");
  if (g.is_pinned(v)) throw Error("pinned_ratio: vertex already pinned");
  if (g.degrees()[v] == 0) throw Error("pinned_ratio: vertex is isolated");

  PinnedGraph gp = g;
  gp.pins[v] = Spin::plus;
  PinnedGraph gm = g;
  gm.pins[v] = Spin::minus;

  RatioValue r;
  r.z_plus = evaluate_Z(cut_polynomial(gp, cap), beta);
  r.z_minus = evaluate_Z(cut_polynomial(gm, cap), beta);
  if (r.z_minus == std::complex<double>(0.0, 0.0)) {
    r.infinite = true;
  } else {
    r.value = r.z_plus / r.z_minus;
  }
  return r;
}

}  // namespace fisher
