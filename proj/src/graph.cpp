#include "fisher/graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "fisher/errors.hpp"
#include "fisher/rng.hpp"

namespace fisher {

std::vector<std::vector<int>> PinnedGraph::adjacency() const {
  std::vector<std::vector<int>> adj(n_vertices);
  for (const auto& [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (auto& nb : adj) std::sort(nb.begin(), nb.end());
  return adj;
}

std::vector<int> PinnedGraph::degrees() const {
  std::vector<int> deg(n_vertices, 0);
  for (const auto& [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

int PinnedGraph::max_degree() const {
  int m = 0;
  for (int d : degrees()) m = std::max(m, d);
  return m;
}

bool PinnedGraph::is_connected() const {
  if (n_vertices <= 1) return true;
  const auto adj = adjacency();
  std::vector<char> seen(n_vertices, 0);
  std::vector<int> stack{0};
  seen[0] = 1;
  int reached = 1;
  while (!stack.empty()) {
    const int u = stack.back();
    stack.pop_back();
    for (int w : adj[u]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n_vertices;
}

PinnedGraph make_graph(int n_vertices, std::vector<std::pair<int, int>> edges,
                       std::map<int, Spin> pins, int delta_cap) {
  PinnedGraph g;
  g.n_vertices = n_vertices;
  for (auto& [u, v] : edges) {
    if (u > v) std::swap(u, v);
  }
  std::sort(edges.begin(), edges.end());
  g.edges = std::move(edges);
  g.pins = std::move(pins);
  g.delta_cap = delta_cap > 0 ? delta_cap : 0;
  if (g.delta_cap == 0) g.delta_cap = g.max_degree();
  if (auto diags = validate(g); !diags.empty()) {
    std::string msg = "invalid graph:";
    for (const auto& d : diags) msg += " [" + d + "]";
    throw Error(msg);
  }
  return g;
}

std::vector<std::string> validate(const PinnedGraph& g) {
  std::vector<std::string> diags;
  if (g.n_vertices < 0) diags.push_back("negative vertex count");
  for (const auto& [u, v] : g.edges) {
    if (u == v) diags.push_back("self-loop at vertex " + std::to_string(u));
    if (u < 0 || v < 0 || u >= g.n_vertices || v >= g.n_vertices)
      diags.push_back("edge endpoint out of range: (" + std::to_string(u) + "," +
                      std::to_string(v) + ")");
  }
  std::set<std::pair<int, int>> unique_edges;
  for (auto [u, v] : g.edges) {
    if (u > v) std::swap(u, v);
    if (!unique_edges.insert({u, v}).second)
      diags.push_back("duplicate edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  }
  if (diags.empty()) {  // degree audit only meaningful on a well-formed edge set
    const auto deg = g.degrees();
    for (int v = 0; v < g.n_vertices; ++v) {
      if (deg[v] > g.delta_cap)
        diags.push_back("degree cap exceeded at vertex " + std::to_string(v) + ": " +
                        std::to_string(deg[v]) + " > " + std::to_string(g.delta_cap));
    }
  }
  for (const auto& [v, s] : g.pins) {
    (void)s;
    if (v < 0 || v >= g.n_vertices)
      diags.push_back("pinned vertex out of range: " + std::to_string(v));
  }
  return diags;
}

PinnedGraph load_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int n_header = -1;
  int delta_header = 0;
  std::vector<std::pair<int, int>> edges;
  std::map<int, Spin> pins;
  int max_id = -1;

  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok) || tok[0] == '#') continue;
    if (tok == "e") {
      int u, v;
      if (!(ls >> u >> v)) throw ParseError(lineno, "expected 'e <u> <v>'");
      if (u < 0 || v < 0) throw ParseError(lineno, "negative vertex id");
      if (u == v) throw ParseError(lineno, "self-loop");
      edges.emplace_back(std::min(u, v), std::max(u, v));
      max_id = std::max({max_id, u, v});
    } else if (tok == "pin") {
      int v;
      std::string sign;
      if (!(ls >> v >> sign)) throw ParseError(lineno, "expected 'pin <v> +|-'");
      if (v < 0) throw ParseError(lineno, "negative vertex id");
      if (sign != "+" && sign != "-") throw ParseError(lineno, "bad pin token '" + sign + "'");
      if (pins.count(v)) throw ParseError(lineno, "vertex " + std::to_string(v) + " pinned twice");
      pins[v] = sign == "+" ? Spin::plus : Spin::minus;
      max_id = std::max(max_id, v);
    } else if (tok == "delta") {
      if (!(ls >> delta_header) || delta_header <= 0)
        throw ParseError(lineno, "expected 'delta <cap>' with positive cap");
    } else if (tok == "n") {
      if (!(ls >> n_header) || n_header < 0) throw ParseError(lineno, "expected 'n <count>'");
    } else {
      throw ParseError(lineno, "unknown directive '" + tok + "'");
    }
  }

  std::sort(edges.begin(), edges.end());
  for (std::size_t i = 1; i < edges.size(); ++i) {
    if (edges[i] == edges[i - 1])
      throw Error("duplicate edge (" + std::to_string(edges[i].first) + "," +
                  std::to_string(edges[i].second) + ")");
  }
  const int n = std::max(n_header, max_id + 1);
  return make_graph(n, std::move(edges), std::move(pins), delta_header);
}

std::string serialize(const PinnedGraph& g) {
  std::ostringstream out;
  out << "n " << g.n_vertices << "\n";
  out << "delta " << g.delta_cap << "\n";
  for (const auto& [u, v] : g.edges) out << "e " << u << " " << v << "\n";
  for (const auto& [v, s] : g.pins) out << "pin " << v << " " << spin_char(s) << "\n";
  return out.str();
}

Family family_from_string(const std::string& name) {
  if (name == "path") return Family::path;
  if (name == "cycle") return Family::cycle;
  if (name == "complete") return Family::complete;
  if (name == "grid2d") return Family::grid2d;
  if (name == "random_regular") return Family::random_regular;
  throw Error("unknown graph family '" + name + "'");
}

const char* family_name(Family f) {
  switch (f) {
    case Family::path: return "path";
    case Family::cycle: return "cycle";
    case Family::complete: return "complete";
    case Family::grid2d: return "grid2d";
    case Family::random_regular: return "random_regular";
  }
  return "?";
}

namespace {

PinnedGraph random_regular_graph(int n, int k, std::uint64_t seed) {
  if (n <= 0 || k <= 0 || k >= n || (static_cast<long>(n) * k) % 2 != 0)
    throw Error("infeasible random_regular parameters: n=" + std::to_string(n) +
                " k=" + std::to_string(k));
  Rng rng(seed);
  const int retries = 1000;
  for (int attempt = 0; attempt < retries; ++attempt) {
    // Pairing model: match up n*k stubs uniformly, reject loops/multi-edges.
    std::vector<int> stubs;
    stubs.reserve(static_cast<std::size_t>(n) * k);
    for (int v = 0; v < n; ++v)
      for (int i = 0; i < k; ++i) stubs.push_back(v);
    for (std::size_t i = stubs.size(); i > 1; --i)
      std::swap(stubs[i - 1], stubs[rng.below(i)]);
    std::set<std::pair<int, int>> edge_set;
    bool ok = true;
    for (std::size_t i = 0; i + 1 < stubs.size(); i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v) {
        ok = false;
        break;
      }
      if (u > v) std::swap(u, v);
      if (!edge_set.insert({u, v}).second) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::vector<std::pair<int, int>> edges(edge_set.begin(), edge_set.end());
    return make_graph(n, std::move(edges), {}, k);
  }
  throw Error("random_regular generation failed after " + std::to_string(retries) + " retries");
}

}  // namespace

PinnedGraph generate_family(Family family, int size, int degree, std::uint64_t seed) {
  switch (family) {
    case Family::path: {
      if (size < 1) throw Error("path needs size >= 1");
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i + 1 < size; ++i) edges.emplace_back(i, i + 1);
      return make_graph(size, std::move(edges));
    }
    case Family::cycle: {
      if (size < 3) throw Error("cycle needs size >= 3");
      std::vector<std::pair<int, int>> edges;
      for (int i = 0; i < size; ++i) edges.emplace_back(i, (i + 1) % size);
      return make_graph(size, std::move(edges));
    }
    case Family::complete: {
      if (size < 1) throw Error("complete needs size >= 1");
      std::vector<std::pair<int, int>> edges;
      for (int u = 0; u < size; ++u)
        for (int v = u + 1; v < size; ++v) edges.emplace_back(u, v);
      return make_graph(size, std::move(edges));
    }
    case Family::grid2d: {
      if (size < 1) throw Error("grid2d needs side >= 1");
      const int m = size;
      auto id = [m](int r, int c) { return r * m + c; };
      std::vector<std::pair<int, int>> edges;
      for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) {
          if (c + 1 < m) edges.emplace_back(id(r, c), id(r, c + 1));
          if (r + 1 < m) edges.emplace_back(id(r, c), id(r + 1, c));
        }
      return make_graph(m * m, std::move(edges));
    }
    case Family::random_regular:
      return random_regular_graph(size, degree, seed);
  }
  throw Error("unreachable family");
}

PinnedGraph generate_connected(int n, int delta_cap, std::uint64_t seed) {
  if (n < 1 || delta_cap < 1) throw Error("generate_connected needs n >= 1, delta_cap >= 1");
  if (n > 1 && delta_cap < 2 && n > 2) throw Error("delta_cap too small for a connected graph");
  Rng rng(seed);
  std::vector<int> deg(n, 0);
  std::set<std::pair<int, int>> edge_set;
  // Random spanning tree: attach each vertex to an earlier one with spare degree.
  for (int v = 1; v < n; ++v) {
    int u = -1;
    for (int tries = 0; tries < 16 * n; ++tries) {
      const int cand = static_cast<int>(rng.below(static_cast<std::uint64_t>(v)));
      if (deg[cand] < delta_cap) {
        u = cand;
        break;
      }
    }
    if (u < 0) {
      for (int cand = 0; cand < v && u < 0; ++cand)
        if (deg[cand] < delta_cap) u = cand;
    }
    if (u < 0) throw Error("generate_connected: no vertex with spare degree");
    edge_set.insert({u, v});
    ++deg[u];
    ++deg[v];
  }
  // Sprinkle extra edges while respecting the cap.
  const int extra_attempts = n;
  for (int i = 0; i < extra_attempts; ++i) {
    if (n < 2) break;
    int u = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    int v = static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
    if (u == v) continue;
    if (u > v) std::swap(u, v);
    if (deg[u] >= delta_cap || deg[v] >= delta_cap) continue;
    if (!edge_set.insert({u, v}).second) continue;
    ++deg[u];
    ++deg[v];
  }
  std::vector<std::pair<int, int>> edges(edge_set.begin(), edge_set.end());
  return make_graph(n, std::move(edges), {}, delta_cap);
}

}  // namespace fisher
