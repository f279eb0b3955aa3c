#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace fisher {

enum class Spin : unsigned char { plus, minus };

inline char spin_char(Spin s) { return s == Spin::plus ? '+' : '-'; }

/// Simple undirected graph with an optional spin pinned at some vertices and a
/// declared degree cap. Vertices are 0-based integers; that integer order is
/// also the tie-breaking order used by the walk-tree construction downstream.
/// Immutable by convention after construction (helpers never mutate).
struct PinnedGraph {
  int n_vertices = 0;
  std::vector<std::pair<int, int>> edges;  // normalized u < v, sorted, unique
  std::map<int, Spin> pins;
  int delta_cap = 0;  // declared max degree; defaults to the observed max

  std::vector<std::vector<int>> adjacency() const;  // sorted neighbor lists
  std::vector<int> degrees() const;
  int max_degree() const;
  bool is_pinned(int v) const { return pins.count(v) != 0; }
  int n_free() const { return n_vertices - static_cast<int>(pins.size()); }
  bool is_connected() const;
};

/// Normalizes edges, fills delta_cap from the observed max degree when
/// delta_cap == 0, and throws fisher::Error if validate() reports anything.
PinnedGraph make_graph(int n_vertices, std::vector<std::pair<int, int>> edges,
                       std::map<int, Spin> pins = {}, int delta_cap = 0);

/// Invariant audit; returns human-readable diagnostics (empty = valid).
std::vector<std::string> validate(const PinnedGraph& g);

/// Edge-list text format, whitespace-delimited:
///   # comment
///   n <count>        optional vertex count (for trailing isolated vertices)
///   delta <cap>      optional declared degree cap
///   e <u> <v>
///   pin <v> +|-
PinnedGraph load_graph(const std::string& text);
std::string serialize(const PinnedGraph& g);

enum class Family { path, cycle, complete, grid2d, random_regular };

Family family_from_string(const std::string& name);
const char* family_name(Family f);

/// Deterministic generators. `degree` and `seed` only matter for
/// random_regular; grid2d interprets `size` as the side length.
PinnedGraph generate_family(Family family, int size, int degree = 0, std::uint64_t seed = 0);

/// Random connected graph on n vertices with max degree <= delta_cap:
/// a random spanning tree plus extra edges subject to the cap.
PinnedGraph generate_connected(int n, int delta_cap, std::uint64_t seed);

}  // namespace fisher
