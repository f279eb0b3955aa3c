#include "fisher/saw_tree.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fisher/errors.hpp"

namespace fisher {

std::string SawTree::dump() const {
  std::ostringstream out;
  std::vector<int> depth(nodes.size(), 0);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const auto& nd = nodes[i];
    if (nd.parent >= 0) depth[i] = depth[nd.parent] + 1;
    for (int d = 0; d < depth[i]; ++d) out << "  ";
    out << nd.vertex;
    if (nd.pin == NodePin::plus) out << " +";
    if (nd.pin == NodePin::minus) out << " -";
    out << "\n";
  }
  return out.str();
}

// Construction walks the graph depth-first, maintaining the current walk and
// each vertex's position in it. Children of a walk ending at w, taken over
// the neighbors u of w in increasing vertex order:
//   - u is the immediate predecessor: skipped;
//   - u appears earlier in the walk: a leaf closing the cycle, pinned '+'
//     when w precedes u's walk-successor in vertex order and '-' otherwise;
//   - u is pinned in the graph: a leaf carrying that pin;
//   - otherwise: a free node, extended recursively.
SawTree build_saw_tree(const PinnedGraph& g, int v, long node_cap) {
  if (v < 0 || v >= g.n_vertices) throw Error("build_saw_tree: vertex out of range");
  if (g.is_pinned(v)) throw Error("build_saw_tree: root vertex is pinned");
  const auto adj = g.adjacency();
  if (adj[v].empty()) throw Error("build_saw_tree: root vertex is isolated");

  SawTree t;
  t.delta_cap = g.delta_cap;
  t.nodes.push_back(SawNode{v, -1, NodePin::free_node, {}});

  std::vector<int> walk{v};
  std::vector<int> pos_in_walk(g.n_vertices, -1);
  pos_in_walk[v] = 0;

  auto add_node = [&](int vertex, int parent, NodePin pin) {
    if (static_cast<long>(t.nodes.size()) >= node_cap) throw NodeCapError(node_cap);
    const int id = static_cast<int>(t.nodes.size());
    t.nodes.push_back(SawNode{vertex, parent, pin, {}});
    t.nodes[parent].children.push_back(id);
    return id;
  };

  // Explicit stack of (node id, next neighbor index) to avoid deep recursion.
  struct Frame {
    int node;
    std::size_t next;
  };
  std::vector<Frame> stack{{0, 0}};
  while (!stack.empty()) {
    Frame& f = stack.back();
    const int w = t.nodes[f.node].vertex;
    if (f.next >= adj[w].size()) {
      pos_in_walk[w] = -1;
      walk.pop_back();
      stack.pop_back();
      continue;
    }
    const int u = adj[w][f.next++];
    const int p = pos_in_walk[u];
    if (p >= 0) {
      if (p == static_cast<int>(walk.size()) - 2) continue;  // predecessor
      // Cycle-closing revisit; u's successor in the walk breaks the tie.
      const int successor = walk[p + 1];
      add_node(u, f.node, w < successor ? NodePin::plus : NodePin::minus);
    } else if (g.is_pinned(u)) {
      add_node(u, f.node, g.pins.at(u) == Spin::plus ? NodePin::plus : NodePin::minus);
    } else {
      const int id = add_node(u, f.node, NodePin::free_node);
      walk.push_back(u);
      pos_in_walk[u] = static_cast<int>(walk.size()) - 1;
      stack.push_back({id, 0});
    }
  }
  return t;
}

RatioValue eval_saw_ratio(const SawTree& t, std::complex<double> beta) {
  using cd = std::complex<double>;
  std::vector<cd> num(t.nodes.size()), den(t.nodes.size());
  // Children have larger ids than parents, so one reverse sweep suffices.
  for (int i = static_cast<int>(t.nodes.size()) - 1; i >= 0; --i) {
    const auto& nd = t.nodes[i];
    if (nd.pin != NodePin::free_node) continue;  // folded by the parent below
    cd n = 1.0, d = 1.0;
    int s = 0;  // minus-pinned children add +1, plus-pinned add -1
    for (int c : nd.children) {
      switch (t.nodes[c].pin) {
        case NodePin::minus: ++s; break;
        case NodePin::plus: --s; break;
        case NodePin::free_node:
          n *= beta * den[c] + num[c];
          d *= beta * num[c] + den[c];
          break;
      }
    }
    for (; s > 0; --s) n *= beta;
    for (; s < 0; ++s) d *= beta;
    const double scale = std::max(std::abs(n), std::abs(d));
    if (scale == 0.0 || !std::isfinite(scale)) throw PoleError(beta, i);
    num[i] = n / scale;
    den[i] = d / scale;
  }
  RatioValue r;
  if (den[t.root] == std::complex<double>(0.0, 0.0)) {
    r.infinite = true;
  } else {
    r.value = num[t.root] / den[t.root];
  }
  return r;
}

double weitz_residual(const PinnedGraph& g, int v, std::complex<double> beta, long node_cap,
                      int enum_cap) {
  const RatioValue tree_side = eval_saw_ratio(build_saw_tree(g, v, node_cap), beta);
  const RatioValue exact_side = pinned_ratio(g, v, beta, enum_cap);
  if (tree_side.infinite || exact_side.infinite) throw PoleError(beta);
  const double scale = std::max(1.0, std::abs(exact_side.value));
  return std::abs(tree_side.value - exact_side.value) / scale;
}

}  // namespace fisher
