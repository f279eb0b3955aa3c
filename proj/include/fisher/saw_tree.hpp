#pragma once

#include <complex>
#include <string>
#include <vector>

#include "fisher/exact.hpp"
#include "fisher/graph.hpp"

namespace fisher {

inline constexpr long kDefaultNodeCap = 1'000'000;

enum class NodePin : unsigned char { free_node, plus, minus };

struct SawNode {
  int vertex = 0;  // graph vertex this walk ends at
  int parent = -1;
  NodePin pin = NodePin::free_node;
  std::vector<int> children;
};

/// Tree of self-avoiding walks from a root vertex. Pinned nodes are always
/// leaves: cycle-closing revisits get a +/- pin from the tie-breaking rule,
/// and walks stop at vertices the graph itself pins. Every non-root node has
/// at most delta_cap - 1 children; the root has at most delta_cap.
struct SawTree {
  std::vector<SawNode> nodes;  // preorder; children carry larger ids
  int root = 0;
  int delta_cap = 0;

  /// Indented debug dump, one node per line: "<vertex> [pin]".
  std::string dump() const;
};

SawTree build_saw_tree(const PinnedGraph& g, int v, long node_cap = kDefaultNodeCap);

/// Bottom-up evaluation of the ratio recurrence at complex beta. Pinned
/// children are folded into a power of beta (a '-' child contributes beta,
/// a '+' child contributes 1/beta); free children contribute the Moebius
/// factor (beta + x)/(beta x + 1). Values are carried as projective
/// numerator/denominator pairs, renormalized at every node, so infinity is
/// representable and deep trees cannot overflow. A node whose pair collapses
/// to 0/0 raises PoleError with that node id.
RatioValue eval_saw_ratio(const SawTree& t, std::complex<double> beta);

/// |R_tree - R_exact| / max(1, |R_exact|), the headline identity check.
double weitz_residual(const PinnedGraph& g, int v, std::complex<double> beta,
                      long node_cap = kDefaultNodeCap, int enum_cap = kDefaultEnumerationCap);

}  // namespace fisher
