#include <doctest.h>

#include <complex>

#include "fisher/errors.hpp"
#include "fisher/graph.hpp"
#include "fisher/rng.hpp"
#include "fisher/saw_tree.hpp"
#include "test_support.hpp"

using namespace fisher;
using fisher::testing::naive_ratio;
using cd = std::complex<double>;

TEST_CASE("K2 walk tree is a root plus one free leaf") {
  const auto t = build_saw_tree(load_graph("e 0 1"), 0);
  REQUIRE(t.nodes.size() == 2);
  CHECK(t.nodes[0].vertex == 0);
  CHECK(t.nodes[1].vertex == 1);
  CHECK(t.nodes[1].pin == NodePin::free_node);
  CHECK(t.nodes[1].children.empty());
}

TEST_CASE("path rooted at the middle maps to itself") {
  const auto t = build_saw_tree(generate_family(Family::path, 3), 1);
  REQUIRE(t.nodes.size() == 3);
  CHECK(t.nodes[0].children.size() == 2);
  for (int c : t.nodes[0].children) {
    CHECK(t.nodes[c].pin == NodePin::free_node);
    CHECK(t.nodes[c].children.empty());
  }
}

TEST_CASE("triangle tree: 7 nodes, left closure pinned -, right pinned +") {
  const auto t = build_saw_tree(generate_family(Family::cycle, 3), 0);
  REQUIRE(t.nodes.size() == 7);
  REQUIRE(t.nodes[0].children.size() == 2);
  // Children are visited in increasing vertex order, so the left branch goes
  // through vertex 1 and the right through vertex 2.
  const int left = t.nodes[0].children[0];
  const int right = t.nodes[0].children[1];
  CHECK(t.nodes[left].vertex == 1);
  CHECK(t.nodes[right].vertex == 2);
  auto leaf_of = [&](int branch) {
    int cur = branch;
    while (!t.nodes[cur].children.empty()) cur = t.nodes[cur].children[0];
    return cur;
  };
  const int left_leaf = leaf_of(left);
  const int right_leaf = leaf_of(right);
  CHECK(t.nodes[left_leaf].vertex == 0);
  CHECK(t.nodes[left_leaf].pin == NodePin::minus);
  CHECK(t.nodes[right_leaf].vertex == 0);
  CHECK(t.nodes[right_leaf].pin == NodePin::plus);
}

TEST_CASE("acyclic graphs produce a re-rooted copy with no added pins") {
  for (std::uint64_t seed = 1; seed <= 6; ++seed) {
    const int n = 4 + static_cast<int>(seed);
    auto tree_graph = generate_connected(n, 3, seed);
    // Strip extra edges down to a spanning tree.
    while (static_cast<int>(tree_graph.edges.size()) > n - 1) {
      auto edges = tree_graph.edges;
      for (std::size_t i = 0; i < edges.size(); ++i) {
        auto fewer = edges;
        fewer.erase(fewer.begin() + static_cast<long>(i));
        PinnedGraph cand = make_graph(n, fewer);
        if (cand.is_connected()) {
          tree_graph = cand;
          break;
        }
      }
    }
    const auto t = build_saw_tree(tree_graph, 0);
    CHECK(t.nodes.size() == static_cast<std::size_t>(n));
    for (const auto& node : t.nodes) CHECK(node.pin == NodePin::free_node);
  }
}

TEST_CASE("graph pins are copied onto nodes which become leaves") {
  const auto g = load_graph("e 0 1\ne 1 2\npin 2 +");
  const auto t = build_saw_tree(g, 0);
  REQUIRE(t.nodes.size() == 3);
  CHECK(t.nodes[2].vertex == 2);
  CHECK(t.nodes[2].pin == NodePin::plus);
  CHECK(t.nodes[2].children.empty());
}

TEST_CASE("child-count and arity bounds hold on random graphs") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto g = generate_connected(4 + static_cast<int>(seed % 6), 4, seed * 7);
    const int d = g.delta_cap - 1;
    const auto t = build_saw_tree(g, static_cast<int>(seed % g.n_vertices) == 0 ? 0 : 0);
    for (std::size_t i = 0; i < t.nodes.size(); ++i) {
      const auto& node = t.nodes[i];
      const int arity = static_cast<int>(node.children.size());
      if (static_cast<int>(i) == t.root) {
        CHECK(arity <= g.delta_cap);
        CHECK(arity >= 1);
      } else if (node.pin == NodePin::free_node && arity > 0) {
        // Internal recurrence application: 1 <= k + |s| <= d.
        CHECK(arity <= d);
      }
    }
  }
}

TEST_CASE("evaluation anchors") {
  // Free leaf value is 1 and the root applies the identity-preserving step.
  const auto k2 = build_saw_tree(load_graph("e 0 1"), 0);
  for (const cd beta : {cd(0.5, 0.0), cd(1.3, 0.2), cd(0.8, -0.3)}) {
    const auto r = eval_saw_ratio(k2, beta);
    REQUIRE(!r.infinite);
    CHECK(std::abs(r.value - 1.0) < 1e-14);
  }

  // A single minus-pinned child contributes the bare interaction weight.
  const auto minus_child = build_saw_tree(load_graph("e 0 1\npin 1 -"), 0);
  const auto r2 = eval_saw_ratio(minus_child, 2.0);
  REQUIRE(!r2.infinite);
  CHECK(std::abs(r2.value - 2.0) < 1e-14);

  // Triangle at beta = 2 equals the exact ratio (1 by symmetry).
  const auto tri = build_saw_tree(generate_family(Family::cycle, 3), 1);
  const auto r3 = eval_saw_ratio(tri, 2.0);
  REQUIRE(!r3.infinite);
  CHECK(std::abs(r3.value - 1.0) < 1e-12);
}

TEST_CASE("pinned evaluation matches the exact ratio") {
  const auto g = load_graph("e 0 1\ne 1 2\npin 2 +");
  const auto t = build_saw_tree(g, 0);
  for (const cd beta : {cd(2.0, 0.0), cd(0.7, 0.1), cd(1.2, -0.2)}) {
    const auto r = eval_saw_ratio(t, beta);
    REQUIRE(!r.infinite);
    CHECK(std::abs(r.value - naive_ratio(g, 0, beta)) < 1e-12);
  }
}

TEST_CASE("infinity and pole reporting") {
  // Plus-pinned neighbor at beta = 0: the ratio is the infinity marker.
  const auto t_plus = build_saw_tree(load_graph("e 0 1\npin 1 +"), 0);
  CHECK(eval_saw_ratio(t_plus, 0.0).infinite);
  CHECK_THROWS_AS(weitz_residual(load_graph("e 0 1\npin 1 +"), 0, 0.0), PoleError);

  // Opposite pins cancel inside a node: the fold drops them entirely, so the
  // value is the bare free-child product even at degenerate parameters.
  const auto balanced = build_saw_tree(load_graph("e 0 1\ne 1 2\npin 0 -\npin 2 +"), 1);
  const auto r = eval_saw_ratio(balanced, cd(0.0, 0.0));
  REQUIRE(!r.infinite);
  CHECK(std::abs(r.value - 1.0) < 1e-14);

  // Genuine 0/0: at beta = i the two branch values are -1/beta and -beta,
  // which zero the numerator and denominator factors simultaneously.
  const auto g = load_graph("e 0 1\ne 1 2\ne 0 3\ne 2 4\npin 3 -\npin 4 +");
  const auto t = build_saw_tree(g, 1);
  try {
    eval_saw_ratio(t, cd(0.0, 1.0));
    CHECK(false);
  } catch (const PoleError& e) {
    CHECK(e.node == 0);
  }
}

TEST_CASE("weitz identity on seeded random graphs") {
  Rng rng(2024);
  for (std::uint64_t seed = 1; seed <= 25; ++seed) {
    const int n = 4 + static_cast<int>(seed % 5);
    const auto g = generate_connected(n, 4, seed * 13);
    for (int i = 0; i < 4; ++i) {
      cd beta;
      do {
        beta = cd(1.0, 0.0) + 0.8 * fisher::testing::random_beta(rng, 1.0);
      } while (beta.real() < 0.2);
      CHECK(weitz_residual(g, 0, beta) <= 1e-9);
    }
  }
}

TEST_CASE("node cap raises") {
  const auto k6 = generate_family(Family::complete, 6);
  CHECK_THROWS_AS(build_saw_tree(k6, 0, 10), NodeCapError);
}

TEST_CASE("dump format") {
  const auto t = build_saw_tree(load_graph("e 0 1\npin 1 -"), 0);
  CHECK(t.dump() == "0\n  1 -\n");
}
