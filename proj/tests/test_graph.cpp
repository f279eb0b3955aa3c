#include <doctest.h>

#include <set>

#include "fisher/errors.hpp"
#include "fisher/graph.hpp"

using namespace fisher;

TEST_CASE("load_graph parses the edge-list format") {
  const auto k2 = load_graph("e 0 1\n");
  CHECK(k2.n_vertices == 2);
  CHECK(k2.edges.size() == 1);
  CHECK(k2.delta_cap == 1);

  const auto tri = load_graph("e 0 1\ne 1 2\ne 2 0\n");
  CHECK(tri.n_vertices == 3);
  CHECK(tri.edges.size() == 3);
  CHECK(tri.delta_cap == 2);

  const auto pinned = load_graph("e 0 1\npin 1 +\n");
  CHECK(pinned.is_pinned(1));
  CHECK(pinned.pins.at(1) == Spin::plus);
  CHECK(!pinned.is_pinned(0));

  const auto with_headers = load_graph("# comment\nn 4\ndelta 3\ne 0 1\n");
  CHECK(with_headers.n_vertices == 4);
  CHECK(with_headers.delta_cap == 3);
}

TEST_CASE("load_graph reports errors with line numbers") {
  CHECK_THROWS_AS(load_graph("e 0\n"), ParseError);
  CHECK_THROWS_AS(load_graph("e 0 0\n"), ParseError);
  CHECK_THROWS_AS(load_graph("pin 0 x\n"), ParseError);
  CHECK_THROWS_AS(load_graph("bogus 1 2\n"), ParseError);
  CHECK_THROWS(load_graph("e 0 1\ne 1 0\n"));         // duplicate edge
  CHECK_THROWS(load_graph("delta 1\ne 0 1\ne 1 2"));  // cap violated
  try {
    load_graph("e 0 1\npin 1 *\n");
    CHECK(false);
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
}

TEST_CASE("validate returns diagnostics as data") {
  CHECK(validate(load_graph("e 0 1")).empty());

  PinnedGraph loop;
  loop.n_vertices = 1;
  loop.edges = {{0, 0}};
  loop.delta_cap = 2;
  const auto d1 = validate(loop);
  REQUIRE(d1.size() == 1);
  CHECK(d1[0].find("self-loop") != std::string::npos);

  PinnedGraph capped = generate_family(Family::random_regular, 8, 3, 1);
  capped.delta_cap = 2;
  const auto d2 = validate(capped);
  CHECK(!d2.empty());
  CHECK(d2[0].find("degree cap exceeded") != std::string::npos);
}

TEST_CASE("serialize/load round-trips") {
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    auto g = generate_connected(2 + static_cast<int>(seed % 9), 4, seed);
    if (seed % 3 == 0) g.pins[0] = Spin::plus;
    if (seed % 4 == 0) g.pins[g.n_vertices - 1] = Spin::minus;
    const auto back = load_graph(serialize(g));
    CHECK(back.n_vertices == g.n_vertices);
    CHECK(back.edges == g.edges);
    CHECK(back.pins == g.pins);
    CHECK(back.delta_cap == g.delta_cap);
  }
}

TEST_CASE("family generators") {
  const auto c4 = generate_family(Family::cycle, 4);
  CHECK(c4.edges.size() == 4);
  CHECK(c4.delta_cap == 2);

  const auto k4 = generate_family(Family::complete, 4);
  CHECK(k4.edges.size() == 6);
  CHECK(k4.delta_cap == 3);

  for (int m = 3; m <= 12; ++m)
    CHECK(generate_family(Family::cycle, m).edges.size() == static_cast<std::size_t>(m));
  for (int m = 2; m <= 7; ++m)
    CHECK(generate_family(Family::complete, m).edges.size() ==
          static_cast<std::size_t>(m * (m - 1) / 2));

  const auto grid = generate_family(Family::grid2d, 3);
  CHECK(grid.n_vertices == 9);
  CHECK(grid.edges.size() == 12);
  CHECK(grid.delta_cap == 4);
}

TEST_CASE("random_regular is simple, regular, and seed-deterministic") {
  const auto g = generate_family(Family::random_regular, 8, 3, 7);
  CHECK(g.n_vertices == 8);
  CHECK(g.edges.size() == 12);
  for (int d : g.degrees()) CHECK(d == 3);
  std::set<std::pair<int, int>> uniq(g.edges.begin(), g.edges.end());
  CHECK(uniq.size() == g.edges.size());

  const auto h = generate_family(Family::random_regular, 8, 3, 7);
  CHECK(g.edges == h.edges);
  const auto other = generate_family(Family::random_regular, 8, 3, 8);
  CHECK(g.edges != other.edges);

  CHECK_THROWS(generate_family(Family::random_regular, 7, 3, 1));  // odd n*k
}

TEST_CASE("generate_connected respects cap and connectivity") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int n = 2 + static_cast<int>(seed % 9);
    const auto g = generate_connected(n, 4, seed);
    CHECK(g.is_connected());
    CHECK(g.max_degree() <= 4);
    CHECK(validate(g).empty());
  }
}
