#include <cmath>

#include <doctest.h>

#include "assocmine/graph.hpp"
#include "assocmine/random.hpp"
#include "helpers.hpp"

using namespace assocmine;
using testutil::make_graph;
using testutil::TempDir;

namespace {

// n-node graph with exactly m edges laid out as ring chords.
AttributedGraph ring_graph(std::size_t n, std::size_t m) {
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::size_t offset = 1;
  while (edges.size() < m) {
    const std::size_t whole = std::min(n, m - edges.size());
    for (std::size_t i = 0; i < whole; ++i)
      edges.emplace_back(static_cast<NodeId>(i),
                         static_cast<NodeId>((i + offset) % n));
    ++offset;
  }
  return make_graph(std::vector<std::vector<std::uint8_t>>(n, {0}), std::move(edges));
}

}  // namespace

TEST_CASE("load_graph basic example") {
  TempDir tmp;
  const auto attrs = tmp.file("a.tsv",
                              "node\tx\ty\n"
                              "a\t1\t0\n"
                              "b\t0\t1\n"
                              "c\t1\t1\n");
  const auto edges = tmp.file("e.tsv", "a\tb\nb\tc\n");
  const AttributedGraph g = load_graph(edges, attrs);
  CHECK(g.node_count() == 3);
  CHECK(g.edge_count() == 2);
  CHECK(g.attribute_count() == 2);
  CHECK(g.density() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(g.attribute(0, 0) == 1);
  CHECK(g.attribute(1, 0) == 0);
}

TEST_CASE("load_graph zero edges") {
  TempDir tmp;
  const auto attrs = tmp.file("a.tsv", "node\tx\na\t0\nb\t1\n");
  const auto edges = tmp.file("e.tsv", "# nothing here\n");
  const AttributedGraph g = load_graph(edges, attrs);
  CHECK(g.edge_count() == 0);
  CHECK(g.density() == 0.0);
}

TEST_CASE("load_graph rejects self-loops with the line number") {
  TempDir tmp;
  const auto attrs = tmp.file("a.tsv", "node\tx\na\t0\nb\t1\n");
  const auto edges = tmp.file("e.tsv", "a\tb\nb\tb\n");
  CHECK_THROWS_WITH_AS(load_graph(edges, attrs),
                       doctest::Contains(":2: self-loop"), GraphFormatError);
}

TEST_CASE("load_graph rejects malformed lines and unknown nodes") {
  TempDir tmp;
  const auto attrs = tmp.file("a.tsv", "node\tx\na\t0\nb\t1\n");
  CHECK_THROWS_WITH_AS(load_graph(tmp.file("e1.tsv", "a b\n"), attrs),
                       doctest::Contains(":1:"), GraphFormatError);
  CHECK_THROWS_WITH_AS(load_graph(tmp.file("e2.tsv", "a\tz\n"), attrs),
                       doctest::Contains("'z' not in attribute file"),
                       GraphFormatError);
}

TEST_CASE("load_graph rejects bad attribute rows") {
  TempDir tmp;
  const auto edges = tmp.file("e.tsv", "");
  CHECK_THROWS_AS(load_graph(edges, tmp.file("a1.tsv", "node\tx\ta\na\t1\n")),
                  GraphFormatError);
  CHECK_THROWS_AS(load_graph(edges, tmp.file("a2.tsv", "node\tx\na\t2\n")),
                  GraphFormatError);
  CHECK_THROWS_AS(load_graph(edges, tmp.file("a3.tsv", "node\tx\na\t1\na\t0\n")),
                  GraphFormatError);
}

TEST_CASE("duplicate edges are collapsed and counted") {
  TempDir tmp;
  const auto attrs = tmp.file("a.tsv", "node\tx\na\t0\nb\t1\nc\t1\n");
  const auto edges = tmp.file("e.tsv", "a\tb\nb\ta\na\tb\nb\tc\n");
  const AttributedGraph g = load_graph(edges, attrs);
  CHECK(g.edge_count() == 2);
  CHECK(g.duplicate_edges_dropped() == 2);
}

TEST_CASE("density anchors") {
  const AttributedGraph k4 = make_graph({{0}, {0}, {0}, {0}},
                                        {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(k4.density() == doctest::Approx(1.0).epsilon(1e-12));

  const AttributedGraph one = make_graph({{0}}, {});
  CHECK_THROWS_AS(one.density(), std::domain_error);
}

TEST_CASE("density at published co-authorship and review network scales") {
  const AttributedGraph a = ring_graph(4672, 37726);
  REQUIRE(a.edge_count() == 37726);
  CHECK(a.density() == doctest::Approx(0.00346).epsilon(0.015));  // +-5e-5
  CHECK(std::abs(a.density() - 0.00346) < 5e-5);

  const AttributedGraph b = ring_graph(4454, 44906);
  REQUIRE(b.edge_count() == 44906);
  CHECK(std::abs(b.density() - 0.00453) < 5e-5);
}

TEST_CASE("attribute marginals") {
  const AttributedGraph g = make_graph({{1}, {1}, {0}, {0}}, {});
  CHECK(g.attribute_marginals()[0] == doctest::Approx(0.5).epsilon(1e-12));
  const AttributedGraph ones = make_graph({{1}, {1}}, {});
  CHECK(ones.attribute_marginals()[0] == 1.0);
  const AttributedGraph zeros = make_graph({{0}, {0}}, {});
  CHECK(zeros.attribute_marginals()[0] == 0.0);
}

TEST_CASE("neighbors") {
  const AttributedGraph g = make_graph({{0}, {0}, {0}, {0}}, {{0, 1}, {1, 2}});
  CHECK(g.neighbors(1) == std::vector<NodeId>{0, 2});
  CHECK(g.neighbors(3).empty());
  CHECK_THROWS_AS(g.neighbors(9), std::out_of_range);
}

TEST_CASE("degree sum and adjacency symmetry on a random graph") {
  Rng rng(5);
  std::vector<std::pair<NodeId, NodeId>> edges;
  const std::size_t n = 60;
  for (int i = 0; i < 200; ++i) {
    const NodeId u = static_cast<NodeId>(rng.next_below(n));
    const NodeId v = static_cast<NodeId>(rng.next_below(n));
    if (u != v) edges.emplace_back(u, v);
  }
  std::vector<std::vector<std::uint8_t>> attrs(n, {1, 0});
  const AttributedGraph g = make_graph(attrs, edges);

  std::size_t degree_sum = 0;
  for (NodeId u = 0; u < n; ++u) degree_sum += g.neighbors(u).size();
  CHECK(degree_sum == 2 * g.edge_count());
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : g.neighbors(u)) CHECK(g.has_edge(v, u));
  }
  CHECK(g.density() >= 0.0);
  CHECK(g.density() <= 1.0);
}

TEST_CASE("save and reload round-trips") {
  Rng rng(11);
  std::vector<std::vector<std::uint8_t>> attrs;
  for (int u = 0; u < 40; ++u)
    attrs.push_back({static_cast<std::uint8_t>(rng.next_below(2)),
                     static_cast<std::uint8_t>(rng.next_below(2)),
                     static_cast<std::uint8_t>(rng.next_below(2))});
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (int i = 0; i < 100; ++i) {
    const NodeId u = static_cast<NodeId>(rng.next_below(40));
    const NodeId v = static_cast<NodeId>(rng.next_below(40));
    if (u != v) edges.emplace_back(u, v);
  }
  const AttributedGraph g = make_graph(attrs, edges, {"alpha", "beta", "gamma"});

  TempDir tmp;
  save_graph(g, tmp.path("e.tsv"), tmp.path("a.tsv"), {"round trip check"});
  const AttributedGraph back = load_graph(tmp.path("e.tsv"), tmp.path("a.tsv"));
  CHECK(back.edges() == g.edges());
  CHECK(back.node_names() == g.node_names());
  CHECK(back.attribute_names() == g.attribute_names());
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (std::size_t i = 0; i < g.attribute_count(); ++i)
      CHECK(back.attribute(u, i) == g.attribute(u, i));
}
