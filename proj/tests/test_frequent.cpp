#include <doctest.h>

#include "assocmine/frequent.hpp"
#include "assocmine/random.hpp"
#include "helpers.hpp"

using namespace assocmine;
using testutil::make_graph;

namespace {

AttributeSignature sig(std::vector<Mark> marks) { return {std::move(marks)}; }

}  // namespace

TEST_CASE("association_of applies endpoint symmetry") {
  const AttributedGraph g = make_graph({{1, 0}, {0, 1}}, {{0, 1}});
  const ExactAssociation a = association_of(g, 0, 1);
  CHECK(a.side_a == std::vector<std::uint32_t>{0});
  CHECK(a.side_b == std::vector<std::uint32_t>{1});
  CHECK(association_of(g, 1, 0) == a);
}

TEST_CASE("enumeration counts one association per edge") {
  const AttributedGraph g = make_graph({{1, 0}, {0, 1}}, {{0, 1}});
  const FrequencyTable t = enumerate_associations(g);
  REQUIRE(t.size() == 1);
  CHECK(t.begin()->second == 1);

  const AttributedGraph empty = make_graph({{1}, {0}}, {});
  CHECK(enumerate_associations(empty).empty());
}

TEST_CASE("swapped endpoint patterns land on the same key") {
  const AttributedGraph g =
      make_graph({{1, 0}, {0, 1}, {0, 1}, {1, 0}}, {{0, 1}, {2, 3}});
  const FrequencyTable t = enumerate_associations(g);
  REQUIRE(t.size() == 1);
  CHECK(t.begin()->second == 2);
}

TEST_CASE("association totals equal the edge count") {
  Rng rng(3);
  std::vector<std::vector<std::uint8_t>> attrs;
  for (int i = 0; i < 25; ++i)
    attrs.push_back({static_cast<std::uint8_t>(rng.next_below(2)),
                     static_cast<std::uint8_t>(rng.next_below(2)),
                     static_cast<std::uint8_t>(rng.next_below(2))});
  std::vector<std::pair<NodeId, NodeId>> edges;
  for (int i = 0; i < 80; ++i) {
    const NodeId u = static_cast<NodeId>(rng.next_below(25));
    const NodeId v = static_cast<NodeId>(rng.next_below(25));
    if (u != v) edges.emplace_back(u, v);
  }
  const AttributedGraph g = make_graph(attrs, edges);
  const FrequencyTable t = enumerate_associations(g);
  std::uint64_t total = 0;
  for (const auto& [assoc, f] : t) total += f;
  CHECK(total == g.edge_count());
}

TEST_CASE("frequent boundary is inclusive") {
  FrequencyTable t;
  t[make_exact_association({0}, {1})] = 4;
  t[make_exact_association({0}, {2})] = 3;
  t[make_exact_association({1}, {2})] = 33;
  const auto entries = frequent_associations(t, 0.1, 40);
  REQUIRE(entries.size() == 2);
  CHECK(entries[0].frequency == 33);
  CHECK(entries[1].frequency == 4);
}

TEST_CASE("a vanishing support keeps every observed association") {
  FrequencyTable t;
  t[make_exact_association({0}, {1})] = 1;
  t[make_exact_association({0}, {2})] = 9;
  const auto entries = frequent_associations(t, 1e-9, 10);
  CHECK(entries.size() == 2);
  CHECK(entries[0].frequency == 9);  // sorted descending
}

TEST_CASE("wildcard_match on a three-name universe") {
  // universe: ICML=0, ICDM=1, SnP=2
  const AttributeSignature a = sig({Mark::kOne, Mark::kOne, Mark::kWildcard});
  const AttributeSignature b = sig({Mark::kOne, Mark::kOne, Mark::kAbsent});
  const ExactAssociation exact = make_exact_association({0, 1, 2}, {0, 1});
  CHECK(wildcard_match(a, b, exact));
  // flipped argument order still matches via the endpoint swap
  CHECK(wildcard_match(b, a, exact));

  // a ONE mark outside the exact set forces a mismatch
  const AttributeSignature c = sig({Mark::kOne, Mark::kOne, Mark::kOne});
  CHECK_FALSE(wildcard_match(c, c, exact));

  // all-wildcard matches anything
  const AttributeSignature any = sig({Mark::kWildcard, Mark::kWildcard, Mark::kWildcard});
  CHECK(wildcard_match(any, any, exact));
  CHECK(wildcard_match(any, any, make_exact_association({}, {0, 1, 2})));
}

TEST_CASE("wildcard_match_names mirrors the index form") {
  CHECK(wildcard_match_names({"ICML", "ICDM"}, {"SnP"}, {"ICML", "ICDM"}, {},
                             {"ICML", "ICDM", "SnP"}, {"ICML", "ICDM"}));
  CHECK_FALSE(wildcard_match_names({"ICML"}, {}, {"ICDM"}, {}, {"ICML"}, {"OSDI"}));
  // endpoint swap on the exact side
  CHECK(wildcard_match_names({"ICML"}, {}, {"ICDM"}, {}, {"ICDM"}, {"ICML"}));
}

TEST_CASE("significant minus frequent") {
  SignificantAssociation s1;
  s1.signature_a = sig({Mark::kOne, Mark::kAbsent, Mark::kAbsent});
  s1.signature_b = sig({Mark::kAbsent, Mark::kOne, Mark::kAbsent});
  SignificantAssociation s2;
  s2.signature_a = sig({Mark::kOne, Mark::kOne, Mark::kAbsent});
  s2.signature_b = sig({Mark::kAbsent, Mark::kAbsent, Mark::kOne});
  const std::vector<SignificantAssociation> significant{s1, s2};

  SUBCASE("disjoint lists keep everything") {
    const std::vector<FrequentEntry> top{
        {make_exact_association({0, 1, 2}, {0, 1, 2}), 5}};
    CHECK(significant_minus_frequent(significant, top).size() == 2);
  }
  SUBCASE("full overlap removes everything") {
    const std::vector<FrequentEntry> top{
        {make_exact_association({0}, {1}), 9},
        {make_exact_association({0, 1}, {2}), 5}};
    CHECK(significant_minus_frequent(significant, top).empty());
  }
  SUBCASE("partial overlap removes just the match") {
    const std::vector<FrequentEntry> top{{make_exact_association({0}, {1}), 9}};
    const auto diff = significant_minus_frequent(significant, top);
    REQUIRE(diff.size() == 1);
    CHECK(diff[0].signature_a.ones() == std::vector<std::uint32_t>{0, 1});
    const auto flags = matched_against_frequent(significant, top);
    CHECK(flags == std::vector<bool>{true, false});
  }
}
