#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "assocmine/assoc_graph.hpp"

namespace assocmine {

/// Number of edges from node u into members of cluster target.
std::int64_t phi(const AssociationGraph& ag, NodeId u, ClusterId target);

/// Tie strength of two members of cluster c: over c's live neighbor
/// clusters, sum of min(phi_u, phi_v) over sum of max(phi_u, phi_v).
/// Zero when the denominator is zero.
double tie_strength(const AssociationGraph& ag, NodeId u, NodeId v, ClusterId c);

/// Weighted graph over a cluster's members: a pair is connected iff the two
/// members share at least one common neighbor cluster, weighted by tie
/// strength. Members with no tie edge stay in `members` with an empty
/// adjacency row.
struct TieGraph {
  std::vector<NodeId> members;  // sorted cluster members
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adjacency;  // by index
  std::size_t edge_count = 0;
  double total_weight = 0.0;

  double degree(std::uint32_t idx) const {
    double d = 0.0;
    for (const auto& [other, w] : adjacency[idx]) d += w;
    return d;
  }
};

TieGraph build_tie_graph(const AssociationGraph& ag, ClusterId c);

/// Weighted modularity of a labeled partition of the tie graph's members.
/// Zero for an empty graph and for the all-in-one partition.
double modularity(const TieGraph& tg, std::span<const std::uint32_t> labels);

/// Greedy two-level modularity maximization (local moves until no gain, then
/// community aggregation, repeated to a fixed point). Node visit order is
/// shuffled by the seed; same seed, same partition. Labels are compacted to
/// 0..k-1 in order of first appearance. Falls back to a single community if
/// the greedy result ever scores below it.
std::vector<std::uint32_t> louvain_partition(const TieGraph& tg, std::uint64_t seed);

/// Among clusters meeting the size floor, with at least two members, a
/// non-empty tie graph and at least one live association that is not yet
/// significant, picks the one with the most such associations. Ties go to
/// the larger cluster, then the lower id.
std::optional<ClusterId> find_cluster_for_strength_split(const AssociationGraph& ag);

struct StrengthSplitResult {
  bool committed = false;
  double tie_modularity = 0.0;
  std::vector<ClusterId> parts;
};

/// Builds the tie graph, partitions it, gathers tie-less members into one
/// residual part, and commits the split when it yields at least two parts;
/// otherwise the cluster is marked strength-terminal.
StrengthSplitResult apply_strength_split(AssociationGraph& ag, ClusterId c);

}  // namespace assocmine
