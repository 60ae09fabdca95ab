#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "assocmine/assoc_graph.hpp"

namespace assocmine {

/// Picks the split attribute for a cluster: among attributes that are
/// non-uniform in the cluster and not already resolved as WILDCARD, the one
/// whose in-cluster ones fraction deviates least from its global marginal.
/// Ties go to the lowest index; empty when no attribute qualifies.
std::optional<std::uint32_t> select_split_attribute(
    const Cluster& c, std::span<const double> marginals, double alpha);

/// Two-way split by attribute value: (members with 1, members with 0).
/// The attribute must be non-uniform in the cluster.
std::pair<std::vector<NodeId>, std::vector<NodeId>> candidate_split(
    const Cluster& c, std::uint32_t attribute, const AttributedGraph& g);

struct SimilaritySelection {
  ClusterId cluster = 0;
  std::uint32_t attribute = 0;
  double min_psi = 0.0;
};

/// Over clusters that have an eligible attribute and whose split would leave
/// at least one part at or above the size floor, returns the cluster whose
/// worse prospective subcluster significance is highest. Ties go to the
/// lowest cluster id.
std::optional<SimilaritySelection> find_cluster_for_similarity_split(
    const AssociationGraph& ag);

}  // namespace assocmine
