#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "assocmine/graph.hpp"
#include "assocmine/significance.hpp"

namespace assocmine {

using ClusterId = std::uint32_t;

/// Trivalent per-attribute signature mark. ONE: unanimous in the cluster,
/// WILDCARD: significantly enriched but not unanimous, ABSENT: otherwise.
enum class Mark : std::uint8_t { kAbsent = 0, kOne = 1, kWildcard = 2 };

struct AttributeSignature {
  std::vector<Mark> marks;

  bool operator==(const AttributeSignature&) const = default;

  /// Attribute index sets by mark kind.
  std::vector<std::uint32_t> ones() const;
  std::vector<std::uint32_t> wildcards() const;

  /// Names of ONE attributes plus "(*)"-suffixed names of WILDCARD ones,
  /// in attribute order.
  std::vector<std::string> format(std::span<const std::string> names) const;
};

/// Cached result of the similarity-split candidate evaluation; valid for the
/// lifetime of the cluster since cluster contents never change under an id.
struct SimilarityCandidate {
  bool eligible = false;
  std::uint32_t attribute = 0;
  double min_psi = 0.0;
};

struct Cluster {
  ClusterId id = 0;
  std::vector<NodeId> members;     // sorted
  std::vector<std::int64_t> ones;  // per attribute, count of members with 1
  std::int64_t intra_edges = 0;    // edges of E with both ends in members
  bool strength_terminal = false;  // no further strength splits attempted
  // live-but-not-yet-significant incident associations, kept current by
  // split_cluster (association p-values never change once created)
  std::size_t weak_associations = 0;

  mutable std::optional<SimilarityCandidate> similarity_cache;
  // whether the tie graph is known (non-)empty; reset whenever a neighbor
  // splits, since that is the only event that can change it
  mutable std::optional<bool> tie_cache;

  std::int64_t size() const { return static_cast<std::int64_t>(members.size()); }
};

/// Unordered cluster pair, stored lo < hi.
struct AssocKey {
  ClusterId lo = 0;
  ClusterId hi = 0;

  AssocKey() = default;
  AssocKey(ClusterId a, ClusterId b) : lo(a < b ? a : b), hi(a < b ? b : a) {}
  auto operator<=>(const AssocKey&) const = default;
};

struct Association {
  AssocKey key;
  std::int64_t strength = 0;  // exact count of E-edges crossing the clusters
  double pvalue = 1.0;
  bool pruned = false;
};

/// One reported association from a finished transformation.
struct SignificantAssociation {
  ClusterId cluster_a = 0;
  ClusterId cluster_b = 0;
  std::int64_t size_a = 0;
  std::int64_t size_b = 0;
  std::int64_t strength = 0;
  double pvalue = 1.0;
  AttributeSignature signature_a;
  AttributeSignature signature_b;
};

struct RunOptions {
  std::uint64_t seed = 0;
  int threads = 1;
};

enum class SplitPhase { kSimilarity, kStrength };

/// Everything a split changed, for logging and for invariant checks.
struct SplitEvent {
  SplitPhase phase = SplitPhase::kSimilarity;
  ClusterId cluster = 0;
  std::size_t cluster_size = 0;
  double score = 0.0;  // min subcluster significance, or tie-graph modularity
  std::int32_t attribute = -1;  // similarity splits only
  bool committed = true;        // false: strength split abandoned, cluster marked terminal
  std::vector<ClusterId> parts;
  std::vector<std::size_t> part_sizes;
  // pre-split bookkeeping, for strength-monotonicity checks
  std::vector<std::pair<ClusterId, std::int64_t>> old_cross_strengths;
  std::int64_t old_intra = 0;
};

struct TransformHooks {
  /// Called after init and after every loop iteration.
  std::function<void(const class AssociationGraph&)> on_boundary;
  /// Called after every committed or abandoned split.
  std::function<void(const class AssociationGraph&, const SplitEvent&)> on_split;
};

struct TransformStats {
  std::uint64_t iterations = 0;
  std::uint64_t similarity_splits = 0;
  std::uint64_t strength_splits = 0;
  std::uint64_t abandoned_strength_splits = 0;
  std::uint64_t pruned_associations = 0;
  std::uint64_t similarity_ns = 0;
  std::uint64_t strength_ns = 0;
};

/// The evolving partition of V into clusters plus the association set.
///
/// Mutated only through init / split_cluster (single coordinator); all
/// scoring reads immutable state and may run on worker threads.
class AssociationGraph {
 public:
  /// Start state: one cluster holding all of V, no pairwise associations.
  /// Throws when the graph has no attributes (nothing to mine). The graph is
  /// held by reference and must outlive (and not move under) the result.
  static AssociationGraph init(const AttributedGraph& g, SignificanceParams params,
                               RunOptions options = {});

  /// Replaces cluster c by one cluster per part. Parts must be non-empty,
  /// disjoint and cover c's members exactly. Every association incident to c
  /// is rewired with exactly recomputed strengths; zero-strength pairs are
  /// dropped, p-values recomputed, and the prune bound applied to pairs whose
  /// endpoints both meet the size-support floor. Returns the new ids.
  std::vector<ClusterId> split_cluster(ClusterId c,
                                       const std::vector<std::vector<NodeId>>& parts);

  const AttributedGraph& source() const { return *graph_; }
  const SignificanceParams& params() const { return params_; }
  const RunOptions& options() const { return options_; }
  double delta() const { return delta_; }
  const std::vector<double>& marginals() const { return marginals_; }
  /// Minimum cluster size for splitting / reporting: size_support * |V|.
  double size_floor() const { return size_floor_; }

  const std::map<ClusterId, Cluster>& clusters() const { return clusters_; }
  const Cluster& cluster(ClusterId id) const;
  ClusterId cluster_of(NodeId u) const { return node_cluster_[u]; }
  /// Exclusive upper bound of all ids handed out so far (for flat id-indexed
  /// scratch arrays).
  ClusterId id_bound() const { return next_id_; }

  const std::map<AssocKey, Association>& associations() const { return associations_; }
  const Association* find_association(ClusterId a, ClusterId b) const;
  /// Ids of clusters joined to c by a live (non-pruned) association, sorted.
  std::vector<ClusterId> neighbor_clusters(ClusterId c) const;
  /// All clusters associated with c (pruned included), sorted.
  const std::vector<ClusterId>& incident(ClusterId c) const;

  /// Signature of a cluster under the run's marginals and alpha.
  AttributeSignature signature(ClusterId c) const;

  /// Live associations with pvalue < alpha whose endpoints both meet the
  /// size floor, sorted by ascending pvalue, then descending strength, then
  /// endpoint ids.
  std::vector<SignificantAssociation> significant_associations() const;

  void mark_strength_terminal(ClusterId c);

  const std::vector<std::pair<ClusterId, ClusterId>>& ancestry() const {
    return ancestry_;
  }
  TransformStats& stats() { return stats_; }
  const TransformStats& stats() const { return stats_; }

 private:
  AssociationGraph() = default;

  const AttributedGraph* graph_ = nullptr;
  SignificanceParams params_;
  RunOptions options_;
  double delta_ = 0.0;  // fixed at init; the null model lives on the input graph
  double size_floor_ = 0.0;
  std::vector<double> marginals_;

  ClusterId next_id_ = 0;
  std::map<ClusterId, Cluster> clusters_;
  std::vector<ClusterId> node_cluster_;
  std::map<AssocKey, Association> associations_;
  std::map<ClusterId, std::vector<ClusterId>> incident_;  // sorted neighbor ids
  std::vector<std::pair<ClusterId, ClusterId>> ancestry_;  // (child, parent)
  std::map<std::int64_t, PruneBound> prune_cache_;  // n -> bound (delta, alpha fixed)
  TransformStats stats_;
};

/// Signature derivation: ONE when unanimous, ABSENT when empty, otherwise
/// WILDCARD iff the ones count is significantly above expectation at level
/// alpha (binom_tail(ones, size, marginal) < alpha).
AttributeSignature make_signature(const Cluster& c,
                                  std::span<const double> marginals,
                                  double alpha);

/// Runs the alternating similarity / strength split loop until neither phase
/// has an eligible cluster. Deterministic for a fixed seed and thread count.
TransformStats transform(AssociationGraph& ag, const TransformHooks& hooks = {});

}  // namespace assocmine
