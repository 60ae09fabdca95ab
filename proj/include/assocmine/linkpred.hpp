#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "assocmine/assoc_graph.hpp"
#include "assocmine/frequent.hpp"
#include "assocmine/graph.hpp"

namespace assocmine {

/// Jaccard coefficient of the two neighborhoods; 0 when both are empty.
double jaccard(const AttributedGraph& g, NodeId u, NodeId v);

/// 1 - pvalue of the live association between the nodes' clusters; 0 when
/// there is none or it was pruned. For two nodes of one cluster the cluster's
/// intra-edge count plays the association role, against |c|(|c|-1)/2 pairs.
double significance_score(const AssociationGraph& ag, NodeId u, NodeId v);

/// Frequency of the pair's attribute association normalized by the largest
/// frequency in the table; 0 for unseen associations or an empty table.
double frequency_score(const FrequencyTable& freqs, const AttributedGraph& g,
                       NodeId u, NodeId v);

/// Convex combination tau * jaccard + (1 - tau) * attribute score.
double pred(double jaccard_score, double assoc_score, double tau);

struct Sample {
  NodeId u = 0;
  NodeId v = 0;
  bool positive = false;
};

/// Draws `count` pairs uniformly without replacement from the candidates.
std::vector<std::pair<NodeId, NodeId>> sample_negatives(
    std::span<const std::pair<NodeId, NodeId>> candidates, std::size_t count,
    std::uint64_t seed);

struct RocResult {
  std::vector<std::pair<double, double>> points;  // (fpr, tpr), (0,0) .. (1,1)
  double auc = 0.0;
};

/// Threshold sweep over distinct scores (ties grouped into one step), AUC by
/// the trapezoid rule. Throws when either class is missing.
RocResult roc(std::span<const double> scores, const std::vector<bool>& labels);

enum class PredictMode { kJaccard, kSignificant, kFrequent };

struct PredictConfig {
  PredictMode mode = PredictMode::kSignificant;
  double tau = 0.5;
  int negative_ratio = 5;
  std::uint64_t seed = 0;
  SignificanceParams params;
  int threads = 1;
};

struct PredictOutcome {
  std::vector<Sample> samples;
  std::vector<double> scores;
  RocResult roc;
  std::size_t positives = 0;
  std::size_t negatives = 0;
};

/// Full pipeline: positives are future edges absent from the base snapshot,
/// negatives are sampled from pairs edgeless in both snapshots at
/// negative_ratio per positive; scores per the configured mode.
PredictOutcome run_link_prediction(const AttributedGraph& base,
                                   std::span<const std::pair<NodeId, NodeId>> future_edges,
                                   const PredictConfig& cfg);

}  // namespace assocmine
