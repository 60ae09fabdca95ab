#include "assocmine/linkpred.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>

#include "assocmine/parallel.hpp"
#include "assocmine/random.hpp"

namespace assocmine {

double jaccard(const AttributedGraph& g, NodeId u, NodeId v) {
  if (u == v) throw std::invalid_argument("jaccard: u == v");
  const auto& a = g.neighbors(u);
  const auto& b = g.neighbors(v);
  std::size_t common = 0, i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j])
      ++i;
    else if (b[j] < a[i])
      ++j;
    else {
      ++common;
      ++i;
      ++j;
    }
  }
  const std::size_t uni = a.size() + b.size() - common;
  return uni == 0 ? 0.0 : static_cast<double>(common) / static_cast<double>(uni);
}

double significance_score(const AssociationGraph& ag, NodeId u, NodeId v) {
  if (u >= ag.source().node_count() || v >= ag.source().node_count())
    throw std::out_of_range("significance_score: unknown node id");
  const ClusterId cu = ag.cluster_of(u);
  const ClusterId cv = ag.cluster_of(v);
  if (cu == cv) {
    const Cluster& c = ag.cluster(cu);
    const std::int64_t pairs = c.size() * (c.size() - 1) / 2;
    if (pairs == 0) return 0.0;
    return 1.0 - binom_tail(c.intra_edges, pairs, ag.delta());
  }
  const Association* assoc = ag.find_association(cu, cv);
  if (!assoc || assoc->pruned) return 0.0;
  return 1.0 - assoc->pvalue;
}

double frequency_score(const FrequencyTable& freqs, const AttributedGraph& g,
                       NodeId u, NodeId v) {
  if (freqs.empty()) return 0.0;
  std::uint64_t max_freq = 0;
  for (const auto& [assoc, f] : freqs) max_freq = std::max(max_freq, f);
  if (max_freq == 0) return 0.0;
  const auto it = freqs.find(association_of(g, u, v));
  if (it == freqs.end()) return 0.0;
  return static_cast<double>(it->second) / static_cast<double>(max_freq);
}

double pred(double jaccard_score, double assoc_score, double tau) {
  if (!(tau >= 0.0 && tau <= 1.0))
    throw std::invalid_argument("pred: tau must be in [0,1]");
  return tau * jaccard_score + (1.0 - tau) * assoc_score;
}

std::vector<std::pair<NodeId, NodeId>> sample_negatives(
    std::span<const std::pair<NodeId, NodeId>> candidates, std::size_t count,
    std::uint64_t seed) {
  if (count > candidates.size())
    throw std::invalid_argument("not enough candidate pairs for negative sampling");
  Rng rng(mix_seed(seed, 0x6e6567));
  const auto indices = rng.sample_indices(candidates.size(), count);
  std::vector<std::pair<NodeId, NodeId>> out;
  out.reserve(count);
  for (std::size_t i : indices) out.push_back(candidates[i]);
  std::sort(out.begin(), out.end());
  return out;
}

RocResult roc(std::span<const double> scores, const std::vector<bool>& labels) {
  if (scores.size() != labels.size())
    throw std::invalid_argument("roc: score/label size mismatch");
  std::size_t positives = 0;
  for (bool l : labels) positives += l ? 1 : 0;
  const std::size_t negatives = labels.size() - positives;
  if (positives == 0 || negatives == 0)
    throw std::invalid_argument("roc: need at least one positive and one negative");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });

  RocResult result;
  result.points.emplace_back(0.0, 0.0);
  std::size_t tp = 0, fp = 0;
  double auc = 0.0;
  double prev_fpr = 0.0, prev_tpr = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    // Group equal scores into one threshold step.
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) {
      if (labels[order[j]])
        ++tp;
      else
        ++fp;
      ++j;
    }
    const double fpr = static_cast<double>(fp) / static_cast<double>(negatives);
    const double tpr = static_cast<double>(tp) / static_cast<double>(positives);
    auc += (fpr - prev_fpr) * (tpr + prev_tpr) / 2.0;
    result.points.emplace_back(fpr, tpr);
    prev_fpr = fpr;
    prev_tpr = tpr;
    i = j;
  }
  result.auc = auc;
  return result;
}

PredictOutcome run_link_prediction(const AttributedGraph& base,
                                   std::span<const std::pair<NodeId, NodeId>> future_edges,
                                   const PredictConfig& cfg) {
  if (cfg.negative_ratio < 1)
    throw std::invalid_argument("negative ratio must be >= 1");
  if (!(cfg.tau >= 0.0 && cfg.tau <= 1.0))
    throw std::invalid_argument("tau must be in [0,1]");

  // Positives: newly formed links.
  std::set<std::pair<NodeId, NodeId>> future_set;
  for (auto [u, v] : future_edges)
    future_set.emplace(std::min(u, v), std::max(u, v));
  std::vector<std::pair<NodeId, NodeId>> positives;
  for (auto [u, v] : future_set) {
    if (!base.has_edge(u, v)) positives.emplace_back(u, v);
  }
  if (positives.empty())
    throw std::invalid_argument("no new links between the snapshots");

  // Negative candidates: pairs edgeless in both snapshots.
  std::vector<std::pair<NodeId, NodeId>> candidates;
  const std::size_t n = base.node_count();
  for (NodeId u = 0; u + 1 < n; ++u) {
    for (NodeId v = u + 1; v < n; ++v) {
      if (base.has_edge(u, v)) continue;
      if (future_set.count({u, v})) continue;
      candidates.emplace_back(u, v);
    }
  }
  const std::size_t wanted = positives.size() * static_cast<std::size_t>(cfg.negative_ratio);
  const auto negatives = sample_negatives(candidates, wanted, cfg.seed);

  PredictOutcome out;
  out.positives = positives.size();
  out.negatives = negatives.size();
  for (auto [u, v] : positives) out.samples.push_back({u, v, true});
  for (auto [u, v] : negatives) out.samples.push_back({u, v, false});

  // Attribute-score backends, built once.
  std::optional<AssociationGraph> ag;
  FrequencyTable freqs;
  std::uint64_t max_freq = 0;
  if (cfg.mode == PredictMode::kSignificant) {
    ag.emplace(AssociationGraph::init(base, cfg.params, {cfg.seed, cfg.threads}));
    transform(*ag);
  } else if (cfg.mode == PredictMode::kFrequent) {
    freqs = enumerate_associations(base);
    for (const auto& [assoc, f] : freqs) max_freq = std::max(max_freq, f);
  }

  out.scores.assign(out.samples.size(), 0.0);
  parallel_for(out.samples.size(), cfg.threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const Sample& s = out.samples[i];
      const double j = jaccard(base, s.u, s.v);
      double score = j;
      if (cfg.mode == PredictMode::kSignificant) {
        score = pred(j, significance_score(*ag, s.u, s.v), cfg.tau);
      } else if (cfg.mode == PredictMode::kFrequent) {
        double fs = 0.0;
        if (max_freq > 0) {
          const auto it = freqs.find(association_of(base, s.u, s.v));
          if (it != freqs.end())
            fs = static_cast<double>(it->second) / static_cast<double>(max_freq);
        }
        score = pred(j, fs, cfg.tau);
      }
      out.scores[i] = score;
    }
  });

  std::vector<bool> labels;
  labels.reserve(out.samples.size());
  for (const auto& s : out.samples) labels.push_back(s.positive);
  out.roc = roc(out.scores, labels);
  return out;
}

}  // namespace assocmine
