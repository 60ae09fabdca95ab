#include "assocmine/similarity_split.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "assocmine/parallel.hpp"

namespace assocmine {

std::optional<std::uint32_t> select_split_attribute(
    const Cluster& c, std::span<const double> marginals, double alpha) {
  std::optional<std::uint32_t> best;
  double best_dev = 0.0;
  const double size = static_cast<double>(c.size());
  for (std::uint32_t i = 0; i < marginals.size(); ++i) {
    const std::int64_t k = c.ones[i];
    if (k == 0 || k == c.size()) continue;  // uniform
    // Attributes already significantly enriched count as resolved; splitting
    // on them would undo the wildcard.
    if (binom_tail(k, c.size(), marginals[i]) < alpha) continue;
    const double dev = std::abs(static_cast<double>(k) / size - marginals[i]);
    if (!best || dev < best_dev) {
      best = i;
      best_dev = dev;
    }
  }
  return best;
}

std::pair<std::vector<NodeId>, std::vector<NodeId>> candidate_split(
    const Cluster& c, std::uint32_t attribute, const AttributedGraph& g) {
  std::vector<NodeId> with, without;
  for (NodeId u : c.members) {
    if (g.attribute(u, attribute))
      with.push_back(u);
    else
      without.push_back(u);
  }
  if (with.empty() || without.empty())
    throw std::invalid_argument("candidate_split: attribute uniform in cluster");
  return {std::move(with), std::move(without)};
}

namespace {

SimilarityCandidate evaluate_candidate(const AssociationGraph& ag,
                                       const Cluster& c) {
  SimilarityCandidate cand;
  const auto& marginals = ag.marginals();
  const auto attr = select_split_attribute(c, marginals, ag.params().alpha);
  if (!attr) return cand;

  const std::int64_t with = c.ones[*attr];
  const std::int64_t without = c.size() - with;
  if (static_cast<double>(std::max(with, without)) < ag.size_floor())
    return cand;

  // Prospective per-attribute ones counts of both halves.
  const AttributedGraph& g = ag.source();
  const std::size_t l = marginals.size();
  std::vector<std::int64_t> ones_with(l, 0);
  for (NodeId u : c.members) {
    if (!g.attribute(u, *attr)) continue;
    for (std::size_t i = 0; i < l; ++i) ones_with[i] += g.attribute(u, i);
  }
  std::vector<std::int64_t> ones_without(l);
  for (std::size_t i = 0; i < l; ++i) ones_without[i] = c.ones[i] - ones_with[i];

  const double psi_with = cluster_significance(ones_with, with, marginals);
  const double psi_without = cluster_significance(ones_without, without, marginals);
  cand.eligible = true;
  cand.attribute = *attr;
  cand.min_psi = std::min(psi_with, psi_without);
  return cand;
}

}  // namespace

std::optional<SimilaritySelection> find_cluster_for_similarity_split(
    const AssociationGraph& ag) {
  // Score uncached clusters in parallel (pure reads), then pick the winner in
  // ascending id order so ties resolve to the lowest id.
  std::vector<const Cluster*> todo;
  for (const auto& [id, c] : ag.clusters())
    if (!c.similarity_cache) todo.push_back(&c);
  parallel_for(todo.size(), ag.options().threads,
               [&](std::size_t begin, std::size_t end) {
                 for (std::size_t i = begin; i < end; ++i)
                   todo[i]->similarity_cache = evaluate_candidate(ag, *todo[i]);
               });

  std::optional<SimilaritySelection> best;
  for (const auto& [id, c] : ag.clusters()) {
    const SimilarityCandidate& cand = *c.similarity_cache;
    if (!cand.eligible) continue;
    if (!best || cand.min_psi > best->min_psi) {
      best = SimilaritySelection{id, cand.attribute, cand.min_psi};
    }
  }
  return best;
}

}  // namespace assocmine
