#include <chrono>
#include <optional>

#include "assocmine/assoc_graph.hpp"
#include "assocmine/similarity_split.hpp"
#include "assocmine/strength_split.hpp"

namespace assocmine {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t elapsed_ns(Clock::time_point start) {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(Clock::now() - start)
          .count());
}

SplitEvent start_event(const AssociationGraph& ag, SplitPhase phase, ClusterId c) {
  SplitEvent ev;
  ev.phase = phase;
  ev.cluster = c;
  ev.cluster_size = ag.cluster(c).members.size();
  ev.old_intra = ag.cluster(c).intra_edges;
  for (ClusterId other : ag.incident(c)) {
    const Association* a = ag.find_association(c, other);
    if (a) ev.old_cross_strengths.emplace_back(other, a->strength);
  }
  return ev;
}

void finish_event(const AssociationGraph& ag, SplitEvent& ev,
                  const std::vector<ClusterId>& parts) {
  ev.parts = parts;
  for (ClusterId id : parts) ev.part_sizes.push_back(ag.cluster(id).members.size());
}

}  // namespace

TransformStats transform(AssociationGraph& ag, const TransformHooks& hooks) {
  TransformStats& stats = ag.stats();
  if (hooks.on_boundary) hooks.on_boundary(ag);

  while (true) {
    bool progressed = false;
    ++stats.iterations;

    // Event records copy pre-split strengths; only pay for them when someone
    // is listening.
    const bool want_events = static_cast<bool>(hooks.on_split);

    auto t0 = Clock::now();
    if (const auto sel = find_cluster_for_similarity_split(ag)) {
      std::optional<SplitEvent> ev;
      if (want_events) {
        ev = start_event(ag, SplitPhase::kSimilarity, sel->cluster);
        ev->score = sel->min_psi;
        ev->attribute = static_cast<std::int32_t>(sel->attribute);
      }
      auto [with, without] =
          candidate_split(ag.cluster(sel->cluster), sel->attribute, ag.source());
      const auto parts =
          ag.split_cluster(sel->cluster, {std::move(with), std::move(without)});
      ++stats.similarity_splits;
      progressed = true;
      if (ev) {
        finish_event(ag, *ev, parts);
        hooks.on_split(ag, *ev);
      }
    }
    stats.similarity_ns += elapsed_ns(t0);

    t0 = Clock::now();
    if (const auto cid = find_cluster_for_strength_split(ag)) {
      std::optional<SplitEvent> ev;
      if (want_events) ev = start_event(ag, SplitPhase::kStrength, *cid);
      const StrengthSplitResult res = apply_strength_split(ag, *cid);
      if (res.committed)
        ++stats.strength_splits;
      else
        ++stats.abandoned_strength_splits;
      progressed = true;
      if (ev) {
        ev->score = res.tie_modularity;
        ev->committed = res.committed;
        if (res.committed) finish_event(ag, *ev, res.parts);
        hooks.on_split(ag, *ev);
      }
    }
    stats.strength_ns += elapsed_ns(t0);

    if (hooks.on_boundary) hooks.on_boundary(ag);
    if (!progressed) {
      --stats.iterations;  // final probe found nothing to do
      break;
    }
  }
  return stats;
}

}  // namespace assocmine
