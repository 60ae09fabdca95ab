#include "assocmine/strength_split.hpp"

#include <algorithm>
#include <unordered_map>

#include "assocmine/parallel.hpp"
#include "assocmine/random.hpp"

namespace assocmine {

std::int64_t phi(const AssociationGraph& ag, NodeId u, ClusterId target) {
  std::int64_t count = 0;
  for (NodeId w : ag.source().neighbors(u))
    if (ag.cluster_of(w) == target) ++count;
  return count;
}

namespace {

// Sparse (cluster, edge count) profile of a member, restricted to the given
// neighbor clusters, sorted by cluster id.
using Profile = std::vector<std::pair<ClusterId, std::int64_t>>;

Profile member_profile(const AssociationGraph& ag, NodeId u,
                       const std::vector<ClusterId>& allowed) {
  Profile prof;
  for (NodeId w : ag.source().neighbors(u)) {
    const ClusterId t = ag.cluster_of(w);
    if (!std::binary_search(allowed.begin(), allowed.end(), t)) continue;
    auto it = std::lower_bound(prof.begin(), prof.end(), t,
                               [](const auto& e, ClusterId id) { return e.first < id; });
    if (it != prof.end() && it->first == t)
      ++it->second;
    else
      prof.insert(it, {t, 1});
  }
  return prof;
}

// Flat-array variant for hot loops: counts edges into each allowed cluster,
// writing (allowed-index, count) pairs. scratch must be zero and sized to
// allowed.size(); it is left zeroed again.
Profile member_profile_indexed(const AssociationGraph& ag, NodeId u,
                               const std::vector<std::int32_t>& allowed_index,
                               std::vector<std::int64_t>& scratch) {
  Profile prof;
  for (NodeId w : ag.source().neighbors(u)) {
    const std::int32_t ai = allowed_index[ag.cluster_of(w)];
    if (ai < 0) continue;
    if (scratch[static_cast<std::size_t>(ai)]++ == 0)
      prof.emplace_back(static_cast<ClusterId>(ai), 0);
  }
  for (auto& [ai, count] : prof) {
    count = scratch[ai];
    scratch[ai] = 0;
  }
  std::sort(prof.begin(), prof.end());
  return prof;
}

// Returns (sum of min over common clusters, total_u, total_v).
struct ProfileOverlap {
  std::int64_t min_sum = 0;
  std::int64_t total_u = 0;
  std::int64_t total_v = 0;
};

ProfileOverlap overlap(const Profile& a, const Profile& b) {
  ProfileOverlap o;
  for (const auto& [c, n] : a) o.total_u += n;
  for (const auto& [c, n] : b) o.total_v += n;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i].first < b[j].first)
      ++i;
    else if (b[j].first < a[i].first)
      ++j;
    else {
      o.min_sum += std::min(a[i].second, b[j].second);
      ++i;
      ++j;
    }
  }
  return o;
}

double ts_from_overlap(const ProfileOverlap& o) {
  // sum of max = total_u + total_v - sum of min
  const std::int64_t denom = o.total_u + o.total_v - o.min_sum;
  if (denom == 0) return 0.0;
  return static_cast<double>(o.min_sum) / static_cast<double>(denom);
}

}  // namespace

double tie_strength(const AssociationGraph& ag, NodeId u, NodeId v, ClusterId c) {
  if (u == v) throw std::invalid_argument("tie_strength: u == v");
  const auto allowed = ag.neighbor_clusters(c);
  return ts_from_overlap(
      overlap(member_profile(ag, u, allowed), member_profile(ag, v, allowed)));
}

TieGraph build_tie_graph(const AssociationGraph& ag, ClusterId c) {
  const Cluster& cluster = ag.cluster(c);
  TieGraph tg;
  tg.members = cluster.members;
  const std::size_t n = tg.members.size();
  tg.adjacency.assign(n, {});
  if (n < 2) return tg;

  const auto allowed = ag.neighbor_clusters(c);
  if (allowed.empty()) return tg;

  std::vector<std::int32_t> allowed_index(ag.id_bound(), -1);
  for (std::size_t i = 0; i < allowed.size(); ++i)
    allowed_index[allowed[i]] = static_cast<std::int32_t>(i);

  std::vector<Profile> profiles(n);
  parallel_for(n, ag.options().threads, [&](std::size_t begin, std::size_t end) {
    std::vector<std::int64_t> scratch(allowed.size(), 0);
    for (std::size_t i = begin; i < end; ++i)
      profiles[i] = member_profile_indexed(ag, tg.members[i], allowed_index, scratch);
  });
  std::vector<std::int64_t> totals(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [ai, count] : profiles[i]) totals[i] += count;

  std::vector<std::vector<std::pair<std::uint32_t, double>>> upper(n);
  if (n <= 4096) {
    // Accumulate the min-sum numerators cluster by cluster into a flat pair
    // matrix: only members that actually share a cluster cost anything, and
    // rows are owned by one worker each, so the result is split-independent.
    std::vector<std::vector<std::pair<std::uint32_t, std::int64_t>>> by_cluster(
        allowed.size());
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& [ai, count] : profiles[i])
        by_cluster[ai].emplace_back(static_cast<std::uint32_t>(i), count);

    std::vector<std::int32_t> num(n * n, 0);
    parallel_for(n, ag.options().threads, [&](std::size_t begin, std::size_t end) {
      for (const auto& mates : by_cluster) {
        for (std::size_t a = 0; a < mates.size(); ++a) {
          const auto [i, ci] = mates[a];
          if (i < begin || i >= end) continue;
          std::int32_t* row = num.data() + static_cast<std::size_t>(i) * n;
          for (std::size_t b = a + 1; b < mates.size(); ++b) {
            const auto [j, cj] = mates[b];
            row[j] += static_cast<std::int32_t>(std::min(ci, cj));
          }
        }
      }
    });
    for (std::size_t i = 0; i < n; ++i) {
      const std::int32_t* row = num.data() + i * n;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (row[j] == 0) continue;
        const std::int64_t denom = totals[i] + totals[j] - row[j];
        upper[i].emplace_back(static_cast<std::uint32_t>(j),
                              static_cast<double>(row[j]) /
                                  static_cast<double>(denom));
      }
    }
  } else {
    // Pairwise profile merges; rows in parallel, the split cannot change any
    // weight.
    parallel_for(n, ag.options().threads, [&](std::size_t begin, std::size_t end) {
      for (std::size_t i = begin; i < end; ++i) {
        if (profiles[i].empty()) continue;
        for (std::size_t j = i + 1; j < n; ++j) {
          if (profiles[j].empty()) continue;
          const auto o = overlap(profiles[i], profiles[j]);
          if (o.min_sum == 0) continue;  // no common neighbor cluster
          upper[i].emplace_back(static_cast<std::uint32_t>(j), ts_from_overlap(o));
        }
      }
    });
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& [j, w] : upper[i]) {
      tg.adjacency[i].emplace_back(j, w);
      tg.adjacency[j].emplace_back(static_cast<std::uint32_t>(i), w);
      ++tg.edge_count;
      tg.total_weight += w;
    }
  }
  for (auto& row : tg.adjacency)
    std::sort(row.begin(), row.end());
  return tg;
}

double modularity(const TieGraph& tg, std::span<const std::uint32_t> labels) {
  if (labels.size() != tg.members.size())
    throw std::invalid_argument("modularity: label count mismatch");
  const double m = tg.total_weight;
  if (m <= 0.0) return 0.0;

  std::uint32_t max_label = 0;
  for (std::uint32_t l : labels) max_label = std::max(max_label, l);
  std::vector<double> internal(max_label + 1, 0.0), degree(max_label + 1, 0.0);
  for (std::size_t i = 0; i < tg.members.size(); ++i) {
    degree[labels[i]] += tg.degree(static_cast<std::uint32_t>(i));
    for (const auto& [j, w] : tg.adjacency[i]) {
      if (j > i && labels[j] == labels[i]) internal[labels[i]] += w;
    }
  }
  double q = 0.0;
  for (std::uint32_t l = 0; l <= max_label; ++l) {
    const double frac = degree[l] / (2.0 * m);
    q += internal[l] / m - frac * frac;
  }
  return q;
}

namespace {

// Aggregated level graph for the greedy optimization.
struct LevelGraph {
  std::vector<std::vector<std::pair<std::uint32_t, double>>> adjacency;
  std::vector<double> self_loop;  // intra weight folded into a node
  std::vector<double> degree;     // 2*self_loop + external
  double m = 0.0;

  std::size_t size() const { return adjacency.size(); }
};

// One pass of local moves until no node improves. Returns the communities as
// a label per node (not compacted). Scratch arrays are hoisted out of the
// node loop; candidate scans stay in sorted label order for determinism.
std::vector<std::uint32_t> local_moves(const LevelGraph& g, Rng& rng, bool& moved_any) {
  const std::size_t n = g.size();
  std::vector<std::uint32_t> comm(n);
  std::vector<double> tot(n);
  for (std::size_t u = 0; u < n; ++u) {
    comm[u] = static_cast<std::uint32_t>(u);
    tot[u] = g.degree[u];
  }

  std::vector<std::uint32_t> order(n);
  for (std::size_t u = 0; u < n; ++u) order[u] = static_cast<std::uint32_t>(u);
  rng.shuffle(order);

  std::vector<double> links(n, 0.0);
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<std::uint32_t> cands;

  moved_any = false;
  bool moved = true;
  while (moved) {
    moved = false;
    for (std::uint32_t u : order) {
      const std::uint32_t old_comm = comm[u];
      tot[old_comm] -= g.degree[u];

      cands.clear();
      seen[old_comm] = 1;
      cands.push_back(old_comm);
      for (const auto& [v, w] : g.adjacency[u]) {
        const std::uint32_t cc = comm[v];
        if (!seen[cc]) {
          seen[cc] = 1;
          cands.push_back(cc);
        }
        links[cc] += w;
      }
      std::sort(cands.begin(), cands.end());

      std::uint32_t best_comm = old_comm;
      double best_gain = links[old_comm] - tot[old_comm] * g.degree[u] / (2.0 * g.m);
      for (std::uint32_t cc : cands) {
        if (cc == old_comm) continue;
        const double gain = links[cc] - tot[cc] * g.degree[u] / (2.0 * g.m);
        if (gain > best_gain + 1e-12) {
          best_gain = gain;
          best_comm = cc;
        }
      }
      for (std::uint32_t cc : cands) {
        links[cc] = 0.0;
        seen[cc] = 0;
      }

      comm[u] = best_comm;
      tot[best_comm] += g.degree[u];
      if (best_comm != old_comm) {
        moved = true;
        moved_any = true;
      }
    }
  }
  return comm;
}

LevelGraph aggregate(const LevelGraph& g, const std::vector<std::uint32_t>& comm,
                     std::vector<std::uint32_t>& compact) {
  // Renumber communities by first appearance in node order.
  compact.assign(g.size(), 0);
  std::vector<std::uint32_t> renumber(g.size(), static_cast<std::uint32_t>(-1));
  std::uint32_t next = 0;
  for (std::size_t u = 0; u < g.size(); ++u) {
    if (renumber[comm[u]] == static_cast<std::uint32_t>(-1)) renumber[comm[u]] = next++;
    compact[u] = renumber[comm[u]];
  }

  LevelGraph out;
  out.adjacency.assign(next, {});
  out.self_loop.assign(next, 0.0);
  out.degree.assign(next, 0.0);
  out.m = g.m;
  // One flat accumulation row, reused community by community: nodes are
  // grouped by their community first, then each group's cross weights are
  // folded through the row and emitted in sorted order.
  std::vector<std::vector<std::uint32_t>> group(next);
  for (std::size_t u = 0; u < g.size(); ++u)
    group[compact[u]].push_back(static_cast<std::uint32_t>(u));
  std::vector<double> row(next, 0.0);
  std::vector<std::uint32_t> touched;
  for (std::uint32_t cu = 0; cu < next; ++cu) {
    for (std::uint32_t u : group[cu]) {
      out.self_loop[cu] += g.self_loop[u];
      for (const auto& [v, w] : g.adjacency[u]) {
        const std::uint32_t cv = compact[v];
        if (cu == cv) {
          if (v > u) out.self_loop[cu] += w;
        } else {
          if (row[cv] == 0.0) touched.push_back(cv);
          row[cv] += w;
        }
      }
    }
    std::sort(touched.begin(), touched.end());
    for (std::uint32_t cv : touched) {
      out.adjacency[cu].emplace_back(cv, row[cv]);
      row[cv] = 0.0;
    }
    touched.clear();
  }
  for (std::uint32_t c = 0; c < next; ++c) {
    double deg = 2.0 * out.self_loop[c];
    for (const auto& [v, w] : out.adjacency[c]) deg += w;
    out.degree[c] = deg;
  }
  return out;
}

}  // namespace

std::vector<std::uint32_t> louvain_partition(const TieGraph& tg, std::uint64_t seed) {
  const std::size_t n = tg.members.size();
  if (n == 0) throw std::invalid_argument("louvain_partition: empty tie graph");

  std::vector<std::uint32_t> assignment(n);
  for (std::size_t i = 0; i < n; ++i) assignment[i] = static_cast<std::uint32_t>(i);
  if (tg.total_weight <= 0.0) {
    // No ties at all: everyone stays alone.
    return assignment;
  }

  LevelGraph level;
  level.adjacency.assign(n, {});
  level.self_loop.assign(n, 0.0);
  level.degree.assign(n, 0.0);
  level.m = tg.total_weight;
  for (std::size_t i = 0; i < n; ++i) {
    level.adjacency[i] = tg.adjacency[i];
    level.degree[i] = tg.degree(static_cast<std::uint32_t>(i));
  }

  std::uint64_t pass = 0;
  while (true) {
    Rng rng(mix_seed(seed, pass++));
    bool moved_any = false;
    const auto comm = local_moves(level, rng, moved_any);
    std::vector<std::uint32_t> compact;
    const LevelGraph next = aggregate(level, comm, compact);
    for (std::size_t i = 0; i < n; ++i) assignment[i] = compact[assignment[i]];
    if (!moved_any || next.size() == level.size()) break;
    level = next;
  }

  // Compact final labels by first appearance over member order.
  std::unordered_map<std::uint32_t, std::uint32_t> renumber;
  std::uint32_t next_label = 0;
  for (auto& a : assignment) {
    auto [it, inserted] = renumber.emplace(a, next_label);
    if (inserted) ++next_label;
    a = it->second;
  }

  if (modularity(tg, assignment) < 0.0) {
    std::fill(assignment.begin(), assignment.end(), 0u);
  }
  return assignment;
}

namespace {

// Non-empty tie graph means some live neighbor cluster touches at least two
// distinct members.
bool tie_graph_nonempty(const AssociationGraph& ag, const Cluster& c) {
  const auto allowed = ag.neighbor_clusters(c.id);
  if (allowed.empty()) return false;
  constexpr NodeId kNone = static_cast<NodeId>(-1);
  std::vector<NodeId> first_member(ag.id_bound(), kNone);
  std::vector<std::uint8_t> is_allowed(ag.id_bound(), 0);
  for (ClusterId t : allowed) is_allowed[t] = 1;
  for (NodeId u : c.members) {
    for (NodeId w : ag.source().neighbors(u)) {
      const ClusterId t = ag.cluster_of(w);
      if (!is_allowed[t]) continue;
      if (first_member[t] == kNone)
        first_member[t] = u;
      else if (first_member[t] != u)
        return true;
    }
  }
  return false;
}

}  // namespace

std::optional<ClusterId> find_cluster_for_strength_split(const AssociationGraph& ag) {
  std::optional<ClusterId> best;
  std::size_t best_count = 0;
  std::int64_t best_size = 0;

  for (const auto& [id, c] : ag.clusters()) {
    if (c.strength_terminal) continue;
    if (c.size() < 2) continue;
    if (static_cast<double>(c.size()) < ag.size_floor()) continue;
    if (c.weak_associations == 0) continue;
    if (best && (c.weak_associations < best_count ||
                 (c.weak_associations == best_count && c.size() <= best_size)))
      continue;

    if (!c.tie_cache) c.tie_cache = tie_graph_nonempty(ag, c);
    if (!*c.tie_cache) continue;

    best = id;
    best_count = c.weak_associations;
    best_size = c.size();
  }
  return best;
}

StrengthSplitResult apply_strength_split(AssociationGraph& ag, ClusterId c) {
  StrengthSplitResult result;
  const TieGraph tg = build_tie_graph(ag, c);

  std::vector<std::vector<NodeId>> parts;
  std::vector<NodeId> residual;
  if (tg.edge_count > 0) {
    const auto labels = louvain_partition(tg, mix_seed(ag.options().seed, c));
    result.tie_modularity = modularity(tg, labels);
    std::uint32_t max_label = 0;
    for (auto l : labels) max_label = std::max(max_label, l);
    std::vector<std::vector<NodeId>> communities(max_label + 1);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (tg.adjacency[i].empty())
        residual.push_back(tg.members[i]);  // no tie signal
      else
        communities[labels[i]].push_back(tg.members[i]);
    }
    for (auto& comm : communities)
      if (!comm.empty()) parts.push_back(std::move(comm));
  } else {
    residual = tg.members;
  }
  if (!residual.empty()) parts.push_back(std::move(residual));

  if (parts.size() < 2) {
    ag.mark_strength_terminal(c);
    result.committed = false;
    return result;
  }
  result.parts = ag.split_cluster(c, parts);
  result.committed = true;
  return result;
}

}  // namespace assocmine
