#include "assocmine/assoc_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace assocmine {

std::vector<std::uint32_t> AttributeSignature::ones() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < marks.size(); ++i)
    if (marks[i] == Mark::kOne) out.push_back(i);
  return out;
}

std::vector<std::uint32_t> AttributeSignature::wildcards() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t i = 0; i < marks.size(); ++i)
    if (marks[i] == Mark::kWildcard) out.push_back(i);
  return out;
}

std::vector<std::string> AttributeSignature::format(
    std::span<const std::string> names) const {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < marks.size(); ++i) {
    if (marks[i] == Mark::kOne)
      out.push_back(names[i]);
    else if (marks[i] == Mark::kWildcard)
      out.push_back(names[i] + "(*)");
  }
  return out;
}

AttributeSignature make_signature(const Cluster& c,
                                  std::span<const double> marginals,
                                  double alpha) {
  AttributeSignature sig;
  sig.marks.resize(marginals.size(), Mark::kAbsent);
  for (std::size_t i = 0; i < marginals.size(); ++i) {
    const std::int64_t k = c.ones[i];
    if (k == c.size()) {
      sig.marks[i] = Mark::kOne;
    } else if (k == 0) {
      sig.marks[i] = Mark::kAbsent;
    } else if (binom_tail(k, c.size(), marginals[i]) < alpha) {
      sig.marks[i] = Mark::kWildcard;
    }
  }
  return sig;
}

AssociationGraph AssociationGraph::init(const AttributedGraph& g,
                                        SignificanceParams params,
                                        RunOptions options) {
  params.validate();
  if (g.attribute_count() == 0)
    throw std::invalid_argument("graph has no attributes; nothing to mine");
  if (g.node_count() == 0)
    throw std::invalid_argument("graph has no nodes");

  AssociationGraph ag;
  ag.graph_ = &g;
  ag.params_ = params;
  ag.options_ = options;
  ag.delta_ = g.node_count() >= 2 ? g.density() : 0.0;
  ag.size_floor_ = params.size_support * static_cast<double>(g.node_count());
  ag.marginals_ = g.attribute_marginals();

  Cluster root;
  root.id = ag.next_id_++;
  root.members.resize(g.node_count());
  for (NodeId u = 0; u < g.node_count(); ++u) root.members[u] = u;
  root.ones.assign(g.attribute_count(), 0);
  for (NodeId u = 0; u < g.node_count(); ++u)
    for (std::size_t i = 0; i < g.attribute_count(); ++i)
      root.ones[i] += g.attribute(u, i);
  root.intra_edges = static_cast<std::int64_t>(g.edge_count());

  ag.node_cluster_.assign(g.node_count(), root.id);
  ag.incident_[root.id] = {};
  ag.clusters_.emplace(root.id, std::move(root));
  return ag;
}

const Cluster& AssociationGraph::cluster(ClusterId id) const {
  const auto it = clusters_.find(id);
  if (it == clusters_.end()) throw std::out_of_range("unknown cluster id");
  return it->second;
}

const Association* AssociationGraph::find_association(ClusterId a, ClusterId b) const {
  const auto it = associations_.find(AssocKey(a, b));
  return it == associations_.end() ? nullptr : &it->second;
}

std::vector<ClusterId> AssociationGraph::neighbor_clusters(ClusterId c) const {
  std::vector<ClusterId> out;
  const auto it = incident_.find(c);
  if (it == incident_.end()) return out;
  for (ClusterId other : it->second) {
    const auto a = associations_.find(AssocKey(c, other));
    if (a != associations_.end() && !a->second.pruned) out.push_back(other);
  }
  return out;
}

const std::vector<ClusterId>& AssociationGraph::incident(ClusterId c) const {
  static const std::vector<ClusterId> kEmpty;
  const auto it = incident_.find(c);
  return it == incident_.end() ? kEmpty : it->second;
}

namespace {

void sorted_insert(std::vector<ClusterId>& v, ClusterId x) {
  const auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) v.insert(it, x);
}

void sorted_erase(std::vector<ClusterId>& v, ClusterId x) {
  const auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it != v.end() && *it == x) v.erase(it);
}

}  // namespace

AttributeSignature AssociationGraph::signature(ClusterId c) const {
  return make_signature(cluster(c), marginals_, params_.alpha);
}

void AssociationGraph::mark_strength_terminal(ClusterId c) {
  const auto it = clusters_.find(c);
  if (it == clusters_.end()) throw std::out_of_range("unknown cluster id");
  it->second.strength_terminal = true;
}

std::vector<ClusterId> AssociationGraph::split_cluster(
    ClusterId cid, const std::vector<std::vector<NodeId>>& parts) {
  const auto cit = clusters_.find(cid);
  if (cit == clusters_.end()) throw std::out_of_range("unknown cluster id");
  const Cluster& old = cit->second;

  // Validate before mutating: parts must be non-empty, disjoint, and cover
  // the member set exactly.
  if (parts.empty()) throw std::invalid_argument("split into zero parts");
  std::vector<NodeId> flattened;
  flattened.reserve(old.members.size());
  for (const auto& p : parts) {
    if (p.empty()) throw std::invalid_argument("split part is empty");
    flattened.insert(flattened.end(), p.begin(), p.end());
  }
  std::sort(flattened.begin(), flattened.end());
  if (flattened != old.members)
    throw std::invalid_argument("split parts must partition the cluster members");

  const AttributedGraph& g = *graph_;
  const std::size_t l = g.attribute_count();
  const ClusterId first_new = next_id_;

  // Build the new clusters and retarget the node -> cluster map first; the
  // strength recount below reads that map.
  std::vector<ClusterId> new_ids;
  new_ids.reserve(parts.size());
  for (const auto& part : parts) {
    Cluster nc;
    nc.id = next_id_++;
    nc.members = part;
    std::sort(nc.members.begin(), nc.members.end());
    nc.ones.assign(l, 0);
    for (NodeId u : nc.members)
      for (std::size_t i = 0; i < l; ++i) nc.ones[i] += g.attribute(u, i);
    new_ids.push_back(nc.id);
    clusters_.emplace(nc.id, std::move(nc));
  }

  for (ClusterId id : new_ids) {
    for (NodeId u : clusters_.at(id).members) node_cluster_[u] = id;
    ancestry_.emplace_back(id, cid);
    incident_[id];
  }

  // Exact strength recount for everything incident to the old cluster.
  // Edges into untouched clusters are seen once (from the new side); edges
  // between two new parts or inside one part are guarded with u < w.
  // Accumulation runs over a flat id-indexed row per part.
  std::map<AssocKey, std::int64_t> cross;
  std::vector<std::int64_t> row(next_id_, 0);
  std::vector<ClusterId> touched;
  for (ClusterId id : new_ids) {
    Cluster& nc = clusters_.at(id);
    for (NodeId u : nc.members) {
      for (NodeId w : g.neighbors(u)) {
        const ClusterId tc = node_cluster_[w];
        if (tc == id) {
          if (u < w) ++nc.intra_edges;
        } else if (tc < first_new || u < w) {
          if (row[tc] == 0) touched.push_back(tc);
          ++row[tc];
        }
      }
    }
    for (ClusterId tc : touched) {
      cross[AssocKey(id, tc)] += row[tc];
      row[tc] = 0;
    }
    touched.clear();
  }

  // Drop the old cluster and its associations. Every old neighbor's
  // association set is about to change, so their tie caches and weak counts
  // are adjusted here.
  if (const auto inc = incident_.find(cid); inc != incident_.end()) {
    for (ClusterId other : inc->second) {
      const auto it = associations_.find(AssocKey(cid, other));
      Cluster& oc = clusters_.at(other);
      if (it != associations_.end()) {
        if (!it->second.pruned && !is_significant(it->second.pvalue, params_.alpha))
          --oc.weak_associations;
        associations_.erase(it);
      }
      sorted_erase(incident_[other], cid);
      oc.tie_cache.reset();
    }
    incident_.erase(inc);
  }
  clusters_.erase(cid);

  // Fresh associations: new p-values, prune bound re-evaluated per pair.
  for (const auto& [key, strength] : cross) {
    if (strength == 0) continue;
    Cluster& ca = clusters_.at(key.lo);
    Cluster& cb = clusters_.at(key.hi);
    Association assoc;
    assoc.key = key;
    assoc.strength = strength;
    assoc.pvalue = association_pvalue(ca.size(), cb.size(), strength, delta_);
    if (delta_ > 0.0 && delta_ < 1.0 &&
        static_cast<double>(ca.size()) >= size_floor_ &&
        static_cast<double>(cb.size()) >= size_floor_) {
      const std::int64_t pairs = ca.size() * cb.size();
      auto bound_it = prune_cache_.find(pairs);
      if (bound_it == prune_cache_.end()) {
        bound_it = prune_cache_
                       .emplace(pairs, prune_threshold(pairs, delta_, params_.alpha))
                       .first;
      }
      const PruneBound& bound = bound_it->second;
      if (!bound.vacuous && static_cast<double>(strength) < bound.threshold) {
        assoc.pruned = true;
        ++stats_.pruned_associations;
      }
    }
    if (!assoc.pruned && !is_significant(assoc.pvalue, params_.alpha)) {
      ++ca.weak_associations;
      ++cb.weak_associations;
    }
    sorted_insert(incident_[key.lo], key.hi);
    sorted_insert(incident_[key.hi], key.lo);
    associations_.emplace(key, std::move(assoc));
  }

  return new_ids;
}

std::vector<SignificantAssociation> AssociationGraph::significant_associations()
    const {
  std::vector<SignificantAssociation> out;
  for (const auto& [key, assoc] : associations_) {
    if (assoc.pruned) continue;
    if (!is_significant(assoc.pvalue, params_.alpha)) continue;
    const Cluster& a = clusters_.at(key.lo);
    const Cluster& b = clusters_.at(key.hi);
    if (static_cast<double>(a.size()) < size_floor_ ||
        static_cast<double>(b.size()) < size_floor_)
      continue;
    SignificantAssociation entry;
    entry.cluster_a = key.lo;
    entry.cluster_b = key.hi;
    entry.size_a = a.size();
    entry.size_b = b.size();
    entry.strength = assoc.strength;
    entry.pvalue = assoc.pvalue;
    entry.signature_a = make_signature(a, marginals_, params_.alpha);
    entry.signature_b = make_signature(b, marginals_, params_.alpha);
    out.push_back(std::move(entry));
  }
  std::sort(out.begin(), out.end(),
            [](const SignificantAssociation& x, const SignificantAssociation& y) {
              if (x.pvalue != y.pvalue) return x.pvalue < y.pvalue;
              if (x.strength != y.strength) return x.strength > y.strength;
              if (x.cluster_a != y.cluster_a) return x.cluster_a < y.cluster_a;
              return x.cluster_b < y.cluster_b;
            });
  return out;
}

}  // namespace assocmine
