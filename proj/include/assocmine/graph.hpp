#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace assocmine {

using NodeId = std::uint32_t;

/// Raw parsed graph data before validation. Node order defines the dense
/// NodeId mapping; original string names are preserved for output.
struct GraphData {
  std::vector<std::string> node_names;
  std::vector<std::string> attribute_names;
  std::vector<std::vector<std::uint8_t>> attributes;  // one row per node
  std::vector<std::pair<NodeId, NodeId>> edges;       // any order, may repeat
};

/// Undirected node-attributed graph. Immutable after construction; safe for
/// concurrent reads.
///
/// Invariants: no self-loops, each unordered edge stored once (u < v),
/// every node has exactly one attribute row of the graph-wide length, and
/// the density is recomputed from |V| and |E| rather than trusted from input.
class AttributedGraph {
 public:
  /// Validates and finalizes raw data: rejects self-loops, deduplicates
  /// edges (counted in duplicate_edges_dropped), builds adjacency.
  static AttributedGraph finalize(GraphData data);

  std::size_t node_count() const { return node_names_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  std::size_t attribute_count() const { return attribute_names_.size(); }

  /// delta_G = |E| / (|V| * (|V|-1) / 2). Throws when |V| < 2.
  double density() const;

  /// Fraction of nodes with value 1, per attribute. Requires |V| >= 1.
  std::vector<double> attribute_marginals() const;

  const std::vector<NodeId>& neighbors(NodeId u) const;

  bool has_edge(NodeId u, NodeId v) const;

  std::uint8_t attribute(NodeId u, std::size_t attr) const {
    return attributes_[static_cast<std::size_t>(u) * attribute_names_.size() + attr];
  }
  std::span<const std::uint8_t> attribute_row(NodeId u) const {
    const std::size_t l = attribute_names_.size();
    return {attributes_.data() + static_cast<std::size_t>(u) * l, l};
  }

  const std::vector<std::pair<NodeId, NodeId>>& edges() const { return edges_; }
  const std::vector<std::string>& node_names() const { return node_names_; }
  const std::vector<std::string>& attribute_names() const { return attribute_names_; }

  std::uint64_t duplicate_edges_dropped() const { return duplicate_edges_dropped_; }

 private:
  AttributedGraph() = default;

  std::vector<std::string> node_names_;
  std::vector<std::string> attribute_names_;
  std::vector<std::uint8_t> attributes_;  // node-major, node_count x l
  std::vector<std::pair<NodeId, NodeId>> edges_;  // canonical u < v, sorted
  std::vector<std::vector<NodeId>> adjacency_;    // sorted neighbor lists
  std::uint64_t duplicate_edges_dropped_ = 0;
};

/// Parse error with file/line context.
struct GraphFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Loads a graph from the tab-separated edge and attribute files.
///
/// Attribute file: header "node<TAB>name_1<TAB>...<TAB>name_l", then one row
/// per node "<node_id><TAB><0|1><TAB>...". Edge file: "<u><TAB><v>" per line.
/// Lines starting with '#' are ignored in both files. Node ids are arbitrary
/// strings; rows of the attribute file define the dense NodeId order, and
/// every edge endpoint must appear there.
AttributedGraph load_graph(const std::string& edges_path,
                           const std::string& attrs_path);

/// Writes a graph back out in the load_graph formats. comment lines (without
/// leading '#') are emitted at the top of both files. Round-trips exactly.
void save_graph(const AttributedGraph& g, const std::string& edges_path,
                const std::string& attrs_path,
                const std::vector<std::string>& comments = {});

/// Reads an edge file against an existing graph's node mapping (used for
/// snapshot pairs that share one node universe). Self-loops rejected,
/// duplicates collapsed.
std::vector<std::pair<NodeId, NodeId>> load_edge_set(
    const std::string& edges_path, const AttributedGraph& universe);

}  // namespace assocmine
