#include "assocmine/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace assocmine {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find('\t', start);
    if (pos == std::string::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

[[noreturn]] void fail(const std::string& path, std::size_t line_no,
                       const std::string& what) {
  throw GraphFormatError(path + ":" + std::to_string(line_no) + ": " + what);
}

}  // namespace

AttributedGraph AttributedGraph::finalize(GraphData data) {
  const std::size_t n = data.node_names.size();
  const std::size_t l = data.attribute_names.size();
  if (data.attributes.size() != n)
    throw GraphFormatError("attribute table size does not match node count");

  AttributedGraph g;
  g.node_names_ = std::move(data.node_names);
  g.attribute_names_ = std::move(data.attribute_names);
  g.attributes_.resize(n * l);
  for (std::size_t u = 0; u < n; ++u) {
    if (data.attributes[u].size() != l)
      throw GraphFormatError("attribute vector length mismatch for node " +
                             g.node_names_[u]);
    for (std::size_t i = 0; i < l; ++i) {
      const std::uint8_t v = data.attributes[u][i];
      if (v != 0 && v != 1)
        throw GraphFormatError("attribute values must be 0 or 1");
      g.attributes_[u * l + i] = v;
    }
  }

  std::vector<std::pair<NodeId, NodeId>> edges;
  edges.reserve(data.edges.size());
  for (auto [u, v] : data.edges) {
    if (u >= n || v >= n) throw GraphFormatError("edge references unknown node");
    if (u == v)
      throw GraphFormatError("self-loop on node " + g.node_names_[u]);
    edges.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges.begin(), edges.end());
  const std::size_t before = edges.size();
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  g.duplicate_edges_dropped_ = before - edges.size();
  g.edges_ = std::move(edges);

  g.adjacency_.assign(n, {});
  for (auto [u, v] : g.edges_) {
    g.adjacency_[u].push_back(v);
    g.adjacency_[v].push_back(u);
  }
  for (auto& nbrs : g.adjacency_) std::sort(nbrs.begin(), nbrs.end());
  return g;
}

double AttributedGraph::density() const {
  const auto n = static_cast<double>(node_count());
  if (node_count() < 2)
    throw std::domain_error("density undefined for graphs with fewer than 2 nodes");
  return static_cast<double>(edge_count()) / (0.5 * n * (n - 1.0));
}

std::vector<double> AttributedGraph::attribute_marginals() const {
  const std::size_t n = node_count();
  const std::size_t l = attribute_count();
  if (n == 0) throw std::domain_error("marginals undefined for empty graph");
  std::vector<double> p(l, 0.0);
  for (std::size_t u = 0; u < n; ++u) {
    for (std::size_t i = 0; i < l; ++i) p[i] += attributes_[u * l + i];
  }
  for (auto& v : p) v /= static_cast<double>(n);
  return p;
}

const std::vector<NodeId>& AttributedGraph::neighbors(NodeId u) const {
  if (u >= node_count()) throw std::out_of_range("unknown node id");
  return adjacency_[u];
}

bool AttributedGraph::has_edge(NodeId u, NodeId v) const {
  if (u >= node_count() || v >= node_count())
    throw std::out_of_range("unknown node id");
  const auto& nbrs = adjacency_[u];
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

namespace {

struct AttrFile {
  std::vector<std::string> node_names;
  std::vector<std::string> attribute_names;
  std::vector<std::vector<std::uint8_t>> attributes;
  std::unordered_map<std::string, NodeId> index;
};

AttrFile read_attr_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphFormatError("cannot open attribute file: " + path);
  AttrFile out;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_tabs(line);
    if (!header_seen) {
      if (fields.size() < 2 || fields[0] != "node")
        fail(path, line_no, "expected header 'node<TAB><name_1>...'");
      out.attribute_names.assign(fields.begin() + 1, fields.end());
      header_seen = true;
      continue;
    }
    if (fields.size() != out.attribute_names.size() + 1)
      fail(path, line_no, "attribute vector length mismatch");
    const std::string& name = fields[0];
    if (out.index.count(name)) fail(path, line_no, "duplicate node '" + name + "'");
    std::vector<std::uint8_t> row;
    row.reserve(fields.size() - 1);
    for (std::size_t i = 1; i < fields.size(); ++i) {
      if (fields[i] == "0")
        row.push_back(0);
      else if (fields[i] == "1")
        row.push_back(1);
      else
        fail(path, line_no, "attribute value must be 0 or 1");
    }
    out.index.emplace(name, static_cast<NodeId>(out.node_names.size()));
    out.node_names.push_back(name);
    out.attributes.push_back(std::move(row));
  }
  if (!header_seen) fail(path, line_no, "missing header line");
  return out;
}

std::vector<std::pair<NodeId, NodeId>> read_edge_file(
    const std::string& path,
    const std::unordered_map<std::string, NodeId>& index) {
  std::ifstream in(path);
  if (!in) throw GraphFormatError("cannot open edge file: " + path);
  std::vector<std::pair<NodeId, NodeId>> edges;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty() || line[0] == '#') continue;
    auto fields = split_tabs(line);
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
      fail(path, line_no, "expected '<u><TAB><v>'");
    const auto a = index.find(fields[0]);
    if (a == index.end())
      fail(path, line_no, "node '" + fields[0] + "' not in attribute file");
    const auto b = index.find(fields[1]);
    if (b == index.end())
      fail(path, line_no, "node '" + fields[1] + "' not in attribute file");
    if (a->second == b->second) fail(path, line_no, "self-loop");
    edges.emplace_back(a->second, b->second);
  }
  return edges;
}

}  // namespace

AttributedGraph load_graph(const std::string& edges_path,
                           const std::string& attrs_path) {
  AttrFile attrs = read_attr_file(attrs_path);
  GraphData data;
  data.edges = read_edge_file(edges_path, attrs.index);
  data.node_names = std::move(attrs.node_names);
  data.attribute_names = std::move(attrs.attribute_names);
  data.attributes = std::move(attrs.attributes);
  return AttributedGraph::finalize(std::move(data));
}

void save_graph(const AttributedGraph& g, const std::string& edges_path,
                const std::string& attrs_path,
                const std::vector<std::string>& comments) {
  std::ofstream ef(edges_path);
  if (!ef) throw std::runtime_error("cannot write edge file: " + edges_path);
  std::ofstream af(attrs_path);
  if (!af) throw std::runtime_error("cannot write attribute file: " + attrs_path);
  for (const auto& c : comments) {
    ef << "# " << c << "\n";
    af << "# " << c << "\n";
  }
  for (auto [u, v] : g.edges())
    ef << g.node_names()[u] << '\t' << g.node_names()[v] << '\n';
  af << "node";
  for (const auto& name : g.attribute_names()) af << '\t' << name;
  af << '\n';
  for (NodeId u = 0; u < g.node_count(); ++u) {
    af << g.node_names()[u];
    for (std::size_t i = 0; i < g.attribute_count(); ++i)
      af << '\t' << static_cast<int>(g.attribute(u, i));
    af << '\n';
  }
}

std::vector<std::pair<NodeId, NodeId>> load_edge_set(
    const std::string& edges_path, const AttributedGraph& universe) {
  std::unordered_map<std::string, NodeId> index;
  index.reserve(universe.node_count());
  for (NodeId u = 0; u < universe.node_count(); ++u)
    index.emplace(universe.node_names()[u], u);
  auto edges = read_edge_file(edges_path, index);
  for (auto& e : edges)
    if (e.first > e.second) std::swap(e.first, e.second);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return edges;
}

}  // namespace assocmine
