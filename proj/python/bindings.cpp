#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "assocmine/assoc_graph.hpp"
#include "assocmine/frequent.hpp"
#include "assocmine/graph.hpp"
#include "assocmine/linkpred.hpp"
#include "assocmine/significance.hpp"
#include "assocmine/synthgen.hpp"

namespace py = pybind11;
using namespace assocmine;

namespace {

AttributedGraph graph_from_parts(
    std::size_t n, const std::vector<std::pair<NodeId, NodeId>>& edges,
    const std::vector<std::vector<std::uint8_t>>& attributes,
    std::vector<std::string> attribute_names) {
  GraphData data;
  for (std::size_t u = 0; u < n; ++u) data.node_names.push_back("n" + std::to_string(u));
  if (attribute_names.empty() && !attributes.empty()) {
    for (std::size_t i = 0; i < attributes[0].size(); ++i)
      attribute_names.push_back("a" + std::to_string(i));
  }
  data.attribute_names = std::move(attribute_names);
  data.attributes = attributes;
  data.edges = edges;
  return AttributedGraph::finalize(std::move(data));
}

struct MiningResult {
  std::vector<py::dict> associations;
  std::vector<py::dict> clusters;
  std::vector<std::pair<ClusterId, ClusterId>> ancestry;
  std::uint64_t similarity_splits = 0;
  std::uint64_t strength_splits = 0;
};

MiningResult mine(const AttributedGraph& g, double alpha, double size_support,
                  std::uint64_t seed, int threads) {
  SignificanceParams params;
  params.alpha = alpha;
  params.size_support = size_support;
  AssociationGraph ag = AssociationGraph::init(g, params, {seed, threads});
  const TransformStats stats = transform(ag);

  MiningResult result;
  const auto& names = g.attribute_names();
  for (const auto& a : ag.significant_associations()) {
    py::dict d;
    d["sig_a"] = a.signature_a.format(names);
    d["sig_b"] = a.signature_b.format(names);
    d["strength"] = a.strength;
    d["pvalue"] = a.pvalue;
    d["cluster_sizes"] = py::make_tuple(a.size_a, a.size_b);
    d["cluster_ids"] = py::make_tuple(a.cluster_a, a.cluster_b);
    result.associations.push_back(std::move(d));
  }
  for (const auto& [id, c] : ag.clusters()) {
    py::dict d;
    d["id"] = id;
    d["size"] = c.members.size();
    d["signature"] = ag.signature(id).format(names);
    result.clusters.push_back(std::move(d));
  }
  result.ancestry = ag.ancestry();
  result.similarity_splits = stats.similarity_splits;
  result.strength_splits = stats.strength_splits;
  return result;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Statistically significant attribute association mining";

  py::class_<AttributedGraph>(m, "Graph")
      .def_property_readonly("node_count", &AttributedGraph::node_count)
      .def_property_readonly("edge_count", &AttributedGraph::edge_count)
      .def_property_readonly("attribute_count", &AttributedGraph::attribute_count)
      .def_property_readonly("attribute_names", &AttributedGraph::attribute_names)
      .def("density", &AttributedGraph::density)
      .def("marginals", &AttributedGraph::attribute_marginals)
      .def("neighbors",
           [](const AttributedGraph& g, NodeId u) { return g.neighbors(u); })
      .def("has_edge", &AttributedGraph::has_edge)
      .def("edges", [](const AttributedGraph& g) { return g.edges(); });

  m.def("load_graph", &load_graph, py::arg("edges_path"), py::arg("attrs_path"));
  m.def("save_graph", &save_graph, py::arg("graph"), py::arg("edges_path"),
        py::arg("attrs_path"), py::arg("comments") = std::vector<std::string>{});
  m.def("make_graph", &graph_from_parts, py::arg("n"), py::arg("edges"),
        py::arg("attributes"),
        py::arg("attribute_names") = std::vector<std::string>{});

  m.def("binom_pmf", &binom_pmf, py::arg("k"), py::arg("n"), py::arg("p"));
  m.def("binom_tail", &binom_tail, py::arg("k"), py::arg("n"), py::arg("p"));
  m.def("expected_edges", &expected_edges);
  m.def("association_pvalue", &association_pvalue, py::arg("size1"),
        py::arg("size2"), py::arg("strength"), py::arg("delta"));
  m.def("cluster_significance",
        [](const std::vector<std::int64_t>& ones, std::int64_t size,
           const std::vector<double>& marginals) {
          return cluster_significance(ones, size, marginals);
        });
  m.def("prune_threshold",
        [](std::int64_t n, double p, double alpha) {
          const PruneBound b = prune_threshold(n, p, alpha);
          return py::make_tuple(b.threshold, b.vacuous);
        });
  m.def("is_significant", &is_significant, py::arg("pvalue"), py::arg("alpha"));
  m.def("normal_quantile", &normal_quantile);

  py::class_<MiningResult>(m, "MiningResult")
      .def_readonly("associations", &MiningResult::associations)
      .def_readonly("clusters", &MiningResult::clusters)
      .def_readonly("ancestry", &MiningResult::ancestry)
      .def_readonly("similarity_splits", &MiningResult::similarity_splits)
      .def_readonly("strength_splits", &MiningResult::strength_splits);
  m.def("mine", &mine, py::arg("graph"), py::arg("alpha") = 0.01,
        py::arg("size_support") = 0.01, py::arg("seed") = 0,
        py::arg("threads") = 1);

  m.def("frequent_associations",
        [](const AttributedGraph& g, double sigma) {
          const auto freqs = enumerate_associations(g);
          std::vector<py::tuple> out;
          for (const auto& e : frequent_associations(freqs, sigma, g.edge_count()))
            out.push_back(py::make_tuple(e.assoc.side_a, e.assoc.side_b, e.frequency));
          return out;
        },
        py::arg("graph"), py::arg("freq_support") = 0.001);

  m.def("jaccard", &jaccard, py::arg("graph"), py::arg("u"), py::arg("v"));
  m.def("roc",
        [](const std::vector<double>& scores, const std::vector<bool>& labels) {
          const RocResult r = roc(scores, labels);
          return py::make_tuple(r.points, r.auc);
        });

  m.def("generate_mag",
        [](std::uint32_t n, std::uint32_t l, const std::vector<double>& mu,
           const std::vector<std::vector<double>>& theta, double scale,
           std::uint64_t seed, int threads) {
          MagConfig cfg;
          cfg.n = n;
          cfg.l = l;
          cfg.mu = mu.size() == 1 ? std::vector<double>(l, mu[0]) : mu;
          for (const auto& t : theta) {
            if (t.size() != 4)
              throw std::invalid_argument("each theta needs 4 row-major values");
            cfg.theta.push_back({{{t[0], t[1]}, {t[2], t[3]}}});
          }
          if (cfg.theta.size() == 1)
            cfg.theta.assign(l, cfg.theta[0]);
          cfg.scale = scale;
          cfg.seed = seed;
          cfg.threads = threads;
          return generate(cfg).graph;
        },
        py::arg("n"), py::arg("l"), py::arg("mu"), py::arg("theta"),
        py::arg("scale") = 1.0, py::arg("seed") = 0, py::arg("threads") = 1);
  m.def("calibrate_scale",
        [](std::uint32_t n, std::uint32_t l, const std::vector<double>& mu,
           const std::vector<std::vector<double>>& theta, double target) {
          MagConfig cfg;
          cfg.n = n;
          cfg.l = l;
          cfg.mu = mu.size() == 1 ? std::vector<double>(l, mu[0]) : mu;
          for (const auto& t : theta)
            cfg.theta.push_back({{{t[0], t[1]}, {t[2], t[3]}}});
          if (cfg.theta.size() == 1) cfg.theta.assign(l, cfg.theta[0]);
          return calibrate_scale(cfg, target);
        },
        py::arg("n"), py::arg("l"), py::arg("mu"), py::arg("theta"),
        py::arg("target_density"));

  m.attr("__version__") = "0.1.0";
}
