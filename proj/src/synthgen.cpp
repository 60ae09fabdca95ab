#include "assocmine/synthgen.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <string>

#include "assocmine/parallel.hpp"
#include "assocmine/random.hpp"

namespace assocmine {

void MagConfig::validate() const {
  if (n == 0) throw std::invalid_argument("mag: n must be positive");
  if (l == 0) throw std::invalid_argument("mag: l must be positive");
  if (mu.size() != l || theta.size() != l)
    throw std::invalid_argument("mag: mu and theta must have length l");
  for (double m : mu)
    if (!(m > 0.0 && m < 1.0))
      throw std::invalid_argument("mag: mu entries must be in (0,1)");
  for (const auto& t : theta)
    for (const auto& row : t)
      for (double v : row)
        if (!(v >= 0.0 && v <= 1.0))
          throw std::invalid_argument("mag: theta entries must be in [0,1]");
  if (!(scale > 0.0)) throw std::invalid_argument("mag: scale must be positive");
  if (threads < 1) throw std::invalid_argument("mag: threads must be >= 1");
}

GeneratedGraph generate(const MagConfig& cfg) {
  cfg.validate();
  const std::size_t n = cfg.n;
  const std::size_t l = cfg.l;

  // Attributes first, from their own stream.
  std::vector<std::uint8_t> bits(n * l);
  {
    Rng rng(mix_seed(cfg.seed, 0));
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t i = 0; i < l; ++i)
        bits[u * l + i] = rng.bernoulli(cfg.mu[i]) ? 1 : 0;
  }

  // Pair sampling: one derived stream per row u covering pairs (u, v > u),
  // so the outcome is identical however rows are split across threads.
  std::vector<std::vector<NodeId>> row_edges(n);
  std::atomic<std::uint64_t> clamped{0};
  parallel_for(n, cfg.threads, [&](std::size_t begin, std::size_t end) {
    std::uint64_t local_clamped = 0;
    for (std::size_t u = begin; u < end; ++u) {
      Rng rng(mix_seed(cfg.seed, 1 + u));
      for (std::size_t v = u + 1; v < n; ++v) {
        double p = cfg.scale;
        for (std::size_t i = 0; i < l; ++i)
          p *= cfg.theta[i][bits[u * l + i]][bits[v * l + i]];
        if (p > 1.0) {
          p = 1.0;
          ++local_clamped;
        }
        if (rng.next_double() < p)
          row_edges[u].push_back(static_cast<NodeId>(v));
      }
    }
    clamped += local_clamped;
  });

  GraphData data;
  data.node_names.reserve(n);
  for (std::size_t u = 0; u < n; ++u) data.node_names.push_back("n" + std::to_string(u));
  data.attribute_names.reserve(l);
  for (std::size_t i = 0; i < l; ++i) data.attribute_names.push_back("a" + std::to_string(i));
  data.attributes.resize(n);
  for (std::size_t u = 0; u < n; ++u)
    data.attributes[u].assign(bits.begin() + static_cast<std::ptrdiff_t>(u * l),
                              bits.begin() + static_cast<std::ptrdiff_t>((u + 1) * l));
  for (std::size_t u = 0; u < n; ++u)
    for (NodeId v : row_edges[u]) data.edges.emplace_back(static_cast<NodeId>(u), v);

  return {AttributedGraph::finalize(std::move(data)), clamped.load()};
}

double expected_pair_probability(const MagConfig& cfg) {
  cfg.validate();
  double product = 1.0;
  for (std::size_t i = 0; i < cfg.l; ++i) {
    const double m = cfg.mu[i];
    const auto& t = cfg.theta[i];
    product *= (1 - m) * (1 - m) * t[0][0] + m * (1 - m) * (t[1][0] + t[0][1]) +
               m * m * t[1][1];
  }
  return product;
}

double max_pair_probability(const MagConfig& cfg) {
  cfg.validate();
  double product = 1.0;
  for (std::size_t i = 0; i < cfg.l; ++i) {
    const auto& t = cfg.theta[i];
    product *= std::max({t[0][0], t[0][1], t[1][0], t[1][1]});
  }
  return product;
}

double calibrate_scale(const MagConfig& cfg, double target_density) {
  if (!(target_density > 0.0 && target_density < 1.0))
    throw std::invalid_argument("target density must be in (0,1)");
  const double expected = expected_pair_probability(cfg);
  if (expected <= 0.0)
    throw std::invalid_argument("affinity matrices admit no edges; cannot calibrate");
  const double scale = target_density / expected;
  const double max_prob = max_pair_probability(cfg);
  if (scale * max_prob > 1.0) {
    const double reachable = expected / max_prob;
    throw std::invalid_argument(
        "target density " + std::to_string(target_density) +
        " is unreachable without clamping; max achievable is " +
        std::to_string(reachable));
  }
  return scale;
}

}  // namespace assocmine
