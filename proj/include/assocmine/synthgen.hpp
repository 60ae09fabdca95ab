#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "assocmine/graph.hpp"

namespace assocmine {

/// Configuration of the multiplicative-attribute graph generator. Each node
/// draws attribute i from Bernoulli(mu[i]); each unordered pair (u, v) links
/// independently with probability min(1, scale * prod_i theta[i][a_u][a_v]).
struct MagConfig {
  std::uint32_t n = 0;
  std::uint32_t l = 0;
  std::vector<double> mu;                                // length l
  std::vector<std::array<std::array<double, 2>, 2>> theta;  // length l
  double scale = 1.0;
  std::uint64_t seed = 0;
  int threads = 1;

  void validate() const;
};

struct GeneratedGraph {
  AttributedGraph graph;
  std::uint64_t clamped_pairs = 0;  // pairs whose scaled probability hit 1
};

/// Fully reproducible for a fixed seed regardless of thread count: attribute
/// draws use one stream, pair draws use one derived stream per row.
GeneratedGraph generate(const MagConfig& cfg);

/// Expected pair probability at scale 1: the product over attributes of
/// E[theta_i[x][y]] under independent Bernoulli(mu_i) endpoints. Equals the
/// full sum over the 2^l x 2^l pattern pairs weighted by their probability.
double expected_pair_probability(const MagConfig& cfg);

/// Largest pair probability at scale 1 over attribute patterns.
double max_pair_probability(const MagConfig& cfg);

/// Scale such that scale * expected_pair_probability == target density.
/// Throws when that scale would clamp some pattern pair past probability 1;
/// the message reports the largest reachable density.
double calibrate_scale(const MagConfig& cfg, double target_density);

}  // namespace assocmine
