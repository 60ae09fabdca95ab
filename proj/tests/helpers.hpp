#pragma once

#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "assocmine/graph.hpp"

namespace testutil {

// --- exact rational binomial tail -----------------------------------------
// Oracle for the significance kernel: P[M >= k] for M ~ Binomial(n, a/b)
// evaluated in exact integer arithmetic (valid while b^n fits in 128 bits,
// i.e. n <= 30 for b <= 10).

using u128 = unsigned __int128;

inline u128 pow_u128(u128 base, int exp) {
  u128 r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

inline u128 choose_u128(int n, int k) {
  if (k < 0 || k > n) return 0;
  u128 r = 1;
  for (int i = 0; i < k; ++i) {
    r *= static_cast<u128>(n - i);
    r /= static_cast<u128>(i + 1);
  }
  return r;
}

inline long double exact_binom_tail(int k, int n, int a, int b) {
  if (k <= 0) return 1.0L;
  if (k > n) return 0.0L;
  u128 num = 0;
  for (int j = k; j <= n; ++j)
    num += choose_u128(n, j) * pow_u128(static_cast<u128>(a), j) *
           pow_u128(static_cast<u128>(b - a), n - j);
  const u128 den = pow_u128(static_cast<u128>(b), n);
  return static_cast<long double>(num) / static_cast<long double>(den);
}

// --- pair-counting AUC oracle ----------------------------------------------
// AUC = P(score_pos > score_neg) + 0.5 * P(score_pos == score_neg).

inline double auc_pair_count(const std::vector<double>& scores,
                             const std::vector<bool>& labels) {
  double wins = 0.0, ties = 0.0;
  std::size_t pairs = 0;
  for (std::size_t i = 0; i < scores.size(); ++i) {
    if (!labels[i]) continue;
    for (std::size_t j = 0; j < scores.size(); ++j) {
      if (labels[j]) continue;
      ++pairs;
      if (scores[i] > scores[j])
        wins += 1.0;
      else if (scores[i] == scores[j])
        ties += 1.0;
    }
  }
  return (wins + 0.5 * ties) / static_cast<double>(pairs);
}

// --- graph construction -----------------------------------------------------

inline assocmine::AttributedGraph make_graph(
    std::vector<std::vector<std::uint8_t>> attributes,
    std::vector<std::pair<assocmine::NodeId, assocmine::NodeId>> edges,
    std::vector<std::string> attribute_names = {}) {
  assocmine::GraphData data;
  const std::size_t n = attributes.size();
  for (std::size_t u = 0; u < n; ++u)
    data.node_names.push_back("n" + std::to_string(u));
  if (attribute_names.empty() && !attributes.empty()) {
    for (std::size_t i = 0; i < attributes[0].size(); ++i)
      attribute_names.push_back("a" + std::to_string(i));
  }
  data.attribute_names = std::move(attribute_names);
  data.attributes = std::move(attributes);
  data.edges = std::move(edges);
  return assocmine::AttributedGraph::finalize(std::move(data));
}

// --- scratch files -----------------------------------------------------------

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = std::filesystem::temp_directory_path() /
            ("assocmine_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter++));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }

  std::string file(const std::string& name, const std::string& content) const {
    const auto p = path_ / name;
    std::ofstream out(p);
    out << content;
    return p.string();
  }
  std::string path(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

}  // namespace testutil
