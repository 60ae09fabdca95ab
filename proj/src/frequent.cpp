#include "assocmine/frequent.hpp"

#include <algorithm>
#include <set>

namespace assocmine {

ExactAssociation make_exact_association(std::vector<std::uint32_t> a,
                                        std::vector<std::uint32_t> b) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

ExactAssociation association_of(const AttributedGraph& g, NodeId u, NodeId v) {
  std::vector<std::uint32_t> a, b;
  for (std::uint32_t i = 0; i < g.attribute_count(); ++i) {
    if (g.attribute(u, i)) a.push_back(i);
    if (g.attribute(v, i)) b.push_back(i);
  }
  return make_exact_association(std::move(a), std::move(b));
}

FrequencyTable enumerate_associations(const AttributedGraph& g) {
  FrequencyTable table;
  for (auto [u, v] : g.edges()) ++table[association_of(g, u, v)];
  return table;
}

std::vector<FrequentEntry> frequent_associations(const FrequencyTable& freqs,
                                                 double sigma,
                                                 std::uint64_t edge_count) {
  if (!(sigma > 0.0 && sigma < 1.0))
    throw std::invalid_argument("freq_support must be in (0,1)");
  // Inclusive boundary with a hair of slack so that e.g. 4 >= 0.1 * 40 holds
  // despite 0.1 not being representable.
  const double bar = sigma * static_cast<double>(edge_count) - 1e-9;
  std::vector<FrequentEntry> out;
  for (const auto& [assoc, freq] : freqs) {
    if (static_cast<double>(freq) >= bar) out.push_back({assoc, freq});
  }
  std::sort(out.begin(), out.end(), [](const FrequentEntry& x, const FrequentEntry& y) {
    if (x.frequency != y.frequency) return x.frequency > y.frequency;
    return x.assoc < y.assoc;
  });
  return out;
}

namespace {

// One endpoint: every exact attribute needs ONE or WILDCARD, every other
// attribute needs ABSENT or WILDCARD.
bool endpoint_matches(const AttributeSignature& sig,
                      const std::vector<std::uint32_t>& exact) {
  std::size_t next = 0;
  for (std::uint32_t i = 0; i < sig.marks.size(); ++i) {
    const bool in_exact = next < exact.size() && exact[next] == i;
    if (in_exact) ++next;
    switch (sig.marks[i]) {
      case Mark::kOne:
        if (!in_exact) return false;
        break;
      case Mark::kAbsent:
        if (in_exact) return false;
        break;
      case Mark::kWildcard:
        break;
    }
  }
  return next == exact.size();
}

}  // namespace

bool wildcard_match(const AttributeSignature& sig_a, const AttributeSignature& sig_b,
                    const ExactAssociation& exact) {
  return (endpoint_matches(sig_a, exact.side_a) && endpoint_matches(sig_b, exact.side_b)) ||
         (endpoint_matches(sig_a, exact.side_b) && endpoint_matches(sig_b, exact.side_a));
}

namespace {

bool endpoint_matches_names(const std::vector<std::string>& ones,
                            const std::vector<std::string>& wilds,
                            const std::vector<std::string>& exact) {
  const std::set<std::string> exact_set(exact.begin(), exact.end());
  for (const auto& name : ones)
    if (!exact_set.count(name)) return false;
  std::set<std::string> allowed(ones.begin(), ones.end());
  allowed.insert(wilds.begin(), wilds.end());
  for (const auto& name : exact)
    if (!allowed.count(name)) return false;
  return true;
}

}  // namespace

bool wildcard_match_names(const std::vector<std::string>& ones_a,
                          const std::vector<std::string>& wilds_a,
                          const std::vector<std::string>& ones_b,
                          const std::vector<std::string>& wilds_b,
                          const std::vector<std::string>& exact_a,
                          const std::vector<std::string>& exact_b) {
  return (endpoint_matches_names(ones_a, wilds_a, exact_a) &&
          endpoint_matches_names(ones_b, wilds_b, exact_b)) ||
         (endpoint_matches_names(ones_a, wilds_a, exact_b) &&
          endpoint_matches_names(ones_b, wilds_b, exact_a));
}

std::vector<bool> matched_against_frequent(
    std::span<const SignificantAssociation> significant,
    std::span<const FrequentEntry> top_frequent) {
  std::vector<bool> matched(significant.size(), false);
  for (std::size_t i = 0; i < significant.size(); ++i) {
    for (const auto& entry : top_frequent) {
      if (wildcard_match(significant[i].signature_a, significant[i].signature_b,
                         entry.assoc)) {
        matched[i] = true;
        break;
      }
    }
  }
  return matched;
}

std::vector<SignificantAssociation> significant_minus_frequent(
    std::span<const SignificantAssociation> significant,
    std::span<const FrequentEntry> top_frequent) {
  const auto matched = matched_against_frequent(significant, top_frequent);
  std::vector<SignificantAssociation> out;
  for (std::size_t i = 0; i < significant.size(); ++i)
    if (!matched[i]) out.push_back(significant[i]);
  return out;
}

}  // namespace assocmine
